#pragma once

#include <string_view>

#include "bephap/bytes.hpp"
#include "bephap/curve.hpp"

namespace bephap {

/// λ-bit secret key (D, M, Ks). Wiped on destruction; never printed.
class SymKey {
 public:
  SymKey() = default;
  explicit SymKey(const Digest& raw) : bytes_(raw) {}
  SymKey(const SymKey&) = default;
  SymKey& operator=(const SymKey&) = default;
  ~SymKey() { secure_wipe(bytes_); }

  /// Throws Error(WrongLength) unless `raw` is exactly kLambdaBytes.
  static SymKey from(ByteView raw);

  ByteView view() const { return bytes_; }
  const Digest& bytes() const { return bytes_; }

  bool operator==(const SymKey& o) const {
    return constant_time_equal(bytes_, o.bytes_);
  }

 private:
  Digest bytes_{};
};

// Length-preserving keystream cipher; the keystream is derived from
// (key, context) so each key must be used once per context.
Bytes sym_encrypt(const SymKey& key, ByteView plaintext, std::string_view context);
Bytes sym_decrypt(const SymKey& key, ByteView ciphertext, std::string_view context);

// Pseudo-identity block cipher: one AES-128 block keyed by a subkey of b.
Pid pid_encrypt(const Scalar& b, const PseudoData& pd);
PseudoData pid_decrypt(const Scalar& b, const Pid& pid);

}  // namespace bephap
