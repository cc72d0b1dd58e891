#pragma once

#include "bephap/bytes.hpp"
#include "bephap/curve.hpp"
#include "bephap/rng.hpp"

namespace bephap {

inline constexpr std::size_t kSignatureBytes = 2 * kScalarBytes;

struct SigningKey {
  Scalar d;
};

struct VerifyingKey {
  GroupPoint q;

  ByteArray<kCompressedPointBytes> encode() const { return q.compressed(); }
  static VerifyingKey decode(ByteView enc);  // throws Error(NotOnCurve)
  bool operator==(const VerifyingKey&) const = default;
};

struct SignatureKeyPair {
  SigningKey sk;
  VerifyingKey pk;
};

/// ECDSA signature (r, s) over SHA-224, nonces derived deterministically
/// from (d, digest) so identical inputs always produce identical bytes.
struct Signature {
  Scalar r;
  Scalar s;

  ByteArray<kSignatureBytes> encode() const;
  static Signature decode(ByteView enc);  // throws WrongLength/NonCanonicalScalar
  bool operator==(const Signature&) const = default;
};

SignatureKeyPair keygen_sig(Rng& rng);
Signature sign(const SigningKey& sk, ByteView msg);
bool verify(const VerifyingKey& pk, const Signature& sig, ByteView msg);

struct DecryptionKey {
  Scalar d;
};

struct EncryptionKey {
  GroupPoint q;

  ByteArray<kCompressedPointBytes> encode() const { return q.compressed(); }
  bool operator==(const EncryptionKey&) const = default;
};

struct EncryptionKeyPair {
  DecryptionKey sk;
  EncryptionKey pk;
};

inline constexpr std::size_t kAencTagBytes = 32;
inline constexpr std::size_t kAencOverhead = kCompressedPointBytes + kAencTagBytes;

/// Ephemeral-DH hybrid encryption: E || (msg xor keystream) || tag.
EncryptionKeyPair keygen_enc(Rng& rng);
Bytes aenc(const EncryptionKey& pk, ByteView msg, Rng& rng);
/// Throws Error(IntegrityFailure) on any malformed or tampered ciphertext.
Bytes adec(const DecryptionKey& sk, ByteView ct);

}  // namespace bephap
