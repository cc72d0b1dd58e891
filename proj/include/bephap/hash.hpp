#pragma once

#include <cstdint>

#include "bephap/bytes.hpp"
#include "bephap/curve.hpp"
#include "bephap/symmetric.hpp"
#include "bephap/timestamp.hpp"

namespace bephap {

enum class HashTag : std::uint8_t { H0 = 0, H1, H2, H3, H4, H5, H6 };

enum class HashOutput { NonZeroScalar, Lambda };

struct HashSignature {
  HashTag tag;
  unsigned arity;
  HashOutput output;
};

constexpr HashSignature hash_signature(HashTag tag) {
  switch (tag) {
    case HashTag::H0: return {tag, 2, HashOutput::NonZeroScalar};
    case HashTag::H1: return {tag, 4, HashOutput::Lambda};
    case HashTag::H2: return {tag, 7, HashOutput::NonZeroScalar};
    case HashTag::H3: return {tag, 4, HashOutput::Lambda};
    case HashTag::H4: return {tag, 3, HashOutput::Lambda};
    case HashTag::H5: return {tag, 7, HashOutput::Lambda};
    case HashTag::H6: return {tag, 4, HashOutput::Lambda};
  }
  return {tag, 0, HashOutput::Lambda};
}

/// Domain-separated SHAKE256 absorbing length-prefixed arguments:
///
///   "bephap.H" || tag || (u32 len || arg)*  [|| u32 counter]
///
/// Scalar outputs are rejection-sampled 28-byte blocks, with the counter
/// appended from the second attempt on.
class TaggedHash {
 public:
  explicit TaggedHash(HashTag tag) : tag_(tag) {}

  TaggedHash& add(ByteView arg);
  TaggedHash& add(const Scalar& s) { return add(ByteView(s.bytes())); }
  TaggedHash& add(const GroupPoint& p);
  TaggedHash& add(const SymKey& k) { return add(k.view()); }
  TaggedHash& add(Timestamp t);

  /// Preconditions: the declared output kind and arity of the tag.
  Digest lambda() const;
  NonZeroScalar scalar() const;

  const Bytes& encoded() const { return buf_; }

 private:
  HashTag tag_;
  unsigned count_ = 0;
  Bytes buf_;
};

NonZeroScalar h0(ByteView id, const Scalar& s);
SymKey h1(ByteView pd, const Scalar& gk, const Scalar& b, ByteView pid);
NonZeroScalar h2(ByteView pid, const Scalar& beta, const GroupPoint& a,
                 ByteView s1, const SymKey& d, ByteView rsu_pk, Timestamp t1);
SymKey h3(const GroupPoint& ch, const SymKey& d, const Scalar& beta,
          Timestamp t1);
SymKey h4(const Scalar& beta_rsu, const SymKey& m, Timestamp t2);
Digest h5(ByteView s2, const Scalar& beta_rsu, ByteView pid_next,
          const SymKey& d_next, const SymKey& m, const SymKey& ks,
          Timestamp t2);
Digest h6(const SymKey& m, const SymKey& ks, ByteView req, ByteView rep);

// Plain digests used outside the H-family.
ByteArray<28> sha224(ByteView data);
ByteArray<32> sha256(ByteView data);

}  // namespace bephap
