#include "bephap/hash.hpp"

#include <openssl/evp.h>

#include <cassert>

#include "ossl.hpp"

namespace bephap {

namespace {

constexpr std::string_view kPrefix = "bephap.H";

void digest(const EVP_MD* md, ByteView data, std::span<std::uint8_t> out) {
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 ||
      len != out.size())
    detail::fail("EVP_Digest");
}

}  // namespace

TaggedHash& TaggedHash::add(ByteView arg) {
  append_u32(buf_, static_cast<std::uint32_t>(arg.size()));
  append(buf_, arg);
  ++count_;
  return *this;
}

TaggedHash& TaggedHash::add(const GroupPoint& p) {
  auto enc = p.compressed();
  return add(ByteView(enc));
}

TaggedHash& TaggedHash::add(Timestamp t) {
  Bytes be;
  append_u32(be, t.ms);
  return add(ByteView(be));
}

Digest TaggedHash::lambda() const {
  assert(hash_signature(tag_).output == HashOutput::Lambda);
  assert(hash_signature(tag_).arity == count_);
  const std::uint8_t tag = static_cast<std::uint8_t>(tag_);
  Digest out{};
  detail::shake256({as_bytes(kPrefix), ByteView(&tag, 1), buf_}, out);
  return out;
}

NonZeroScalar TaggedHash::scalar() const {
  assert(hash_signature(tag_).output == HashOutput::NonZeroScalar);
  assert(hash_signature(tag_).arity == count_);
  const std::uint8_t tag = static_cast<std::uint8_t>(tag_);
  ByteArray<kScalarBytes> block{};
  detail::shake256({as_bytes(kPrefix), ByteView(&tag, 1), buf_}, block);
  for (std::uint32_t counter = 1;; ++counter) {
    if (auto s = Scalar::try_from_bytes(block)) {
      if (auto nz = NonZeroScalar::from(*s)) return *nz;
    }
    Bytes ctr;
    append_u32(ctr, counter);
    detail::shake256({as_bytes(kPrefix), ByteView(&tag, 1), buf_, ctr}, block);
  }
}

NonZeroScalar h0(ByteView id, const Scalar& s) {
  return TaggedHash(HashTag::H0).add(id).add(s).scalar();
}

SymKey h1(ByteView pd, const Scalar& gk, const Scalar& b, ByteView pid) {
  return SymKey(TaggedHash(HashTag::H1).add(pd).add(gk).add(b).add(pid).lambda());
}

NonZeroScalar h2(ByteView pid, const Scalar& beta, const GroupPoint& a,
                 ByteView s1, const SymKey& d, ByteView rsu_pk, Timestamp t1) {
  return TaggedHash(HashTag::H2)
      .add(pid)
      .add(beta)
      .add(a)
      .add(s1)
      .add(d)
      .add(rsu_pk)
      .add(t1)
      .scalar();
}

SymKey h3(const GroupPoint& ch, const SymKey& d, const Scalar& beta,
          Timestamp t1) {
  return SymKey(TaggedHash(HashTag::H3).add(ch).add(d).add(beta).add(t1).lambda());
}

SymKey h4(const Scalar& beta_rsu, const SymKey& m, Timestamp t2) {
  return SymKey(TaggedHash(HashTag::H4).add(beta_rsu).add(m).add(t2).lambda());
}

Digest h5(ByteView s2, const Scalar& beta_rsu, ByteView pid_next,
          const SymKey& d_next, const SymKey& m, const SymKey& ks,
          Timestamp t2) {
  return TaggedHash(HashTag::H5)
      .add(s2)
      .add(beta_rsu)
      .add(pid_next)
      .add(d_next)
      .add(m)
      .add(ks)
      .add(t2)
      .lambda();
}

Digest h6(const SymKey& m, const SymKey& ks, ByteView req, ByteView rep) {
  return TaggedHash(HashTag::H6).add(m).add(ks).add(req).add(rep).lambda();
}

ByteArray<28> sha224(ByteView data) {
  ByteArray<28> out{};
  digest(EVP_sha224(), data, out);
  return out;
}

ByteArray<32> sha256(ByteView data) {
  ByteArray<32> out{};
  digest(EVP_sha256(), data, out);
  return out;
}

}  // namespace bephap
