#include <gtest/gtest.h>

#include <set>

#include "bephap/hash.hpp"
#include "test_util.hpp"

namespace bephap {
namespace {

Bytes random_bytes(Rng& rng, std::size_t n) {
  Bytes out(n);
  rng.fill(out);
  return out;
}

TEST(Hash, FrozenVectors) {
  // tests/oracle/frozen_vectors.py
  EXPECT_EQ(to_hex(h0(as_bytes("vin-0001"), Scalar::from_u64(5)).bytes()),
            "847dd712b2a466295a20593578a75f8bfdd3ca16afa7a864e804f5c1");

  Bytes pd(16), pid(16);
  for (int i = 0; i < 16; ++i) {
    pd[i] = static_cast<std::uint8_t>(i);
    pid[i] = static_cast<std::uint8_t>(16 + i);
  }
  EXPECT_EQ(to_hex(h1(pd, Scalar::from_u64(7), Scalar::from_u64(11), pid).view()),
            "c9160da68bb660670bfe3ef37618a10ddf4ace44");

  Digest m{};
  m.fill(0x22);
  EXPECT_EQ(to_hex(h4(Scalar::from_u64(3), SymKey(m), Timestamp{0x01020304}).view()),
            "82b70b27eb3ff04dc07f917bbf3d7065f600109c");

  Digest d{};
  d.fill(0x66);
  Bytes s1(28, 0x55);
  const auto pk = base_mul(Scalar::from_u64(2)).compressed();
  EXPECT_EQ(to_hex(h2(pd, Scalar::from_u64(9), GroupPoint::generator(), s1,
                      SymKey(d), pk, Timestamp{1000})
                       .bytes()),
            "88e532f08508848fc619a235eeb469807a54dc0203a96cedda81270a");
}

TEST(Hash, Deterministic) {
  Rng rng(1);
  const auto id = random_bytes(rng, 17);
  const auto s = Scalar::random(rng);
  EXPECT_EQ(h0(id, s), h0(id, s));
  const SymKey k(rng.bytes<20>());
  EXPECT_EQ(h6(k, k, id, id), h6(k, k, id, id));
}

TEST(Hash, LengthPrefixKeepsArgumentBoundaries) {
  const SymKey k{};
  EXPECT_NE(h6(k, k, as_bytes("ab"), as_bytes("c")),
            h6(k, k, as_bytes("a"), as_bytes("bc")));
  EXPECT_NE(h6(k, k, as_bytes(""), as_bytes("x")),
            h6(k, k, as_bytes("x"), as_bytes("")));
}

TEST(Hash, SingleByteChangeAvalanches) {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    auto pd = random_bytes(rng, 16);
    auto pid = random_bytes(rng, 16);
    const auto gk = Scalar::random(rng);
    const auto b = Scalar::random(rng);
    const auto base = h1(pd, gk, b, pid);
    const std::size_t at = rng.uniform(32);
    auto& target = at < 16 ? pd : pid;
    target[at % 16] ^= static_cast<std::uint8_t>(1 + rng.uniform(255));
    const auto flipped = h1(pd, gk, b, pid);
    ASSERT_NE(base, flipped);
    // Roughly half the output bits should move; 20 of 160 is a loose floor.
    int diff = 0;
    for (std::size_t j = 0; j < kLambdaBytes; ++j)
      diff += __builtin_popcount(base.bytes()[j] ^ flipped.bytes()[j]);
    EXPECT_GT(diff, 20);
  }
}

TEST(Hash, H2AlwaysInZqStar) {
  Rng rng(3);
  const SymKey d(rng.bytes<20>());
  const auto a = base_mul(Scalar::from_u64(77));
  const mpz_class q = oracle::kQ;
  for (int i = 0; i < 100000; ++i) {
    const auto pid = rng.bytes<16>();
    const auto s1 = rng.bytes<28>();
    const auto beta = Scalar::random(rng);
    const auto g = h2(pid, beta, a, s1, d, pid, Timestamp{static_cast<std::uint32_t>(i)});
    const mpz_class v = testing::to_mpz(g);
    ASSERT_GT(v, 0);
    ASSERT_LT(v, q);
  }
}

TEST(Hash, TagsAreDomainSeparated) {
  // The same four arguments under H1, H3 and H6, and the same seven under
  // H2 and H5, must never collide with each other or across samples.
  Rng rng(4);
  std::set<Digest> seen;
  constexpr int kSamples = 100000;
  for (int i = 0; i < kSamples; ++i) {
    Bytes args[7];
    for (auto& a : args) a = random_bytes(rng, 1 + rng.uniform(40));
    for (HashTag t : {HashTag::H1, HashTag::H3, HashTag::H6}) {
      TaggedHash h(t);
      for (int j = 0; j < 4; ++j) h.add(args[j]);
      seen.insert(h.lambda());
    }
    TaggedHash h5(HashTag::H5), h2t(HashTag::H2);
    for (auto& a : args) {
      h5.add(a);
      h2t.add(a);
    }
    seen.insert(h5.lambda());
    Digest prefix{};
    std::copy_n(h2t.scalar().bytes().begin(), kLambdaBytes, prefix.begin());
    seen.insert(prefix);
  }
  EXPECT_EQ(seen.size(), 5u * kSamples);
}

TEST(Hash, Arity) {
  EXPECT_EQ(hash_signature(HashTag::H0).arity, 2u);
  EXPECT_EQ(hash_signature(HashTag::H2).output, HashOutput::NonZeroScalar);
  EXPECT_EQ(hash_signature(HashTag::H5).arity, 7u);
  EXPECT_EQ(hash_signature(HashTag::H6).output, HashOutput::Lambda);
}

}  // namespace
}  // namespace bephap
