#include <gtest/gtest.h>

#include <set>

#include "bephap/symmetric.hpp"
#include "bephap/error.hpp"
#include "test_util.hpp"

namespace bephap {
namespace {

TEST(Sym, FrozenVector) {
  Digest k{};
  k.fill(0x11);
  Bytes msg(28);
  for (int i = 0; i < 28; ++i) msg[i] = static_cast<std::uint8_t>(i);
  EXPECT_EQ(to_hex(sym_encrypt(SymKey(k), msg, "S1")),
            "7db6db972ceeb16aa991098b435f83f426a3c84af632db88e321f32c");
}

TEST(Sym, RoundTripAllLengths) {
  Rng rng(10);
  const SymKey key(rng.bytes<20>());
  for (std::size_t n = 0; n <= 4096; ++n) {
    Bytes msg(n);
    rng.fill(msg);
    const auto ct = sym_encrypt(key, msg, "ctx");
    ASSERT_EQ(ct.size(), n);
    ASSERT_EQ(sym_decrypt(key, ct, "ctx"), msg);
  }
}

TEST(Sym, BetaEncryptsTo28Bytes) {
  Rng rng(11);
  const SymKey d(rng.bytes<20>());
  const auto beta = Scalar::random(rng);
  EXPECT_EQ(sym_encrypt(d, beta.bytes(), "S1").size(), 28u);
}

TEST(Sym, DistinctKeysDistinctCiphertexts) {
  Rng rng(12);
  Bytes msg(28);
  rng.fill(msg);
  std::set<Bytes> seen;
  for (int i = 0; i < 10000; ++i)
    seen.insert(sym_encrypt(SymKey(rng.bytes<20>()), msg, "S1"));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Sym, ContextSeparatesKeystreams) {
  const SymKey k{};
  Bytes zeros(32, 0);
  EXPECT_NE(sym_encrypt(k, zeros, "S1"), sym_encrypt(k, zeros, "S2"));
}

TEST(SymKey, FromRequiresLambdaBytes) {
  Bytes raw(19, 0);
  EXPECT_ERRC(SymKey::from(raw), Errc::WrongLength);
  raw.push_back(1);
  EXPECT_EQ(SymKey::from(raw).view().size(), kLambdaBytes);
}

TEST(Pid, FrozenVector) {
  PseudoData pd{};
  for (int i = 0; i < 16; ++i) pd[i] = static_cast<std::uint8_t>(i);
  EXPECT_EQ(to_hex(pid_encrypt(Scalar::from_u64(11), pd)),
            "6a08b5e629100698c790db483265f019");
}

TEST(Pid, PermutationRoundTripAndInjective) {
  Rng rng(13);
  const auto b = Scalar::random(rng);
  std::set<Pid> seen;
  for (int i = 0; i < 10000; ++i) {
    const auto pd = rng.bytes<16>();
    const Pid pid = pid_encrypt(b, pd);
    static_assert(sizeof(pid) == 16);
    ASSERT_EQ(pid_decrypt(b, pid), pd);
    seen.insert(pid);
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Pid, KeyedByB) {
  PseudoData pd{};
  EXPECT_NE(pid_encrypt(Scalar::from_u64(1), pd), pid_encrypt(Scalar::from_u64(2), pd));
}

}  // namespace
}  // namespace bephap
