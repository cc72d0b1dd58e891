#include <gtest/gtest.h>

#include "bephap/curve.hpp"
#include "bephap/error.hpp"
#include "bephap/rng.hpp"
#include "test_util.hpp"

namespace bephap {
namespace {

using testing::from_oracle;
using testing::to_mpz;
using testing::to_oracle;

TEST(CurveParams, MatchPublishedConstants) {
  const auto& c = curve_params();
  EXPECT_EQ(oracle::from_bytes(c.p), oracle::kP);
  EXPECT_EQ(oracle::from_bytes(c.a), oracle::kA);
  EXPECT_EQ(oracle::from_bytes(c.b), oracle::kB);
  EXPECT_EQ(oracle::from_bytes(c.q), oracle::kQ);
  EXPECT_EQ(oracle::from_bytes(c.gx), oracle::kGx);
  EXPECT_EQ(oracle::from_bytes(c.gy), oracle::kGy);
  EXPECT_EQ(c.lambda_bits, 160u);
  EXPECT_NE(mpz_probab_prime_p(oracle::kQ.get_mpz_t(), 40), 0);
}

TEST(CurveParams, GeneratorHasOrderQ) {
  // q itself is not a canonical scalar, so go through (q-1)·P + P.
  const Scalar q_minus_1 = -Scalar::from_u64(1);
  const auto& g = GroupPoint::generator();
  EXPECT_TRUE((scalar_mul(g, q_minus_1) + g).is_identity());
  EXPECT_FALSE(oracle::mul(oracle::kQ - 1, oracle::generator()) == std::nullopt);
}

TEST(ScalarMul, TrivialCases) {
  const auto& g = GroupPoint::generator();
  EXPECT_TRUE(scalar_mul(g, Scalar{}).is_identity());
  EXPECT_EQ(scalar_mul(g, Scalar::from_u64(1)), g);
  EXPECT_TRUE(scalar_mul(GroupPoint(), Scalar::from_u64(12345)).is_identity());
  EXPECT_EQ(base_mul(Scalar::from_u64(2)), g + g);
}

TEST(ScalarMul, FrozenVector) {
  // Computed by tests/oracle/frozen_vectors.py.
  const auto s = Scalar::from_bytes(
      from_hex("bc49f17ec3431d332a300ec8322aa935c75d39d38fa66cd22ec284e0"));
  const auto p = base_mul(s);
  EXPECT_EQ(to_hex(p.x_bytes()),
            "88ec048b0779d4fca8a78049df7db603c9783d346554e787074b625a");
  EXPECT_EQ(to_hex(p.y_bytes()),
            "d1cf4947c347b55f8db09da2b65b66da23ce922e47971b7526bc5f7d");

  const auto t = Scalar::from_bytes(
      from_hex("fb1a55d3fa27e8126942bd1e99926d98430788cbfd4ebf4b27a6d2d3"));
  const auto r = msm2(s, t, p);
  EXPECT_EQ(to_hex(r.x_bytes()),
            "17e78fa5d8d0757cba4268162b171475f58149eecc63d3b84eda42ac");
  EXPECT_EQ(to_hex(r.y_bytes()),
            "b0e8d4af5d2988ad1f992101d837536ba91cac71e72cf1b036fb1629");
}

TEST(ScalarMul, AgreesWithNaiveOracle) {
  Rng rng(0x5ca1a);
  const auto g = to_oracle(GroupPoint::generator());
  for (int i = 0; i < 1000; ++i) {
    const Scalar s = Scalar::random(rng);
    // Alternate between the fixed base and a random base.
    const Scalar base_k = Scalar::random(rng);
    const GroupPoint base = (i % 2 == 0) ? GroupPoint::generator() : base_mul(base_k);
    const auto expected = oracle::mul(to_mpz(s), to_oracle(base));
    ASSERT_EQ(to_oracle(scalar_mul(base, s)), expected) << "iteration " << i;
    if (i % 2 == 0) ASSERT_EQ(to_oracle(base_mul(s)), oracle::mul(to_mpz(s), g));
  }
}

TEST(Msm2, TrivialAndComposed) {
  Rng rng(7);
  const GroupPoint a = base_mul(Scalar::random(rng));
  EXPECT_TRUE(msm2(Scalar{}, Scalar{}, a).is_identity());
  const Scalar m = Scalar::random(rng);
  EXPECT_EQ(msm2(m, Scalar{}, a), base_mul(m));
  for (int i = 0; i < 100; ++i) {
    const Scalar mi = Scalar::random(rng);
    const Scalar gi = Scalar::random(rng);
    const GroupPoint ai = base_mul(Scalar::random(rng));
    const auto expected = oracle::add(oracle::mul(to_mpz(mi), oracle::generator()),
                                      oracle::mul(to_mpz(gi), to_oracle(ai)));
    ASSERT_EQ(to_oracle(msm2(mi, gi, ai)), expected);
  }
}

TEST(ScalarArith, MatchesBigIntegerOracle) {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const Scalar a = Scalar::random(rng);
    const Scalar b = Scalar::random(rng);
    const Scalar c = Scalar::random(rng);
    const mpz_class ma = to_mpz(a), mb = to_mpz(b), mc = to_mpz(c);
    ASSERT_EQ(to_mpz(a + b), oracle::mod(ma + mb, oracle::kQ));
    ASSERT_EQ(to_mpz(a - b), oracle::mod(ma - mb, oracle::kQ));
    ASSERT_EQ(to_mpz(a * b - c), oracle::mod(ma * mb - mc, oracle::kQ));
    ASSERT_EQ(to_mpz(-c), oracle::mod(-mc, oracle::kQ));
    if (!a.is_zero()) ASSERT_EQ(to_mpz(a.inverse()), oracle::inv(ma, oracle::kQ));
  }
}

TEST(ScalarEncoding, RejectsNonCanonical) {
  const Bytes q(curve_params().q.begin(), curve_params().q.end());
  EXPECT_ERRC(Scalar::from_bytes(q), Errc::NonCanonicalScalar);
  EXPECT_ERRC(Scalar::from_bytes(Bytes(27, 0)), Errc::WrongLength);
  EXPECT_EQ(Scalar::reduce(q), Scalar{});
  Bytes q_minus_1 = q;
  q_minus_1.back() -= 1;
  EXPECT_EQ(Scalar::from_bytes(q_minus_1), -Scalar::from_u64(1));
}

TEST(NonZeroScalar, ExcludesZero) {
  EXPECT_FALSE(NonZeroScalar::from(Scalar{}).has_value());
  EXPECT_TRUE(NonZeroScalar::from(Scalar::from_u64(1)).has_value());
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_FALSE(NonZeroScalar::random(rng).value().is_zero());
}

TEST(Rng, SeededStreamsAreReproducible) {
  Rng a(42), b(42), c(43);
  EXPECT_EQ(a.bytes<32>(), b.bytes<32>());
  EXPECT_NE(a.bytes<32>(), c.bytes<32>());
  EXPECT_EQ(a.fork("x").bytes<16>(), b.fork("x").bytes<16>());
  EXPECT_NE(a.fork("x").bytes<16>(), a.fork("y").bytes<16>());
}

TEST(GroupPoint, CompressedRoundTripAndInvalid) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const GroupPoint p = base_mul(Scalar::random(rng));
    const auto enc = p.compressed();
    EXPECT_EQ(GroupPoint::from_compressed(enc), p);
    ASSERT_TRUE(oracle::on_curve(to_oracle(p)));
  }
  EXPECT_TRUE(GroupPoint::from_compressed(GroupPoint().compressed()).is_identity());
  ByteArray<kCompressedPointBytes> bad{};
  bad[0] = 0x05;
  EXPECT_ERRC(GroupPoint::from_compressed(bad), Errc::NotOnCurve);
}

TEST(GroupPoint, EvenYReconstruction) {
  Rng rng(12);
  int odd = 0;
  for (int i = 0; i < 100; ++i) {
    GroupPoint p = base_mul(Scalar::random(rng));
    if (!p.has_even_y()) {
      ++odd;
      p = -p;
    }
    ASSERT_TRUE(p.has_even_y());
    auto back = GroupPoint::from_x_even(p.x_bytes());
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, p);
  }
  EXPECT_GT(odd, 0);
}

TEST(GroupPoint, AgreesWithOracleOnAddition) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const GroupPoint a = base_mul(Scalar::random(rng));
    const GroupPoint b = base_mul(Scalar::random(rng));
    ASSERT_EQ(to_oracle(a + b), oracle::add(to_oracle(a), to_oracle(b)));
    ASSERT_TRUE((a - a).is_identity());
    ASSERT_EQ(from_oracle(to_oracle(a)), a);
  }
}

}  // namespace
}  // namespace bephap

namespace bephap {
namespace {

TEST(GroupPoint, EvenXDecodingMatchesEulerCriterion) {
  Rng rng(14);
  int residues = 0;
  for (int i = 0; i < 2000; ++i) {
    auto raw = rng.bytes<kFieldBytes>();
    const mpz_class x = oracle::from_bytes(raw);
    const auto p = GroupPoint::from_x_even(raw);
    if (x >= oracle::kP) {
      EXPECT_FALSE(p.has_value());
      continue;
    }
    const mpz_class rhs = oracle::mod(x * x * x + oracle::kA * x + oracle::kB, oracle::kP);
    const bool residue = mpz_legendre(rhs.get_mpz_t(), oracle::kP.get_mpz_t()) >= 0;
    ASSERT_EQ(p.has_value(), residue) << to_hex(raw);
    if (!p) continue;
    ++residues;
    const mpz_class y = oracle::from_bytes(p->y_bytes());
    EXPECT_EQ(oracle::mod(y * y, oracle::kP), rhs);
    EXPECT_EQ(mpz_class(y % 2), 0);
  }
  EXPECT_GT(residues, 800);
  EXPECT_LT(residues, 1200);
  // x >= p never decodes.
  Bytes p_bytes(curve_params().p.begin(), curve_params().p.end());
  EXPECT_FALSE(GroupPoint::from_x_even(p_bytes).has_value());
}

}  // namespace
}  // namespace bephap
