#include "p224_sqrt.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace bephap::detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Fe = std::array<u64, 4>;  // little-endian limbs

// p = 2^224 - 2^96 + 1. p = 1 mod 2^64, so -p^-1 mod 2^64 is all ones.
constexpr Fe kP = {0x0000000000000001ULL, 0xFFFFFFFF00000000ULL,
                   0xFFFFFFFFFFFFFFFFULL, 0x00000000FFFFFFFFULL};
constexpr u64 kN0 = ~0ULL;
constexpr int kTwoAdicity = 96;  // p - 1 = 2^96 (2^128 - 1)

bool geq(const Fe& a, const Fe& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

Fe sub_p(const Fe& a) {
  Fe r{};
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - kP[i] - borrow;
    r[i] = static_cast<u64>(d);
    borrow = static_cast<u64>(d >> 64) & 1;
  }
  return r;
}

// CIOS Montgomery multiplication, R = 2^256.
Fe mul(const Fe& a, const Fe& b) {
  std::array<u64, 6> t{};
  for (int i = 0; i < 4; ++i) {
    u64 carry = 0;
    for (int j = 0; j < 4; ++j) {
      u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<u64>(s);
      carry = static_cast<u64>(s >> 64);
    }
    u128 s = static_cast<u128>(t[4]) + carry;
    t[4] = static_cast<u64>(s);
    t[5] = static_cast<u64>(s >> 64);

    const u64 m = t[0] * kN0;
    s = static_cast<u128>(m) * kP[0] + t[0];
    carry = static_cast<u64>(s >> 64);
    for (int j = 1; j < 4; ++j) {
      s = static_cast<u128>(m) * kP[j] + t[j] + carry;
      t[j - 1] = static_cast<u64>(s);
      carry = static_cast<u64>(s >> 64);
    }
    s = static_cast<u128>(t[4]) + carry;
    t[3] = static_cast<u64>(s);
    t[4] = t[5] + static_cast<u64>(s >> 64);
  }
  Fe r = {t[0], t[1], t[2], t[3]};
  if (t[4] != 0 || geq(r, kP)) r = sub_p(r);
  return r;
}

Fe add(const Fe& a, const Fe& b) {
  Fe r{};
  u64 carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    r[i] = static_cast<u64>(s);
    carry = static_cast<u64>(s >> 64);
  }
  // Inputs are < p < 2^224, so the sum never overflows 256 bits.
  if (geq(r, kP)) r = sub_p(r);
  return r;
}

Fe sqr(const Fe& a) { return mul(a, a); }

Fe sqr_n(Fe a, int n) {
  while (n-- > 0) a = sqr(a);
  return a;
}

Fe from_be(ByteView be) {
  Fe r{};
  for (std::size_t i = 0; i < be.size(); ++i) {
    const std::size_t bit = 8 * (be.size() - 1 - i);
    r[bit / 64] |= static_cast<u64>(be[i]) << (bit % 64);
  }
  return r;
}

ByteArray<kFieldBytes> to_be(const Fe& a) {
  ByteArray<kFieldBytes> out{};
  for (std::size_t i = 0; i < kFieldBytes; ++i) {
    const std::size_t bit = 8 * (kFieldBytes - 1 - i);
    out[i] = static_cast<std::uint8_t>(a[bit / 64] >> (bit % 64));
  }
  return out;
}

constexpr int kDigitBits = 8;
constexpr int kDigits = kTwoAdicity / kDigitBits;  // 12
constexpr int kDigitValues = 1 << kDigitBits;

Fe sub_from_zero(const Fe& a) {
  Fe r{};
  u64 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(kP[i]) - a[i] - borrow;
    r[i] = static_cast<u64>(d);
    borrow = static_cast<u64>(d >> 64) & 1;
  }
  return r;
}

// Square roots by discrete logarithm in the 2^96-torsion subgroup, eight
// bits at a time against precomputed tables:
//
//   t = rhs^Q = g^e,  sqrt(rhs) = rhs^((Q+1)/2) * g^(-e/2)
//
// where g generates the subgroup and Q = 2^128 - 1.
struct Tables {
  Fe r2{};
  Fe one{};
  Fe b{};
  Fe three{};
  // neg[i][j] = g^(-j * 2^(8i))
  std::array<std::array<Fe, kDigitValues>, kDigits> neg{};
  // top[j] = g^(j * 2^88), indexed by its low limb for lookup
  std::array<std::pair<u64, int>, kDigitValues> top{};
  std::array<Fe, kDigitValues> top_full{};

  Fe to_mont(const Fe& a) const { return mul(a, r2); }
  Fe from_mont(const Fe& a) const { return mul(a, Fe{1, 0, 0, 0}); }

  Tables() {
    Fe acc = {1, 0, 0, 0};
    for (int i = 0; i < 256; ++i) acc = add(acc, acc);
    one = acc;  // 2^256 mod p
    for (int i = 0; i < 256; ++i) acc = add(acc, acc);
    r2 = acc;   // 2^512 mod p
    b = to_mont(from_be(std::array<std::uint8_t, 28>{
        0xB4, 0x05, 0x0A, 0x85, 0x0C, 0x04, 0xB3, 0xAB, 0xF5, 0x41,
        0x32, 0x56, 0x50, 0x44, 0xB0, 0xB7, 0xD7, 0xBF, 0xD8, 0xBA,
        0x27, 0x0B, 0x39, 0x43, 0x23, 0x55, 0xFF, 0xB4}));
    three = to_mont(Fe{3, 0, 0, 0});

    // g = z^Q for the smallest non-residue z; g has order exactly 2^96.
    const Fe minus_one = sub_from_zero(one);
    Fe g{};
    for (u64 z = 2;; ++z) {
      g = pow_q(to_mont(Fe{z, 0, 0, 0}));
      if (sqr_n(g, kTwoAdicity - 1) == minus_one) break;
    }
    // g^-1 = g^(2^96 - 1) = prod_{k<96} g^(2^k)
    Fe g_inv = one;
    Fe power = g;
    for (int k = 0; k < kTwoAdicity; ++k) {
      g_inv = mul(g_inv, power);
      power = sqr(power);
    }
    Fe base = g_inv;  // g^(-2^(8i))
    for (int i = 0; i < kDigits; ++i) {
      neg[i][0] = one;
      for (int j = 1; j < kDigitValues; ++j) neg[i][j] = mul(neg[i][j - 1], base);
      base = sqr_n(base, kDigitBits);
    }
    const Fe g_top = sqr_n(g, kTwoAdicity - kDigitBits);
    Fe cur = one;
    for (int j = 0; j < kDigitValues; ++j) {
      top_full[j] = cur;
      top[j] = {cur[0], j};
      cur = mul(cur, g_top);
    }
    std::sort(top.begin(), top.end());
  }

  // a^(2^128 - 1) via x_{2k} = x_k^(2^k) * x_k.
  static Fe pow_q(const Fe& a) {
    Fe x = a;
    for (int k = 1; k < 128; k *= 2) x = mul(sqr_n(x, k), x);
    return x;
  }

  // a^(2^127 - 1); x_n denotes a^(2^n - 1).
  static Fe pow_half_q(const Fe& a) {
    const Fe x2 = mul(sqr(a), a);
    const Fe x3 = mul(sqr(x2), a);
    const Fe x6 = mul(sqr_n(x3, 3), x3);
    const Fe x12 = mul(sqr_n(x6, 6), x6);
    const Fe x24 = mul(sqr_n(x12, 12), x12);
    const Fe x48 = mul(sqr_n(x24, 24), x24);
    const Fe x96 = mul(sqr_n(x48, 48), x48);
    const Fe x120 = mul(sqr_n(x96, 24), x24);
    const Fe x126 = mul(sqr_n(x120, 6), x6);
    return mul(sqr(x126), a);
  }

  std::optional<int> digit(const Fe& v) const {
    auto it = std::lower_bound(top.begin(), top.end(), std::make_pair(v[0], 0));
    for (; it != top.end() && it->first == v[0]; ++it) {
      if (top_full[it->second] == v) return it->second;
    }
    return std::nullopt;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::optional<ByteArray<kFieldBytes>> p224_even_y(ByteView x_be) {
  if (x_be.size() != kFieldBytes) return std::nullopt;
  const Fe x_plain = from_be(x_be);
  if (geq(x_plain, kP)) return std::nullopt;
  const Tables& k = tables();

  // rhs = x^3 - 3x + b
  const Fe x = k.to_mont(x_plain);
  const Fe x3 = mul(sqr(x), x);
  const Fe rhs = add(add(x3, sub_from_zero(mul(k.three, x))), k.b);
  if (rhs == Fe{}) return to_be(Fe{});

  const Fe w = Tables::pow_half_q(rhs);  // rhs^((Q-1)/2)
  const Fe t = mul(sqr(w), rhs);         // rhs^Q
  Fe root = mul(w, rhs);                 // rhs^((Q+1)/2)

  std::array<Fe, kDigits> t_pow{};  // t^(2^(8k))
  t_pow[0] = t;
  for (int i = 1; i < kDigits; ++i) t_pow[i] = sqr_n(t_pow[i - 1], kDigitBits);

  std::array<int, kDigits> d{};
  for (int i = 0; i < kDigits; ++i) {
    Fe v = t_pow[kDigits - 1 - i];
    for (int j = 0; j < i; ++j) v = mul(v, k.neg[kDigits - 1 - (i - j)][d[j]]);
    auto digit = k.digit(v);
    if (!digit) return std::nullopt;
    d[i] = *digit;
  }
  if (d[0] & 1) return std::nullopt;  // odd discrete log: non-residue

  // Halve e = sum d_i 2^(8i) and multiply in g^(-e/2) digit by digit.
  u128 e = 0;
  for (int i = kDigits - 1; i >= 0; --i) e = (e << kDigitBits) | static_cast<u128>(d[i]);
  u128 half = e >> 1;
  for (int i = 0; i < kDigits; ++i) {
    const int digit = static_cast<int>(half & (kDigitValues - 1));
    half >>= kDigitBits;
    if (digit != 0) root = mul(root, k.neg[i][digit]);
  }

  Fe y = k.from_mont(root);
  if (y[0] & 1) y = sub_from_zero(y);
  return to_be(y);
}

}  // namespace bephap::detail
