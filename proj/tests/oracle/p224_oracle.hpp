#pragma once

// Textbook affine arithmetic on secp224r1 over GMP integers. Test-only
// reference for the libcrypto-backed group code: no shared code paths,
// constants typed in from the published curve parameters.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "bephap/bytes.hpp"

namespace oracle {

inline const mpz_class kP("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF000000000000000000000001", 16);
inline const mpz_class kA = kP - 3;
inline const mpz_class kB("B4050A850C04B3ABF54132565044B0B7D7BFD8BA270B39432355FFB4", 16);
inline const mpz_class kQ("FFFFFFFFFFFFFFFFFFFFFFFFFFFF16A2E0B8F03E13DD29455C5C2A3D", 16);
inline const mpz_class kGx("B70E0CBD6BB4BF7F321390B94A03C1D356C21122343280D6115C1D21", 16);
inline const mpz_class kGy("BD376388B5F723FB4C22DFE6CD4375A05A07476444D5819985007E34", 16);

// std::nullopt is the point at infinity.
using Point = std::optional<std::pair<mpz_class, mpz_class>>;

inline mpz_class mod(const mpz_class& v, const mpz_class& m) {
  mpz_class r = v % m;
  if (r < 0) r += m;
  return r;
}

inline mpz_class inv(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), mod(v, m).get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Point generator() { return std::make_pair(kGx, kGy); }

inline bool on_curve(const Point& pt) {
  if (!pt) return true;
  const auto& [x, y] = *pt;
  return mod(y * y - (x * x * x + kA * x + kB), kP) == 0;
}

inline Point add(const Point& p1, const Point& p2) {
  if (!p1) return p2;
  if (!p2) return p1;
  const auto& [x1, y1] = *p1;
  const auto& [x2, y2] = *p2;
  mpz_class l;
  if (x1 == x2) {
    if (mod(y1 + y2, kP) == 0) return std::nullopt;
    l = mod((3 * x1 * x1 + kA) * inv(2 * y1, kP), kP);
  } else {
    l = mod((y2 - y1) * inv(x2 - x1, kP), kP);
  }
  mpz_class x3 = mod(l * l - x1 - x2, kP);
  mpz_class y3 = mod(l * (x1 - x3) - y1, kP);
  return std::make_pair(x3, y3);
}

// Left-to-right double-and-add, one bit at a time.
inline Point mul(const mpz_class& k, const Point& pt) {
  Point r = std::nullopt;
  const std::string bits = mpz_class(mod(k, kQ)).get_str(2);
  if (bits == "0") return r;
  for (char bit : bits) {
    r = add(r, r);
    if (bit == '1') r = add(r, pt);
  }
  return r;
}

inline mpz_class from_bytes(bephap::ByteView be) {
  mpz_class v;
  mpz_import(v.get_mpz_t(), be.size(), 1, 1, 1, 0, be.data());
  return v;
}

inline bephap::Bytes to_bytes(const mpz_class& v, std::size_t width = 28) {
  bephap::Bytes out(width, 0);
  std::size_t count = 0;
  bephap::Bytes tmp(width + 8, 0);
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  std::copy(tmp.begin(), tmp.begin() + count, out.end() - count);
  return out;
}

}  // namespace oracle
