#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "bephap/curve.hpp"
#include "bephap/error.hpp"
#include "oracle/p224_oracle.hpp"

namespace bephap::testing {

inline oracle::Point to_oracle(const GroupPoint& p) {
  if (p.is_identity()) return std::nullopt;
  return std::make_pair(oracle::from_bytes(p.x_bytes()),
                        oracle::from_bytes(p.y_bytes()));
}

inline GroupPoint from_oracle(const oracle::Point& p) {
  if (!p) return GroupPoint();
  auto x = oracle::to_bytes(p->first);
  auto y = oracle::to_bytes(p->second);
  return *GroupPoint::from_affine(x, y);
}

inline mpz_class to_mpz(const Scalar& s) { return oracle::from_bytes(s.bytes()); }

/// Runs `fn` and returns the typed error code it throws; fails the test if
/// it returns normally or throws anything else.
inline std::optional<Errc> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace bephap::testing

#define EXPECT_ERRC(expr, errc) \
  EXPECT_EQ(::bephap::testing::error_of([&] { (void)(expr); }), std::optional(errc))
