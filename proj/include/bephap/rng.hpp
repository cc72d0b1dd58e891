#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "bephap/bytes.hpp"

namespace bephap {

/// Deterministic byte generator: SHAKE256 over (key || counter). Seeded
/// instances reproduce identical streams across runs and platforms;
/// `from_os()` draws its key from the system CSPRNG.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random>
/// distributions in the simulator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  static Rng from_os();

  void fill(std::span<std::uint8_t> out);

  template <std::size_t N>
  ByteArray<N> bytes() {
    ByteArray<N> out{};
    fill(out);
    return out;
  }

  std::uint64_t next_u64();
  /// Uniform in [0, bound); bound must be non-zero.
  std::uint64_t uniform(std::uint64_t bound);
  double unit();  // uniform in [0, 1)

  /// Independent child stream keyed by `label`; does not advance this one.
  Rng fork(std::string_view label) const;

  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  explicit Rng(const ByteArray<32>& key) : key_(key) {}

  ByteArray<32> key_{};
  std::uint64_t counter_ = 0;
};

}  // namespace bephap
