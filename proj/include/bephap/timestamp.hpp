#pragma once

#include <cstdint>

namespace bephap {

/// Harness-epoch milliseconds truncated to 32 bits (the 4-byte wire field).
struct Timestamp {
  std::uint32_t ms = 0;

  static constexpr Timestamp from_ms(std::uint64_t now_ms) {
    return Timestamp{static_cast<std::uint32_t>(now_ms)};
  }
  bool operator==(const Timestamp&) const = default;
};

/// Signed distance from `t` to `now`, correct across 2^32 wraparound as long
/// as the true distance is below 2^31 ms.
constexpr std::int64_t timestamp_age(Timestamp t, std::uint64_t now_ms) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(now_ms) - t.ms);
}

constexpr bool is_fresh(Timestamp t, std::uint64_t now_ms,
                        std::uint32_t window_ms) {
  const std::int64_t age = timestamp_age(t, now_ms);
  return age <= window_ms && -age <= window_ms;
}

}  // namespace bephap
