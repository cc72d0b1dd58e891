#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bephap {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

template <std::size_t N>
using ByteArray = std::array<std::uint8_t, N>;

// Sizes fixed by the 224-bit curve and the 160-bit hash output.
inline constexpr std::size_t kScalarBytes = 28;
inline constexpr std::size_t kFieldBytes = 28;
inline constexpr std::size_t kCompressedPointBytes = 29;
inline constexpr std::size_t kLambdaBytes = 20;
inline constexpr std::size_t kPidBytes = 16;
inline constexpr std::size_t kTimestampBytes = 4;
inline constexpr std::size_t kTxIdBytes = 32;

using Digest = ByteArray<kLambdaBytes>;
using Pid = ByteArray<kPidBytes>;
using PseudoData = ByteArray<kPidBytes>;
using TxId = ByteArray<kTxIdBytes>;

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Overwrites the buffer in a way the optimizer will not elide.
void secure_wipe(std::span<std::uint8_t> data);

void append(Bytes& out, ByteView data);
void append_u16(Bytes& out, std::uint16_t v);
void append_u32(Bytes& out, std::uint32_t v);
void append_u64(Bytes& out, std::uint64_t v);

std::uint32_t load_u32(ByteView data);
std::uint64_t load_u64(ByteView data);

bool constant_time_equal(ByteView a, ByteView b);

}  // namespace bephap
