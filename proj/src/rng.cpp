#include "bephap/rng.hpp"

#include <openssl/rand.h>

#include "ossl.hpp"

namespace bephap {

namespace {
constexpr std::string_view kSeedLabel = "bephap.rng.seed";
constexpr std::string_view kStreamLabel = "bephap.rng.stream";
constexpr std::string_view kForkLabel = "bephap.rng.fork";
}  // namespace

Rng::Rng(std::uint64_t seed) {
  Bytes s;
  append_u64(s, seed);
  detail::shake256({as_bytes(kSeedLabel), s}, key_);
}

Rng Rng::from_os() {
  ByteArray<32> key{};
  if (RAND_bytes(key.data(), static_cast<int>(key.size())) != 1)
    detail::fail("RAND_bytes");
  return Rng(key);
}

void Rng::fill(std::span<std::uint8_t> out) {
  Bytes ctr;
  append_u64(ctr, counter_++);
  detail::shake256({as_bytes(kStreamLabel), key_, ctr}, out);
}

std::uint64_t Rng::next_u64() {
  auto b = bytes<8>();
  return load_u64(b);
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  // Rejection sampling avoids modulo bias.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Rng Rng::fork(std::string_view label) const {
  ByteArray<32> child{};
  detail::shake256({as_bytes(kForkLabel), key_, as_bytes(label)}, child);
  return Rng(child);
}

}  // namespace bephap
