#pragma once

#include <optional>

#include "bephap/bytes.hpp"

namespace bephap::detail {

/// Square root of x^3 - 3x + b over the P-224 base field, returning the
/// even root. nullopt when x >= p or the right-hand side is a non-residue.
/// Variable time; only ever applied to public x-coordinates.
std::optional<ByteArray<kFieldBytes>> p224_even_y(ByteView x);

}  // namespace bephap::detail
