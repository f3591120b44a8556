#pragma once

#include <cstdint>
#include <random>

namespace skewpbw {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20170401;

/// Uniform draw in [0, bound). Uses plain reduction instead of
/// std::uniform_int_distribution so that sample streams are identical
/// across standard library implementations.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline std::int64_t draw_between(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace skewpbw
