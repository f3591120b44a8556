#pragma once

// A deliberately naive normalizer: rewrites formal words one rule at a time,
// always at the leftmost redex, and never multiplies monomials directly.
// Much slower than Algebra, and shares none of its product code, which makes
// it useful as a cross-check.

#include <string>
#include <vector>

#include "skewpbw/pbw.hpp"

namespace skewpbw {

SkewPoly reference_normalize(const Presentation& p, const std::vector<WordToken>& word);

/// Random word of 1..max_length tokens; roughly one token in four is a
/// nonzero coefficient.
std::vector<WordToken> random_word(const Algebra& algebra, Rng& rng, std::size_t max_length);

std::string format_word(const Algebra& algebra, const std::vector<WordToken>& word);

}  // namespace skewpbw
