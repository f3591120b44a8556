#pragma once

// Dense univariate polynomials over a small prime field, used by the F_p[t]
// Zariski backend. Coefficients are low degree first and trimmed, so the
// zero polynomial has no coefficients.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skewpbw {

class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs);

  static FpPoly constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }
  static FpPoly monomial(std::int64_t p, int degree);
  /// Polynomial whose coefficient of t^i is the i-th base-p digit of index.
  static FpPoly from_index(std::int64_t p, std::uint64_t index);
  static FpPoly parse(std::int64_t p, std::string_view text, const std::string& var = "t");

  std::int64_t prime() const noexcept { return p_; }
  const std::vector<std::int64_t>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  std::int64_t lead() const { return c_.back(); }
  /// Inverse of from_index.
  std::uint64_t index() const;

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator-() const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(std::int64_t s) const;
  /// Quotient and remainder; divisor must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
  FpPoly monic() const;

  std::string to_string(const std::string& var = "t") const;

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

 private:
  void trim();

  std::int64_t p_ = 2;
  std::vector<std::int64_t> c_;
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

/// Monic gcd; gcd(0, 0) = 0.
FpPoly gcd(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const std::vector<FpPoly>& gens, std::int64_t p);
/// a^e mod m for nonzero m.
FpPoly pow_mod(const FpPoly& a, std::uint64_t e, const FpPoly& m);

/// Monic irreducible factors with multiplicity, by trial division with
/// monic polynomials of increasing degree. Nonzero input only.
std::vector<std::pair<FpPoly, int>> factorize(const FpPoly& f);

}  // namespace skewpbw
