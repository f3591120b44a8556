#pragma once

// Exact coefficient rings: Z/m, F_p, Q, univariate polynomials over F_p or Q,
// and F_p[x]/(f). Elements are plain values in canonical form, so equality of
// elements is structural equality; every operation takes the ring explicitly.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "skewpbw/random.hpp"

namespace skewpbw {

using Integer = mpz_class;
using Rational = mpq_class;

/// Residue in [0, m) for a modular base, or an exact rational.
using Scalar = std::variant<std::int64_t, Rational>;

/// Z/m (m >= 2) or Q (modulus 0).
class BaseRing {
 public:
  static BaseRing modular(std::int64_t m);
  static BaseRing rationals() { return BaseRing(); }

  bool is_rational() const noexcept { return modulus_ == 0; }
  bool is_field() const noexcept { return modulus_ == 0 || prime_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(const Integer& v) const;
  /// Throws NotAUnit when the denominator is not invertible modulo m.
  Scalar from_rational(const Rational& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  std::optional<Scalar> inverse(const Scalar& a) const;
  bool contains(const Scalar& a) const;

  Scalar random(Rng& rng) const;
  std::string to_string(const Scalar& a) const;
  /// Signed rendering used when printing sums: -1/2 rather than p - 1.
  bool is_negative(const Scalar& a) const;

  bool operator==(const BaseRing&) const = default;

 private:
  std::int64_t modulus_ = 0;
  bool prime_ = false;
};

bool is_prime(std::int64_t n);

enum class RingKind { PrimeField, Rationals, Residue, UnivariatePoly, QuotientPoly };

/// What a coefficient ring is. For UnivariatePoly, `modulus` is the base prime
/// (0 means the base is Q); for QuotientPoly, `quotient` is the monic modulus
/// over F_p, low degree first.
struct RingDescriptor {
  RingKind kind = RingKind::Rationals;
  std::int64_t modulus = 0;
  std::string variable;
  std::vector<std::int64_t> quotient;

  static RingDescriptor prime_field(std::int64_t p);
  static RingDescriptor rationals();
  static RingDescriptor residue(std::int64_t n);
  static RingDescriptor univariate(std::int64_t base_prime, std::string variable);
  static RingDescriptor quotient_poly(std::int64_t p, std::vector<std::int64_t> monic_modulus,
                                      std::string variable = "x");

  bool operator==(const RingDescriptor&) const = default;
};

class RingElement {
 public:
  RingElement() = default;
  /// Coefficients low degree first. Callers must pass canonical data; use
  /// Ring to build elements from arbitrary input.
  explicit RingElement(std::vector<Scalar> coefficients) : coeffs_(std::move(coefficients)) {}

  const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree as a polynomial in the ring generator; -1 for zero.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  bool operator==(const RingElement&) const = default;

 private:
  std::vector<Scalar> coeffs_;
};

enum class ArithOp { Add, Mul, Neg, Inv };

class Ring {
 public:
  explicit Ring(RingDescriptor descriptor);

  const RingDescriptor& descriptor() const noexcept { return desc_; }
  RingKind kind() const noexcept { return desc_.kind; }
  const BaseRing& base() const noexcept { return base_; }

  bool is_polynomial() const noexcept { return desc_.kind == RingKind::UnivariatePoly; }
  bool is_field() const noexcept;
  bool is_domain() const noexcept;
  bool is_finite() const noexcept;
  /// Number of elements; throws InfiniteRing.
  std::uint64_t size() const;
  /// Name of the ring generator, empty for scalar kinds.
  const std::string& variable() const noexcept { return desc_.variable; }

  RingElement zero() const { return {}; }
  RingElement one() const;
  RingElement from_integer(const Integer& v) const;
  RingElement from_rational(const Rational& v) const;
  RingElement from_scalar(const Scalar& s) const;
  /// The generator t of K[t] or x of F_p[x]/(f).
  RingElement generator() const;
  /// Reduces arbitrary coefficient data into canonical form.
  RingElement make(std::vector<Scalar> coefficients) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement pow(const RingElement& a, unsigned long e) const;
  /// Two-sided inverse; throws NotAUnit.
  RingElement inv(const RingElement& a) const;
  /// Inverse witness when `a` is a unit.
  std::optional<RingElement> unit_inverse(const RingElement& a) const;
  bool is_unit(const RingElement& a) const { return unit_inverse(a).has_value(); }
  bool is_one(const RingElement& a) const { return a == one(); }
  /// True when `a` lies in the base ring (a "constant").
  bool is_constant(const RingElement& a) const noexcept { return a.coefficients().size() <= 1; }

  /// Throws KindMismatch when `a` is not a canonical element of this ring.
  void require(const RingElement& a) const;
  bool contains(const RingElement& a) const;

  /// Every element exactly once in canonical order; throws InfiniteRing.
  std::vector<RingElement> enumerate() const;
  /// Position of `a` in enumerate(); finite rings only.
  std::uint64_t index_of(const RingElement& a) const;

  /// Random element; polynomial kinds use degree <= degree_bound.
  RingElement random(Rng& rng, int degree_bound = 2) const;

  std::string to_string(const RingElement& a) const;
  /// Parses an expression in the ring generator; throws ParseError.
  RingElement parse(std::string_view text, std::size_t line = 0) const;

  bool operator==(const Ring& other) const { return desc_ == other.desc_; }

 private:
  std::vector<Scalar> reduce(std::vector<Scalar> coeffs) const;
  std::vector<Scalar> trim(std::vector<Scalar> coeffs) const;

  RingDescriptor desc_;
  BaseRing base_;
  std::vector<Scalar> quotient_;
};

RingElement arith(ArithOp op, const RingElement& a, const std::optional<RingElement>& b, const Ring& ring);

/// sigma on the coefficient ring, given by the image of the ring generator
/// and acting as the identity on the base field. An empty image is the
/// identity map.
struct EndoSpec {
  std::optional<RingElement> generator_image;
  bool declared_bijective = true;

  bool is_identity() const noexcept { return !generator_image.has_value(); }
  bool operator==(const EndoSpec&) const = default;
};

/// sigma-derivation given by the image of the ring generator; zero on the
/// base field. An empty image is the zero derivation.
struct DerivationSpec {
  std::optional<RingElement> generator_image;
  EndoSpec twist;

  bool is_zero() const noexcept { return !generator_image.has_value(); }
  bool operator==(const DerivationSpec&) const = default;
};

RingElement apply_endo(const EndoSpec& spec, const RingElement& a, const Ring& ring);
RingElement apply_derivation(const DerivationSpec& spec, const RingElement& a, const Ring& ring);

/// Injectivity and surjectivity are decidable for univariate rings over a
/// field: t -> g is injective iff deg g >= 1, bijective iff deg g == 1.
bool endo_is_injective(const EndoSpec& spec, const Ring& ring);
bool endo_is_bijective(const EndoSpec& spec, const Ring& ring);

struct LawCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const noexcept { return failures == 0; }
};

/// Sampled sigma(a+b) = sigma(a)+sigma(b) and sigma(ab) = sigma(a)sigma(b).
LawCheck check_endo_laws(const EndoSpec& spec, const Ring& ring, std::size_t samples, Rng& rng);
/// Sampled delta(a+b) = delta(a)+delta(b) and delta(ab) = sigma(a)delta(b) + delta(a)b.
LawCheck check_derivation_laws(const DerivationSpec& spec, const Ring& ring, std::size_t samples, Rng& rng);

}  // namespace skewpbw
