#pragma once

// Skew PBW extensions A = sigma(R)<x_1, ..., x_n> as rewriting systems.
//
// Elements are kept in the PBW basis x^a = x_1^{a_1} ... x_n^{a_n} with
// coefficients on the left. A presentation supplies, for every variable, the
// action x_i r = sigma_i(r) x_i + delta_i(r) on the coefficient ring, and for
// every pair i < j the relation
//
//   x_j x_i = c_{ij} x_i x_j + d_0 + sum_k d_k x_k.
//
// Rewriting either lowers the total degree or removes an inversion at equal
// degree, so normalization terminates for any such data; associativity is
// a separate property checked by validate_presentation.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewpbw/coeff_ring.hpp"
#include "skewpbw/random.hpp"

namespace skewpbw {

/// Exponent vector of a standard monomial. Ordered graded-lexicographically.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t num_vars, std::size_t k);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }
  int degree() const noexcept { return degree_; }

  Monomial times(const Monomial& other) const;  // exponent sum
  Monomial raised(std::size_t k, int delta) const;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exps_ == b.exps_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept;

 private:
  std::vector<std::uint32_t> exps_;
  int degree_ = 0;
};

/// Sentinel degree of the zero polynomial.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

/// Element of A in PBW normal form: no stored coefficient is zero.
class SkewPoly {
 public:
  using Terms = std::map<Monomial, RingElement>;

  SkewPoly() = default;

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Zero when the monomial is absent.
  RingElement coefficient(const Monomial& m) const;

  /// Adds c x^m in place; coefficient arithmetic happens in `ring`.
  void accumulate(const Monomial& m, const RingElement& c, const Ring& ring);

  friend bool operator==(const SkewPoly&, const SkewPoly&) = default;

 private:
  Terms terms_;
};

/// Total degree; kDegreeOfZero for the zero polynomial.
int degree(const SkewPoly& f);

/// d_0 + sum_k d_k x_k.
struct Affine {
  RingElement constant;
  std::vector<RingElement> linear;

  bool is_zero() const;
  bool operator==(const Affine&) const = default;
};

struct Presentation {
  std::string name;
  RingDescriptor ring;
  std::vector<std::string> variables;
  std::vector<EndoSpec> sigma;
  std::vector<DerivationSpec> delta;
  // c[i][j] and lower[i][j] are meaningful for i < j only.
  std::vector<std::vector<RingElement>> c;
  std::vector<std::vector<Affine>> lower;
  bool bijective = false;

  /// Commutative polynomial ring over `ring` in `variables`.
  static Presentation polynomial(std::string name, RingDescriptor ring, std::vector<std::string> variables);

  std::size_t num_vars() const noexcept { return variables.size(); }
  /// Index of a variable name, or -1.
  int index_of(std::string_view var) const;

  /// x_j x_i = c x_i x_j + lower for i < j.
  void set_relation(std::size_t i, std::size_t j, RingElement c_ij, Affine lower_ij);
  /// x_i r = sigma(r) x_i + delta(r); images of the ring generator.
  void set_action(std::size_t i, std::optional<RingElement> sigma_image, std::optional<RingElement> delta_image);

  bool operator==(const Presentation&) const = default;
};

/// Throws SemanticError for structurally malformed presentations (sizes,
/// zero constants, actions on a ring without generator, non-unit constants
/// in a bijective presentation, coefficient rings that are not domains).
void check_structure(const Presentation& p);

/// Normal-form arithmetic in one presentation. Products of monomials are
/// memoized; the cache is internally synchronized and does not affect results.
class Algebra {
 public:
  explicit Algebra(Presentation p);

  const Presentation& presentation() const noexcept { return pres_; }
  const Ring& ring() const noexcept { return ring_; }
  std::size_t num_vars() const noexcept { return pres_.num_vars(); }
  /// True when every sigma is the identity and every delta is zero.
  bool coefficients_central() const noexcept { return central_; }

  SkewPoly zero() const { return {}; }
  SkewPoly one() const { return constant(ring_.one()); }
  SkewPoly constant(const RingElement& r) const;
  SkewPoly variable(std::size_t k) const;
  SkewPoly term(const RingElement& c, const Monomial& m) const;

  SkewPoly add(const SkewPoly& f, const SkewPoly& g) const;
  SkewPoly sub(const SkewPoly& f, const SkewPoly& g) const;
  SkewPoly neg(const SkewPoly& f) const;
  /// r * f with r multiplied on the left.
  SkewPoly scale(const RingElement& r, const SkewPoly& f) const;
  SkewPoly multiply(const SkewPoly& f, const SkewPoly& g) const;
  SkewPoly pow(const SkewPoly& f, unsigned long e) const;

  /// x^a * r as a normal form (moves the coefficient to the left).
  SkewPoly commute_coefficient(const Monomial& a, const RingElement& r) const;
  /// x^a * x^b as a normal form.
  SkewPoly monomial_product(const Monomial& a, const Monomial& b) const;

  /// Normal form of an expression over the variables and ring literals.
  SkewPoly parse(std::string_view text, std::size_t line = 0) const;
  std::string to_string(const SkewPoly& f) const;

  /// Random element of degree <= degree_bound; `density` is the chance that
  /// a monomial receives a (possibly zero) coefficient.
  SkewPoly random(Rng& rng, int degree_bound, double density = 0.6, int coeff_degree = 1) const;
  /// All standard monomials of total degree <= bound, graded-lex ascending.
  std::vector<Monomial> monomials_up_to(int bound) const;

 private:
  SkewPoly mul_var_right(const SkewPoly& f, std::size_t k) const;
  SkewPoly monomial_times_variable(const Monomial& a, std::size_t k) const;
  void add_scaled_into(SkewPoly& acc, const RingElement& r, const SkewPoly& f) const;

  Presentation pres_;
  Ring ring_;
  bool central_ = true;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<Monomial, std::size_t>, SkewPoly> var_cache_;
  mutable std::map<std::pair<Monomial, Monomial>, SkewPoly> mono_cache_;
};

/// A single token of a formal word: a variable index, or a coefficient.
struct WordToken {
  bool is_variable = true;
  std::size_t var = 0;
  RingElement coeff;
};

/// Normalizes a formal product of tokens.
SkewPoly normalize_word(const Algebra& algebra, const std::vector<WordToken>& word);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = kDefaultSeed;

  bool passed() const;
};

struct ValidationOptions {
  std::size_t samples = 500;
  std::uint64_t seed = kDefaultSeed;
};

/// Constants, sigma/delta laws, and associativity on generator triples and on
/// (x_j x_i) r versus x_j (x_i r) for sampled coefficients r.
ValidationReport validate_presentation(const Presentation& p, const ValidationOptions& options = {});

/// Drops every delta and every lower-order term.
Presentation associated_graded(const Presentation& p);
bool is_quasi_commutative(const Presentation& p);

struct ZeroDivisorReport {
  std::size_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::pair<std::string, std::string>> counterexamples;
  /// Samples where deg(fg) < deg f + deg g.
  std::size_t degree_drops = 0;

  bool passed() const noexcept { return counterexamples.empty(); }
};

ZeroDivisorReport zero_divisor_probe(const Algebra& algebra, std::size_t trials, int degree_bound,
                                     std::uint64_t seed = kDefaultSeed);

}  // namespace skewpbw
