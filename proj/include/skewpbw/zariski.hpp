#pragma once

// Zariski lattice D(X) = intersection of the primes containing X, boundary
// ideals and Kronecker-style generator reduction, for finite commutative
// rings (by exhaustion) and for F_p[t] (through gcds and factorization).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "skewpbw/coeff_ring.hpp"
#include "skewpbw/fp_poly.hpp"

namespace skewpbw {

/// Subset of a finite ring, indexed by element position.
using ElementSet = boost::dynamic_bitset<>;

/// A finite commutative ring given by its operation tables. Element 0 is
/// the additive identity; elements are listed in canonical order.
class FiniteCommRing {
 public:
  using Elem = std::uint32_t;

  /// Validates the axioms: exhaustively up to 64 elements, by sampling
  /// above. Throws BadParams on the first violated axiom.
  FiniteCommRing(std::string name, std::vector<std::string> names, std::vector<std::vector<Elem>> add,
                 std::vector<std::vector<Elem>> mul, std::uint64_t seed = kDefaultSeed);

  static FiniteCommRing from_descriptor(const RingDescriptor& d);
  static FiniteCommRing product(const FiniteCommRing& a, const FiniteCommRing& b);
  /// Zmod:n, Fp:p, quot:F<p>:<poly in x>, prod:<spec>x<spec> (also ';').
  static FiniteCommRing parse_spec(std::string_view spec);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return names_.size(); }
  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a][b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a][b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  bool is_unit(Elem a) const;

  const std::string& to_string(Elem a) const { return names_[a]; }
  /// Accepts the printed form, and integers / expressions where the ring
  /// kind allows them. Throws ParseError.
  Elem parse_element(std::string_view text) const;

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet whole() const { return ~empty_set(); }
  std::string format(const ElementSet& s) const;

 private:
  FiniteCommRing() = default;
  void validate(std::uint64_t seed) const;

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<Elem>> add_;
  std::vector<std::vector<Elem>> mul_;
  std::vector<Elem> neg_;
  Elem one_ = 0;
  std::optional<RingDescriptor> descriptor_;  // when built from one
  std::vector<std::shared_ptr<const FiniteCommRing>> factors_;  // product rings
};

/// Ideal and lattice computations on one finite ring, with the list of all
/// ideals and primes computed once.
class ZariskiFinite {
 public:
  explicit ZariskiFinite(const FiniteCommRing& ring);

  const FiniteCommRing& ring() const noexcept { return ring_; }

  ElementSet ideal_generated(const std::vector<FiniteCommRing::Elem>& gens) const;
  ElementSet ideal_generated(const ElementSet& gens) const;
  ElementSet principal(FiniteCommRing::Elem a) const;
  ElementSet sum(const ElementSet& a, const ElementSet& b) const;
  ElementSet product(const ElementSet& a, const ElementSet& b) const;
  bool is_ideal(const ElementSet& s) const;

  /// All ideals, starting with {0}.
  const std::vector<ElementSet>& ideals() const noexcept { return ideals_; }
  const std::vector<ElementSet>& primes() const noexcept { return primes_; }

  /// Intersection of the primes containing X (the whole ring when none).
  ElementSet D(const ElementSet& x) const;
  ElementSet D(const std::vector<FiniteCommRing::Elem>& x) const;
  /// Nilpotent elements, computed from powers rather than from primes.
  ElementSet nilradical() const;
  /// {x : x v in target}.
  ElementSet colon(const ElementSet& target, FiniteCommRing::Elem v) const;
  /// <v> + (D(0) : <v>).
  ElementSet boundary_ideal(FiniteCommRing::Elem v) const;

  struct Membership {
    bool member = false;
    std::uint64_t k = 0;  // smallest k >= 1 with a^k in <I>, when member
  };
  Membership radical_membership(FiniteCommRing::Elem a, const std::vector<FiniteCommRing::Elem>& gens) const;

 private:
  const FiniteCommRing& ring_;
  std::vector<ElementSet> principal_;
  std::vector<ElementSet> ideals_;
  std::vector<ElementSet> primes_;
};

struct QuotientRing {
  FiniteCommRing ring;
  std::vector<FiniteCommRing::Elem> projection;  // element -> coset
};

/// Cosets of `ideal`, each named after its first element in canonical order.
QuotientRing quotient_ring(const ZariskiFinite& z, const ElementSet& ideal);

struct LawResult {
  std::string law;  // "i" .. "xii"
  std::string description;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first_violation;

  bool passed() const noexcept { return violations == 0; }
};

/// All twelve lattice laws. Exhaustive over ideals, ideal pairs/triples and
/// element pairs; law (i) ranges over all subsets up to 16 elements and
/// over subsets of size <= 2 above that.
std::vector<LawResult> check_lattice_laws(const ZariskiFinite& z);

struct BoundaryReport {
  std::size_t elements = 0;
  std::vector<FiniteCommRing::Elem> failures;  // v with I_v != S

  bool passed() const noexcept { return failures.empty(); }
};
BoundaryReport check_boundary_condition(const ZariskiFinite& z);

struct Dim0Reduction {
  FiniteCommRing::Elem x1 = 0;
  enum class Method { Trivial, Constructive, Fallback } method = Method::Trivial;
  /// Whether 1 = a u1 + x1 with x1 in (D(0):u1) gave a verifying x1, even
  /// when the trivial answer was returned.
  bool constructive_verified = false;
  FiniteCommRing::Elem a = 0;  // from the decomposition, when found
};

/// x1 with D(u1 + x1 u) = D(u1, u). Returns 0 when that already works,
/// otherwise the decomposition pick, otherwise the first x1 of a full scan.
Dim0Reduction kronecker_reduce_dim0(const ZariskiFinite& z, FiniteCommRing::Elem u1, FiniteCommRing::Elem u);

/// First tuple (x1..xd), lexicographic in canonical element order, with
/// D(u_i + x_i u) = D(u_1..u_d, u). Always exists for finite rings.
std::vector<FiniteCommRing::Elem> kronecker_reduce_finite(const ZariskiFinite& z,
                                                          const std::vector<FiniteCommRing::Elem>& us,
                                                          FiniteCommRing::Elem u);

/// PreconditionFailed unless the tuple generates the ring.
std::vector<FiniteCommRing::Elem> unimodular_shrink_finite(const ZariskiFinite& z,
                                                           const std::vector<FiniteCommRing::Elem>& us);

// ------------------------------------------------------------------ F_p[t]

/// D(I) in F_p[t]: the monic squarefree generator of the radical, the zero
/// polynomial for D(0) = 0, or 1 for the whole ring.
struct RadicalClass {
  FpPoly generator;

  bool is_unit() const { return generator.is_one(); }
  bool operator==(const RadicalClass&) const = default;
};

/// Squarefree part of gcd(gens) via factorization.
RadicalClass zariski_D(const std::vector<FpPoly>& gens, std::int64_t p);

struct PolyMembership {
  bool member = false;
  std::uint64_t k = 0;
};
/// a in D(I) by testing powers of a modulo gcd(I), not through factoring.
PolyMembership radical_membership(const FpPoly& a, const std::vector<FpPoly>& gens, std::int64_t p);

struct PolyKronecker {
  std::vector<FpPoly> xs;
  std::uint64_t candidates = 0;  // tuples examined
};

/// First (x_1..x_d) with deg x_i <= bound, scanned by maximal degree and
/// lexicographically (canonical index order) within a degree level, such that
/// D(u_i + x_i u) = D(u_1..u_d, u). Empty when none exists within the bound.
std::optional<PolyKronecker> kronecker_reduce_poly(const std::vector<FpPoly>& us, const FpPoly& u, int bound);

/// Checks D(u_i + x_i u) = D(u_1..u_d, u) through factorization.
bool verify_kronecker_poly(const std::vector<FpPoly>& us, const FpPoly& u, const std::vector<FpPoly>& xs);

/// PreconditionFailed unless gcd(us) = 1.
std::optional<PolyKronecker> unimodular_shrink_poly(const std::vector<FpPoly>& us, int bound);

}  // namespace skewpbw
