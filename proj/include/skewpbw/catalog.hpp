#pragma once

// Named example algebras and the stable-rank upper bounds listed for them.
//
// Every bound has the shape a*dim(R) + b*n + c*m + k. Rows that are not
// backed by a live presentation still carry their formula.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewpbw/coeff_ring.hpp"
#include "skewpbw/pbw.hpp"

namespace skewpbw {

struct BoundFormula {
  int dim = 0;  // coefficient of dim(R)
  int n = 0;
  int m = 0;
  int constant = 0;

  std::string to_string() const;
};

struct BoundRow {
  std::string id;
  std::string title;
  BoundFormula formula;
};

/// All rows of the bound table, in table order.
const std::vector<BoundRow>& bound_rows();

struct BoundQuery {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> dim_r;
};

struct BoundReport {
  std::string algebra;  // row id
  std::string title;
  std::string formula;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> dim_r;
  int bound = 0;
  /// The algebra is d-Hermite for this d; equal to the bound.
  int d_hermite = 0;
};

/// Accepts row ids and live catalog ids. n and m default to 1 when the
/// formula uses them; a formula mentioning dim(R) needs dim_r (MissingDimR)
/// unless the id names a live algebra whose coefficient ring fixes it.
BoundReport stable_rank_bound(std::string_view name, const BoundQuery& query = {});
int d_hermite_bound(std::string_view name, const BoundQuery& query = {});

struct CatalogParams {
  int n = 1;
  int m = 1;
  Rational q = 2;
  Rational nu = 2;
  Rational h = 1;
  /// lambda_{ji} for i < j in lexicographic (i, j) order; empty means all q.
  std::vector<Rational> lambdas;
  /// q_1..q_n of the additive analogue; empty means all q.
  std::vector<Rational> qs;
  /// F_p (prime_field) or Q; polynomial-ring entries adjoin a generator.
  RingDescriptor field = RingDescriptor::rationals();
};

struct CatalogEntry {
  std::string id;
  std::string summary;
  std::string params;  // accepted parameters, for `catalog show`
};

/// Algebras that can be built as presentations.
const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(std::string_view id);

/// Throws UnknownAlgebra or BadParams.
Presentation build(std::string_view id, const CatalogParams& params = {});

/// Parses the line-oriented presentation format. Throws ParseError for
/// malformed lines and SemanticError for well-formed but invalid data.
Presentation parse_presentation(std::string_view text);
std::string serialize_presentation(const Presentation& p);

}  // namespace skewpbw
