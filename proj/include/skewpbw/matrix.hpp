#pragma once

// Matrices over a skew PBW extension: one-sided inverses of rows and
// columns, completion certificates and stable reduction of columns.
//
// Entry products keep their order (F[i][j] * G[j][k]); nothing here assumes
// commutativity. Witness searches are bounded: an empty result means "no
// witness of degree <= bound", not "not unimodular".

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewpbw/pbw.hpp"

namespace skewpbw {

class PolyMatrix {
 public:
  /// Zero matrix; throws DimensionMismatch for an empty shape.
  PolyMatrix(std::size_t rows, std::size_t cols);
  static PolyMatrix identity(const Algebra& algebra, std::size_t n);
  static PolyMatrix row(std::vector<SkewPoly> entries);
  static PolyMatrix column(std::vector<SkewPoly> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  SkewPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const SkewPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<SkewPoly> entries_;
};

PolyMatrix mat_multiply(const Algebra& algebra, const PolyMatrix& f, const PolyMatrix& g);

enum class Side { Left, Right };

/// Right: F G = I. Left: G F = I. The identity has the size the product has.
bool verify_inverse(const Algebra& algebra, const PolyMatrix& f, const PolyMatrix& g, Side side);

/// Column b with sum u_i b_i = 1 and deg b_i <= bound. Needs a field as
/// coefficient ring (UnsupportedCoefficientRing otherwise).
std::optional<PolyMatrix> find_right_inverse_row(const Algebra& algebra, const PolyMatrix& u, int bound);
/// Row b with sum b_i v_i = 1 and deg b_i <= bound.
std::optional<PolyMatrix> find_left_inverse_column(const Algebra& algebra, const PolyMatrix& v, int bound);

/// [v_1 + a_1 v_r, ..., v_{r-1} + a_{r-1} v_r]^T.
PolyMatrix stable_reduction(const Algebra& algebra, const PolyMatrix& v, const std::vector<SkewPoly>& a);
/// True when the reduced column has a left inverse within the bound.
bool stable_reduce_check(const Algebra& algebra, const PolyMatrix& v, const std::vector<SkewPoly>& a, int bound);

struct StableReduction {
  std::vector<SkewPoly> a;
  PolyMatrix witness;  // left inverse of the reduced column
};

/// Scans a-tuples with entries of degree <= a_degree_bound, degree level by
/// level and lexicographically within a level; the first verifying tuple
/// wins. Over Q the coefficient pool is {0, 1, -1}.
std::optional<StableReduction> search_stable_reduction(const Algebra& algebra, const PolyMatrix& v,
                                                       int a_degree_bound, int witness_degree_bound);

/// u U = e_1 together with U Uinv = Uinv U = I.
bool verify_completion(const Algebra& algebra, const PolyMatrix& u, const PolyMatrix& U, const PolyMatrix& uinv);
/// F U = [I_s | 0] together with U Uinv = Uinv U = I.
bool verify_rect_completion(const Algebra& algebra, const PolyMatrix& f, const PolyMatrix& U,
                            const PolyMatrix& uinv);

/// I + s E_ij (0-based indices, i != j).
PolyMatrix elementary_matrix(const Algebra& algebra, std::size_t r, std::size_t i, std::size_t j, const SkewPoly& s);

struct InvertiblePair {
  PolyMatrix u;
  PolyMatrix uinv;
};

/// Product of `factors` random elementary matrices and its inverse, the
/// product of the inverse factors in reverse order.
InvertiblePair random_invertible(const Algebra& algebra, std::size_t r, std::size_t factors, int degree_bound,
                                 std::uint64_t seed);

/// "rows cols" on the first line, then one entry per line in row-major
/// order. Blank lines and '#' comments are ignored.
PolyMatrix parse_matrix(const Algebra& algebra, std::string_view text);
/// Comma-separated entries ("t, x+1").
std::vector<SkewPoly> parse_entries(const Algebra& algebra, std::string_view text);
std::string format_matrix(const Algebra& algebra, const PolyMatrix& m);

}  // namespace skewpbw
