#include "skewpbw/matrix.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "skewpbw/errors.hpp"

namespace skewpbw {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrices need at least one row and one column");
}

PolyMatrix PolyMatrix::identity(const Algebra& algebra, std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = algebra.one();
  return m;
}

PolyMatrix PolyMatrix::row(std::vector<SkewPoly> entries) {
  PolyMatrix m(1, entries.size());
  for (std::size_t j = 0; j < entries.size(); ++j) m(0, j) = std::move(entries[j]);
  return m;
}

PolyMatrix PolyMatrix::column(std::vector<SkewPoly> entries) {
  PolyMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = std::move(entries[i]);
  return m;
}

PolyMatrix mat_multiply(const Algebra& algebra, const PolyMatrix& f, const PolyMatrix& g) {
  if (f.cols() != g.rows()) {
    throw DimensionMismatch("cannot multiply " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                            " by " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
  }
  PolyMatrix out(f.rows(), g.cols());
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t k = 0; k < g.cols(); ++k) {
      SkewPoly acc;
      for (std::size_t j = 0; j < f.cols(); ++j) acc = algebra.add(acc, algebra.multiply(f(i, j), g(j, k)));
      out(i, k) = std::move(acc);
    }
  }
  return out;
}

namespace {

bool is_identity(const Algebra& algebra, const PolyMatrix& m) {
  return m.rows() == m.cols() && m == PolyMatrix::identity(algebra, m.rows());
}

}  // namespace

bool verify_inverse(const Algebra& algebra, const PolyMatrix& f, const PolyMatrix& g, Side side) {
  PolyMatrix prod = side == Side::Right ? mat_multiply(algebra, f, g) : mat_multiply(algebra, g, f);
  return is_identity(algebra, prod);
}

// ------------------------------------------------------------ linear solve

namespace {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Solves A y = b over the base field by Gauss-Jordan elimination; free
// unknowns are set to zero, so the answer is deterministic.
std::optional<std::vector<Scalar>> solve(const BaseRing& k, ScalarMatrix a, std::vector<Scalar> b,
                                         std::size_t unknowns) {
  std::size_t rows = a.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && k.is_zero(a[pivot][c])) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    std::swap(b[pivot], b[r]);
    Scalar inv = *k.inverse(a[r][c]);
    for (std::size_t j = c; j < unknowns; ++j) a[r][j] = k.mul(inv, a[r][j]);
    b[r] = k.mul(inv, b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || k.is_zero(a[i][c])) continue;
      Scalar factor = a[i][c];
      for (std::size_t j = c; j < unknowns; ++j) a[i][j] = k.sub(a[i][j], k.mul(factor, a[r][j]));
      b[i] = k.sub(b[i], k.mul(factor, b[r]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!k.is_zero(b[i])) return std::nullopt;
  }
  std::vector<Scalar> y(unknowns, k.zero());
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) y[pivot_cols[i]] = b[i];
  return y;
}

Scalar scalar_of(const Ring& ring, const RingElement& c) {
  return c.is_zero() ? ring.base().zero() : c.coefficients()[0];
}

// Finds b with sum u_i b_i = 1 (right) or sum b_i u_i = 1 (left).
std::optional<std::vector<SkewPoly>> solve_combination(const Algebra& algebra, const std::vector<SkewPoly>& u,
                                                       int bound, Side side) {
  const Ring& ring = algebra.ring();
  if (!ring.is_field()) {
    throw UnsupportedCoefficientRing(std::string("witness search needs a field as coefficient ring, got ") +
                                     (ring.is_polynomial() ? "a polynomial ring" : "a non-field"));
  }
  if (bound < 0) throw BadParams("degree bound must be non-negative");
  const BaseRing& k = ring.base();
  std::vector<Monomial> basis = algebra.monomials_up_to(bound);

  // Column per unknown (i, gamma): the normal form of u_i x^gamma or x^gamma u_i.
  std::vector<SkewPoly> columns;
  std::map<Monomial, std::size_t> row_of;
  row_of.emplace(Monomial(algebra.num_vars()), 0);
  for (const auto& ui : u) {
    for (const auto& gamma : basis) {
      SkewPoly xg = algebra.term(ring.one(), gamma);
      SkewPoly col = side == Side::Right ? algebra.multiply(ui, xg) : algebra.multiply(xg, ui);
      for (const auto& [m, c] : col.terms()) row_of.try_emplace(m, 0);
      columns.push_back(std::move(col));
    }
  }
  std::size_t index = 0;
  for (auto& [m, row] : row_of) row = index++;

  ScalarMatrix a(row_of.size(), std::vector<Scalar>(columns.size(), k.zero()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& [m, c] : columns[j].terms()) a[row_of.at(m)][j] = scalar_of(ring, c);
  }
  std::vector<Scalar> rhs(row_of.size(), k.zero());
  rhs[row_of.at(Monomial(algebra.num_vars()))] = k.one();

  auto y = solve(k, std::move(a), std::move(rhs), columns.size());
  if (!y) return std::nullopt;
  std::vector<SkewPoly> b(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t g = 0; g < basis.size(); ++g) {
      b[i].accumulate(basis[g], ring.from_scalar((*y)[i * basis.size() + g]), ring);
    }
  }
  return b;
}

}  // namespace

std::optional<PolyMatrix> find_right_inverse_row(const Algebra& algebra, const PolyMatrix& u, int bound) {
  if (u.rows() != 1) throw DimensionMismatch("expected a row");
  std::vector<SkewPoly> entries;
  for (std::size_t j = 0; j < u.cols(); ++j) entries.push_back(u(0, j));
  auto b = solve_combination(algebra, entries, bound, Side::Right);
  if (!b) return std::nullopt;
  return PolyMatrix::column(std::move(*b));
}

std::optional<PolyMatrix> find_left_inverse_column(const Algebra& algebra, const PolyMatrix& v, int bound) {
  if (v.cols() != 1) throw DimensionMismatch("expected a column");
  std::vector<SkewPoly> entries;
  for (std::size_t i = 0; i < v.rows(); ++i) entries.push_back(v(i, 0));
  auto b = solve_combination(algebra, entries, bound, Side::Left);
  if (!b) return std::nullopt;
  return PolyMatrix::row(std::move(*b));
}

// -------------------------------------------------------- stable reduction

PolyMatrix stable_reduction(const Algebra& algebra, const PolyMatrix& v, const std::vector<SkewPoly>& a) {
  if (v.cols() != 1 || v.rows() < 2) throw DimensionMismatch("expected a column of length at least 2");
  std::size_t r = v.rows();
  if (a.size() != r - 1) throw DimensionMismatch("expected " + std::to_string(r - 1) + " multipliers");
  PolyMatrix out(r - 1, 1);
  for (std::size_t i = 0; i + 1 < r; ++i) out(i, 0) = algebra.add(v(i, 0), algebra.multiply(a[i], v(r - 1, 0)));
  return out;
}

bool stable_reduce_check(const Algebra& algebra, const PolyMatrix& v, const std::vector<SkewPoly>& a, int bound) {
  return find_left_inverse_column(algebra, stable_reduction(algebra, v, a), bound).has_value();
}

std::optional<StableReduction> search_stable_reduction(const Algebra& algebra, const PolyMatrix& v,
                                                       int a_degree_bound, int witness_degree_bound) {
  if (v.cols() != 1 || v.rows() < 2) throw DimensionMismatch("expected a column of length at least 2");
  const Ring& ring = algebra.ring();
  if (!ring.is_field()) throw UnsupportedCoefficientRing("stable reduction search needs a field as coefficient ring");
  std::vector<RingElement> pool;
  if (ring.is_finite()) {
    pool = ring.enumerate();
  } else {
    pool = {ring.zero(), ring.one(), ring.neg(ring.one())};
  }
  const std::size_t slots = v.rows() - 1;
  constexpr double kMaxCandidates = 5e6;

  for (int level = 0; level <= a_degree_bound; ++level) {
    std::vector<Monomial> monos = algebra.monomials_up_to(level);
    std::size_t digits = monos.size() * slots;
    if (static_cast<double>(digits) * std::log(static_cast<double>(pool.size())) > std::log(kMaxCandidates)) {
      throw BadParams("stable reduction search space at degree " + std::to_string(level) + " is too large");
    }
    // Digit d of slot s is the coefficient of monos[d]; slot 0 is the most
    // significant, and within a slot the constant term varies fastest.
    std::vector<std::size_t> counter(digits, 0);
    for (;;) {
      std::vector<SkewPoly> a(slots);
      bool reaches_level = level == 0;
      for (std::size_t s = 0; s < slots; ++s) {
        for (std::size_t d = 0; d < monos.size(); ++d) {
          std::size_t digit = counter[s * monos.size() + d];
          if (digit == 0) continue;
          a[s].accumulate(monos[d], pool[digit], ring);
          if (monos[d].degree() == level) reaches_level = true;
        }
      }
      if (reaches_level) {
        PolyMatrix reduced = stable_reduction(algebra, v, a);
        if (auto w = find_left_inverse_column(algebra, reduced, witness_degree_bound)) {
          return StableReduction{std::move(a), std::move(*w)};
        }
      }
      // Odometer: the last slot's highest digit is least significant in the
      // tuple order, so advance slots from the back, digits from the front.
      bool done = true;
      for (std::size_t s = slots; s-- > 0 && done;) {
        for (std::size_t d = 0; d < monos.size(); ++d) {
          std::size_t pos = s * monos.size() + d;
          if (++counter[pos] < pool.size()) {
            done = false;
            break;
          }
          counter[pos] = 0;
        }
      }
      if (done) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- completion

namespace {

bool two_sided_inverse(const Algebra& algebra, const PolyMatrix& U, const PolyMatrix& uinv) {
  if (U.rows() != U.cols() || uinv.rows() != U.rows() || uinv.cols() != U.cols()) {
    throw DimensionMismatch("U and Uinv must be square of the same size");
  }
  return verify_inverse(algebra, U, uinv, Side::Right) && verify_inverse(algebra, U, uinv, Side::Left);
}

}  // namespace

bool verify_completion(const Algebra& algebra, const PolyMatrix& u, const PolyMatrix& U, const PolyMatrix& uinv) {
  if (u.rows() != 1 || u.cols() != U.rows()) throw DimensionMismatch("u must be a row of length rows(U)");
  return verify_rect_completion(algebra, u, U, uinv);
}

bool verify_rect_completion(const Algebra& algebra, const PolyMatrix& f, const PolyMatrix& U,
                            const PolyMatrix& uinv) {
  if (f.cols() != U.rows() || f.rows() > f.cols()) throw DimensionMismatch("F must be s x r with s <= r = rows(U)");
  if (!two_sided_inverse(algebra, U, uinv)) return false;
  PolyMatrix fu = mat_multiply(algebra, f, U);
  PolyMatrix target(f.rows(), f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i) target(i, i) = algebra.one();
  return fu == target;
}

PolyMatrix elementary_matrix(const Algebra& algebra, std::size_t r, std::size_t i, std::size_t j,
                             const SkewPoly& s) {
  if (i == j) throw BadParams("elementary matrices need i != j");
  if (i >= r || j >= r) throw DimensionMismatch("index outside the matrix");
  PolyMatrix m = PolyMatrix::identity(algebra, r);
  m(i, j) = s;
  return m;
}

InvertiblePair random_invertible(const Algebra& algebra, std::size_t r, std::size_t factors, int degree_bound,
                                 std::uint64_t seed) {
  if (r < 2) throw BadParams("random invertible matrices need r >= 2");
  Rng rng(seed);
  PolyMatrix u = PolyMatrix::identity(algebra, r);
  PolyMatrix uinv = u;
  for (std::size_t f = 0; f < factors; ++f) {
    std::size_t i = draw_below(rng, r);
    std::size_t j = draw_below(rng, r - 1);
    if (j >= i) ++j;
    SkewPoly s = algebra.random(rng, degree_bound, 0.6);
    u = mat_multiply(algebra, u, elementary_matrix(algebra, r, i, j, s));
    uinv = mat_multiply(algebra, elementary_matrix(algebra, r, i, j, algebra.neg(s)), uinv);
  }
  return {std::move(u), std::move(uinv)};
}

// ----------------------------------------------------------------------- I/O

PolyMatrix parse_matrix(const Algebra& algebra, std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::istringstream in{std::string(text)};
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(number, line);
  }
  if (lines.empty()) throw ParseError("empty matrix file", 0, 1);
  std::istringstream header(lines[0].second);
  long long rows = 0, cols = 0;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0) {
    throw ParseError("first line must be 'rows cols' with positive integers", lines[0].first, 1);
  }
  auto count = static_cast<std::size_t>(rows * cols);
  if (lines.size() - 1 != count) {
    throw ParseError("expected " + std::to_string(count) + " entries, found " + std::to_string(lines.size() - 1),
                     lines.back().first, 1);
  }
  PolyMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t k = 0; k < count; ++k) {
    m(k / m.cols(), k % m.cols()) = algebra.parse(lines[k + 1].second, lines[k + 1].first);
  }
  return m;
}

std::vector<SkewPoly> parse_entries(const Algebra& algebra, std::string_view text) {
  std::vector<SkewPoly> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(algebra.parse(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string format_matrix(const Algebra& algebra, const PolyMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += algebra.to_string(m(i, j));
    }
    out += "]\n";
  }
  return out;
}

}  // namespace skewpbw
