#include <doctest.h>

#include "skewpbw/catalog.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/matrix.hpp"
#include "skewpbw/pbw.hpp"

using namespace skewpbw;

namespace {

Presentation over_field(std::string_view id, std::int64_t p) {
  CatalogParams params;
  params.field = RingDescriptor::prime_field(p);
  return build(id, params);
}

PolyMatrix row(const Algebra& a, std::string_view text) { return PolyMatrix::row(parse_entries(a, text)); }
PolyMatrix column(const Algebra& a, std::string_view text) { return PolyMatrix::column(parse_entries(a, text)); }

}  // namespace

TEST_CASE("one-sided inverses in the Weyl algebra") {
  Algebra weyl(over_field("weyl", 101));
  CHECK(verify_inverse(weyl, row(weyl, "t, x"), column(weyl, "-x, t"), Side::Right));
  // the commuting guess is off by a sign
  CHECK_FALSE(verify_inverse(weyl, row(weyl, "t, x"), column(weyl, "x, -t"), Side::Right));
  PolyMatrix minus_one = mat_multiply(weyl, row(weyl, "t, x"), column(weyl, "x, -t"));
  CHECK(minus_one(0, 0) == weyl.parse("-1"));

  auto b = find_right_inverse_row(weyl, row(weyl, "t, x"), 1);
  REQUIRE(b);
  CHECK(verify_inverse(weyl, row(weyl, "t, x"), *b, Side::Right));
  CHECK_FALSE(find_right_inverse_row(weyl, row(weyl, "t, x"), 0));

  auto c = find_left_inverse_column(weyl, column(weyl, "x, t"), 1);
  REQUIRE(c);
  CHECK(verify_inverse(weyl, column(weyl, "x, t"), *c, Side::Left));
}

TEST_CASE("unimodular rows over F_5[x]") {
  Algebra poly(over_field("polynomial-ring", 5));
  auto b = find_right_inverse_row(poly, row(poly, "1, 0"), 0);
  REQUIRE(b);
  CHECK(verify_inverse(poly, row(poly, "1, 0"), *b, Side::Right));

  auto w = find_right_inverse_row(poly, row(poly, "x, x + 1"), 0);
  REQUIRE(w);
  CHECK(*w == column(poly, "-1, 1"));
  CHECK_FALSE(find_right_inverse_row(poly, row(poly, "x, x"), 3));
  CHECK_FALSE(find_right_inverse_row(poly, row(poly, "x^2, x^2 + x"), 2));
}

TEST_CASE("stable reduction") {
  Algebra weyl(over_field("weyl", 7));
  PolyMatrix v = column(weyl, "t, x, 1");
  std::vector<SkewPoly> a = parse_entries(weyl, "1 - t, -x");
  PolyMatrix reduced = stable_reduction(weyl, v, a);
  CHECK(reduced == column(weyl, "1, 0"));
  CHECK(stable_reduce_check(weyl, v, a, 0));
  CHECK_FALSE(stable_reduce_check(weyl, column(weyl, "x, x"), parse_entries(weyl, "0"), 2));
  CHECK_THROWS_AS(stable_reduction(weyl, v, parse_entries(weyl, "1")), DimensionMismatch);

  auto found = search_stable_reduction(weyl, v, 1, 1);
  REQUIRE(found);
  PolyMatrix r = stable_reduction(weyl, v, found->a);
  CHECK(verify_inverse(weyl, r, found->witness, Side::Left));
}

TEST_CASE("completion certificates") {
  Algebra weyl(over_field("weyl", 7));
  SkewPoly x = weyl.parse("x");
  PolyMatrix e = elementary_matrix(weyl, 2, 0, 1, x);
  PolyMatrix einv = elementary_matrix(weyl, 2, 0, 1, weyl.neg(x));
  CHECK(mat_multiply(weyl, e, einv) == PolyMatrix::identity(weyl, 2));
  CHECK(mat_multiply(weyl, einv, e) == PolyMatrix::identity(weyl, 2));

  // u = e_1 U^{-1} is completed by U
  PolyMatrix U = mat_multiply(weyl, e, elementary_matrix(weyl, 2, 1, 0, weyl.parse("t")));
  PolyMatrix Uinv = mat_multiply(weyl, elementary_matrix(weyl, 2, 1, 0, weyl.parse("-t")), einv);
  PolyMatrix u(1, 2);
  u(0, 0) = Uinv(0, 0);
  u(0, 1) = Uinv(0, 1);
  CHECK(verify_completion(weyl, u, U, Uinv));
  CHECK_FALSE(verify_completion(weyl, row(weyl, "1, 1"), U, Uinv));
  CHECK_FALSE(verify_completion(weyl, u, U, U));

  PolyMatrix f = row(weyl, "1, x");
  PolyMatrix V = elementary_matrix(weyl, 2, 0, 1, weyl.parse("-x"));
  PolyMatrix Vinv = elementary_matrix(weyl, 2, 0, 1, x);
  CHECK(verify_rect_completion(weyl, f, V, Vinv));
  CHECK_THROWS_AS(elementary_matrix(weyl, 2, 1, 1, x), BadParams);
}

TEST_CASE("random invertible matrices") {
  Algebra weyl(over_field("weyl", 5));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    InvertiblePair pair = random_invertible(weyl, 3, 6, 2, seed);
    CHECK(pair.u.rows() == 3);
    CHECK(verify_inverse(weyl, pair.u, pair.uinv, Side::Right));
    CHECK(verify_inverse(weyl, pair.u, pair.uinv, Side::Left));
  }
  InvertiblePair again = random_invertible(weyl, 3, 6, 2, 1);
  CHECK(again.u == random_invertible(weyl, 3, 6, 2, 1).u);
}

TEST_CASE("matrix parsing and errors") {
  Algebra weyl(over_field("weyl", 7));
  PolyMatrix m = parse_matrix(weyl, "2 2\n# identity\n1\n0\n\n0\n1\n");
  CHECK(m == PolyMatrix::identity(weyl, 2));
  CHECK_THROWS_AS(parse_matrix(weyl, "2 2\n1\n0\n"), ParseError);
  CHECK_THROWS_AS(PolyMatrix(0, 2), DimensionMismatch);
  CHECK_THROWS_AS(mat_multiply(weyl, row(weyl, "1, 2"), row(weyl, "1, 2")), DimensionMismatch);
  CHECK_THROWS_AS(find_right_inverse_row(weyl, column(weyl, "1, 2"), 1), DimensionMismatch);

  Algebra over_poly(parse_presentation("ring poly Fp 5 t\nvars x\n"));
  CHECK_THROWS_AS(find_right_inverse_row(over_poly, row(over_poly, "x, 1"), 1), UnsupportedCoefficientRing);
}
