#include <doctest.h>

#include "skewpbw/catalog.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/pbw.hpp"

using namespace skewpbw;

namespace {

BoundQuery query(std::optional<int> n, std::optional<int> dim_r = std::nullopt) {
  BoundQuery q;
  q.n = n;
  q.dim_r = dim_r;
  return q;
}

}  // namespace

TEST_CASE("bound table values") {
  CHECK(stable_rank_bound("weyl", query(2)).bound == 5);
  CHECK(stable_rank_bound("manin").bound == 5);
  CHECK(stable_rank_bound("q-heisenberg", query(3)).bound == 10);
  CHECK(stable_rank_bound("vq-sl3").bound == 11);
  CHECK(stable_rank_bound("weyl").bound == 3);  // n defaults to 1
  CHECK(stable_rank_bound("polynomial-ring", query(3, 0)).bound == 4);
  CHECK(stable_rank_bound("polynomial-ring", query(3, 0)).formula == "dim(R)+n+1");

  CHECK(d_hermite_bound("polynomial-ring", query(3, 0)) == 4);
  CHECK(d_hermite_bound("weyl", query(1)) == 3);
  CHECK(d_hermite_bound("extended-weyl", query(2)) == 3);

  BoundQuery qm;
  qm.n = 2;
  qm.m = 3;
  CHECK(stable_rank_bound("q-dilation-poly", qm).bound == 6);
}

TEST_CASE("every bound row evaluates") {
  for (const auto& row : bound_rows()) {
    BoundQuery q;
    q.n = 2;
    q.m = 2;
    q.dim_r = 1;
    BoundReport r = stable_rank_bound(row.id, q);
    const auto& f = row.formula;
    CHECK(r.bound == f.dim + 2 * f.n + 2 * f.m + f.constant);
    CHECK(r.d_hermite == r.bound);
    CHECK(r.bound >= 1);
  }
}

TEST_CASE("bound errors") {
  CHECK_THROWS_AS(stable_rank_bound("polynomial-ring", query(3)), MissingDimR);
  CHECK_THROWS_AS(stable_rank_bound("ore-bijective"), MissingDimR);
  CHECK_THROWS_AS(stable_rank_bound("no-such-algebra"), UnknownAlgebra);
  CHECK_THROWS_AS(stable_rank_bound("weyl", query(0)), BadParams);
}

TEST_CASE("building catalog entries") {
  CatalogParams p;
  p.n = 1;
  p.q = 2;
  p.field = RingDescriptor::prime_field(5);
  Presentation h = build("q-heisenberg", p);
  CHECK(h.variables.size() == 3);
  Algebra a(h);
  CHECK(validate_presentation(h, {50, 1}).passed());

  CatalogParams w;
  w.n = 2;
  Presentation weyl2 = build("weyl", w);
  CHECK(weyl2.variables.size() == 4);

  CatalogParams bad;
  bad.q = 0;
  CHECK_THROWS_AS(build("quantum-plane", bad), BadParams);
  CHECK_THROWS_AS(build("sl-q-2"), UnknownAlgebra);
  CHECK_THROWS_AS(build("nothing"), UnknownAlgebra);
  CHECK_THROWS_AS(catalog_entry("nothing"), UnknownAlgebra);
}

TEST_CASE("serialization round trips") {
  for (const auto& entry : catalog_entries()) {
    for (std::int64_t p : {0, 5}) {
      CatalogParams params;
      if (p > 0) params.field = RingDescriptor::prime_field(p);
      Presentation original;
      try {
        original = build(entry.id, params);
      } catch (const BadParams&) {
        continue;  // some parameter defaults degenerate mod 5
      }
      std::string text = serialize_presentation(original);
      Presentation back = parse_presentation(text);
      CHECK_MESSAGE(back == original, entry.id << "\n" << text);
      CHECK(serialize_presentation(back) == text);
    }
  }
}

TEST_CASE("parsing a presentation file") {
  Presentation p = parse_presentation(
      "# first Weyl algebra\n"
      "name w1\n"
      "ring Fp 7\n"
      "vars t x\n"
      "rel x t = t x + 1\n"
      "bijective true\n");
  Algebra a(p);
  CHECK(a.to_string(a.parse("x*t")) == "t*x + 1");
  CHECK(p.name == "w1");
}

TEST_CASE("semantic errors in presentation files") {
  CHECK_THROWS_AS(parse_presentation("ring Q\nvars x1 x2\nrel x2 x1 = 0 * x1 x2 + 1\n"), SemanticError);
  CHECK_THROWS_AS(parse_presentation("ring Q\nvars x1 x2\nrel x2 x1 = x1 x2 + x1 x1\n"), SemanticError);
  CHECK_THROWS_AS(parse_presentation("ring Q\nvars x1 x2\nrel x1 x2 = x1 x2\n"), SemanticError);
  CHECK_THROWS_AS(parse_presentation("ring Q\nvars x1 x2\nrel x2 x1 = x1 x2 + x3\n"), SemanticError);
}

TEST_CASE("syntax errors report their position") {
  try {
    parse_presentation("ring Q\nvars x y\nfrobnicate\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
  }
  CHECK_THROWS_AS(parse_presentation("vars x y\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("ring R\nvars x\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("ring Q\nring Q\nvars x\n"), ParseError);
}
