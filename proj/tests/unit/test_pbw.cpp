#include <doctest.h>

#include <random>
#include <thread>

#include "skewpbw/catalog.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/pbw.hpp"
#include "skewpbw/rewriter.hpp"

using namespace skewpbw;

namespace {

CatalogParams over(std::int64_t p) {
  CatalogParams params;
  if (p > 0) params.field = RingDescriptor::prime_field(p);
  return params;
}

// Test-only oracle for A_1(Q): t acts on Q[t] by multiplication and x by
// d/dt. Over Q this representation is faithful, so two operators agree iff
// they agree on 1, t, ..., t^k for k at least the x-degree involved.
using QPoly = std::vector<Rational>;

QPoly times_t(const QPoly& f) {
  QPoly g(f.size() + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) g[i + 1] = f[i];
  return g;
}

QPoly derivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly g(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) g[i - 1] = f[i] * static_cast<long>(i);
  return g;
}

QPoly trimmed(QPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

QPoly add(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return trimmed(a);
}

Rational scalar_of(const RingElement& r) {
  if (r.is_zero()) return 0;
  return std::get<Rational>(r.coefficients()[0]);
}

// word is applied right to left: the last letter acts first.
QPoly act_word(const std::string& word, const std::vector<Rational>& coeffs, QPoly f) {
  std::size_t c = coeffs.size();
  for (std::size_t k = word.size(); k-- > 0;) {
    if (word[k] == 't') f = times_t(f);
    if (word[k] == 'x') f = derivative(f);
    if (word[k] == 'c') {
      Rational s = coeffs[--c];
      for (auto& v : f) v *= s;
    }
  }
  return trimmed(f);
}

QPoly act_normal_form(const SkewPoly& nf, const QPoly& f) {
  QPoly out;
  for (const auto& [m, coeff] : nf.terms()) {
    QPoly g = f;
    for (std::uint32_t j = 0; j < m[1]; ++j) g = derivative(g);
    for (std::uint32_t i = 0; i < m[0]; ++i) g = times_t(g);
    Rational s = scalar_of(coeff);
    for (auto& v : g) v *= s;
    out = add(out, g);
  }
  return trimmed(out);
}

}  // namespace

TEST_CASE("normal forms from single relations") {
  Algebra weyl7(build("weyl", over(7)));
  CHECK(weyl7.to_string(weyl7.parse("x*t")) == "t*x + 1");

  CatalogParams qp = over(7);
  qp.q = 3;
  Algebra plane(build("quantum-plane", qp));
  CHECK(plane.to_string(plane.parse("y*x")) == "3*x*y");

  Algebra weyl_q(build("weyl", over(0)));
  CHECK(weyl_q.to_string(weyl_q.parse("x^2*t")) == "t*x^2 + 2*x");
  CHECK(weyl_q.to_string(weyl_q.parse("x*x*t - 3*t")) == "t*x^2 - 3*t + 2*x");
}

TEST_CASE("products against the frozen value") {
  Algebra weyl7(build("weyl", over(7)));
  SkewPoly f = weyl7.parse("t + x"), g = weyl7.parse("t - x");
  CHECK(weyl7.to_string(weyl7.multiply(f, g)) == "t^2 + 6*x^2 + 1");
  CHECK(weyl7.add(f, weyl7.neg(f)).is_zero());
  CHECK(weyl7.multiply(f, weyl7.one()) == f);
  CHECK(weyl7.multiply(weyl7.one(), f) == f);
}

TEST_CASE("degree") {
  Algebra weyl7(build("weyl", over(7)));
  CHECK(degree(weyl7.parse("x*t")) == 2);
  CHECK(degree(weyl7.zero()) == kDegreeOfZero);
  CHECK(degree(weyl7.parse("5")) == 0);
}

TEST_CASE("Weyl normal forms agree with the differential operator model") {
  Algebra weyl(build("weyl", over(0)));
  std::mt19937 gen(4242);
  for (int s = 0; s < 300; ++s) {
    std::size_t len = 1 + gen() % 8;
    std::string letters;
    std::vector<Rational> coeffs;
    std::vector<WordToken> word;
    for (std::size_t k = 0; k < len; ++k) {
      unsigned pick = gen() % 5;
      if (pick == 0) {
        Rational c(static_cast<long>(gen() % 7) - 3, 1 + static_cast<long>(gen() % 3));
        c.canonicalize();
        if (c == 0) c = 1;
        letters += 'c';
        coeffs.push_back(c);
        word.push_back(WordToken{false, 0, weyl.ring().from_rational(c)});
      } else {
        bool is_t = pick <= 2;
        letters += is_t ? 't' : 'x';
        word.push_back(WordToken{true, is_t ? 0U : 1U, {}});
      }
    }
    SkewPoly nf = normalize_word(weyl, word);
    for (int k = 0; k <= 10; ++k) {
      QPoly f(static_cast<std::size_t>(k) + 1, 0);
      f.back() = 1;
      CHECK(act_normal_form(nf, f) == act_word(letters, coeffs, f));
    }
  }
}

TEST_CASE("quantum plane normal forms agree with the closed form") {
  // Appending x to c x^a y^b gives c q^b x^{a+1} y^b.
  CatalogParams qp = over(7);
  qp.q = 3;
  Algebra plane(build("quantum-plane", qp));
  const Ring& k = plane.ring();
  std::mt19937 gen(99);
  for (int s = 0; s < 500; ++s) {
    std::size_t len = 1 + gen() % 8;
    std::vector<WordToken> word;
    RingElement c = k.one();
    std::uint32_t a = 0, b = 0;
    for (std::size_t i = 0; i < len; ++i) {
      unsigned pick = gen() % 4;
      if (pick == 0) {
        RingElement r = k.from_integer(1 + static_cast<long>(gen() % 6));
        word.push_back(WordToken{false, 0, r});
        c = k.mul(c, r);
      } else if (pick == 1) {
        word.push_back(WordToken{true, 0, {}});
        c = k.mul(c, k.pow(k.from_integer(3), b));
        ++a;
      } else {
        word.push_back(WordToken{true, 1, {}});
        ++b;
      }
    }
    SkewPoly expected = plane.term(c, Monomial(std::vector<std::uint32_t>{a, b}));
    CHECK(normalize_word(plane, word) == expected);
  }
}

TEST_CASE("the reference rewriter matches the engine") {
  for (const char* id : {"weyl", "quantum-plane", "u-sl2", "q-heisenberg", "manin", "weyl-ore", "woronowicz"}) {
    Presentation p = build(id, over(7));
    Algebra algebra(p);
    Rng rng(5);
    for (int s = 0; s < 100; ++s) {
      auto word = random_word(algebra, rng, 6);
      CHECK_MESSAGE(normalize_word(algebra, word) == reference_normalize(p, word), id << ": "
                                                                                      << format_word(algebra, word));
    }
  }
}

TEST_CASE("coefficients move left through sigma and delta") {
  Algebra ore(build("weyl-ore", over(0)));
  CHECK(ore.to_string(ore.parse("x*t")) == "t*x + 1");
  CatalogParams sp = over(0);
  sp.h = 2;
  Algebra shift(build("shift-operators", sp));
  CHECK(shift.to_string(shift.parse("x*t")) == "(t - 2)*x");
  CatalogParams dp = over(0);
  dp.q = 3;
  Algebra dil(build("q-dilation", dp));
  CHECK(dil.to_string(dil.parse("H*t^2")) == "9*t^2*H");
}

TEST_CASE("normalization is idempotent and left linear") {
  for (const char* id : {"weyl", "u-sl2", "manin", "dispin"}) {
    Algebra algebra(build(id, over(7)));
    Rng rng(31);
    for (int s = 0; s < 200; ++s) {
      SkewPoly f = algebra.random(rng, 2), g = algebra.random(rng, 2);
      CHECK(algebra.parse(algebra.to_string(f)) == f);
      RingElement r = algebra.ring().random(rng, 1);
      CHECK(algebra.multiply(algebra.scale(r, f), g) == algebra.scale(r, algebra.multiply(f, g)));
    }
  }
}

TEST_CASE("degree is additive over domains with bijective data") {
  for (const char* id : {"weyl", "quantum-plane", "u-sl2", "q-heisenberg", "shift-operators"}) {
    Algebra algebra(build(id, over(7)));
    Rng rng(17);
    for (int s = 0; s < 200; ++s) {
      SkewPoly f = algebra.random(rng, 2), g = algebra.random(rng, 2);
      if (f.is_zero() || g.is_zero()) continue;
      CHECK(degree(algebra.multiply(f, g)) == degree(f) + degree(g));
    }
  }
}

TEST_CASE("associated graded") {
  Presentation weyl = build("weyl", over(7));
  CHECK_FALSE(is_quasi_commutative(weyl));
  Presentation gr = associated_graded(weyl);
  CHECK(is_quasi_commutative(gr));
  Algebra g(gr);
  CHECK(g.multiply(g.parse("x"), g.parse("t")) == g.parse("t*x"));

  CatalogParams qp = over(7);
  qp.q = 3;
  Presentation plane = build("quantum-plane", qp);
  CHECK(is_quasi_commutative(plane));
  CHECK(associated_graded(plane) == plane);
  CHECK(is_quasi_commutative(build("polynomial-ring", over(5))));

  Presentation sl2 = associated_graded(build("u-sl2", over(0)));
  CHECK(is_quasi_commutative(sl2));
  Algebra a(sl2);
  CHECK(a.to_string(a.parse("y*x")) == "x*y");
  CHECK(a.to_string(a.parse("z*y")) == "y*z");
  for (const auto& entry : catalog_entries()) {
    Presentation once = associated_graded(build(entry.id, over(7)));
    CHECK(associated_graded(once) == once);
    CHECK(is_quasi_commutative(once));
  }
}

TEST_CASE("validation passes on the catalog") {
  for (const auto& entry : catalog_entries()) {
    for (std::int64_t p : {0, 7}) {
      ValidationReport r = validate_presentation(build(entry.id, over(p)), {100, 3});
      CHECK_MESSAGE(r.passed(), entry.id << " over " << (p == 0 ? "Q" : "F_7"));
    }
  }
}

TEST_CASE("a perturbed lower term breaks associativity on generators") {
  Presentation p = build("u-sl2", over(0));
  Ring q(p.ring);
  REQUIRE(p.lower[1][2].linear.size() == 3);
  p.lower[1][2].linear[1] = q.from_integer(-3);  // z y = y z - 3 y
  ValidationReport r = validate_presentation(p, {50, 1});
  CHECK_FALSE(r.passed());
  bool flagged = false;
  for (const auto& c : r.checks) {
    if (c.name == "associativity on generator triples") {
      flagged = !c.passed;
      CHECK(c.detail.find(" but ") != std::string::npos);
      CHECK(c.detail.find("z*y*x") != std::string::npos);
    }
  }
  CHECK(flagged);
}

TEST_CASE("zero divisor probe") {
  Algebra weyl(build("weyl", over(7)));
  ZeroDivisorReport r = zero_divisor_probe(weyl, 200, 3);
  CHECK(r.passed());
  CHECK(r.trials == 200);
  CHECK(r.degree_drops == 0);
  CatalogParams qp = over(5);
  qp.q = 3;
  CHECK(zero_divisor_probe(Algebra(build("quantum-plane", qp)), 200, 3).passed());
  ZeroDivisorReport none = zero_divisor_probe(weyl, 0, 3);
  CHECK(none.passed());
  CHECK(none.trials == 0);
}

TEST_CASE("structural errors") {
  Presentation p = build("quantum-plane", over(7));
  p.c[0][1] = RingElement{};
  CHECK_THROWS_AS(check_structure(p), SemanticError);
  Presentation dup = build("polynomial-ring", over(7));
  dup.variables = {"x"};
  dup.variables.push_back("x");
  CHECK_THROWS(check_structure(dup));
  Algebra weyl(build("weyl", over(7)));
  CHECK_THROWS_AS(weyl.parse("x*s"), ParseError);
  CHECK_THROWS_AS(weyl.parse("x*("), ParseError);
}

TEST_CASE("concurrent products match sequential ones") {
  Algebra algebra(build("u-sl2", over(7)));
  Rng rng(3);
  std::vector<std::pair<SkewPoly, SkewPoly>> pairs;
  for (int s = 0; s < 64; ++s) pairs.emplace_back(algebra.random(rng, 3), algebra.random(rng, 3));
  std::vector<SkewPoly> parallel(pairs.size());
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < pairs.size(); i += 4) parallel[i] = algebra.multiply(pairs[i].first, pairs[i].second);
    });
  }
  for (auto& t : workers) t.join();
  Algebra fresh(build("u-sl2", over(7)));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(parallel[i] == fresh.multiply(pairs[i].first, pairs[i].second));
  }
}
