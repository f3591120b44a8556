#include <doctest.h>

#include <numeric>
#include <random>

#include "skewpbw/errors.hpp"
#include "skewpbw/zariski.hpp"

using namespace skewpbw;
using Elem = FiniteCommRing::Elem;

namespace {

std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  return out;
}

// In Z/n the primes are <p> for p | n, so D(X) is generated by the product
// of the primes dividing n and every element of X.
ElementSet zmod_D_oracle(std::uint32_t n, const std::vector<Elem>& xs) {
  std::uint32_t g = 1;
  bool any = false;
  for (std::uint32_t p : prime_divisors(n)) {
    bool all = true;
    for (Elem x : xs) all = all && x % p == 0;
    if (all) {
      g *= p;
      any = true;
    }
  }
  ElementSet out(n);
  for (std::uint32_t v = 0; v < n; ++v) out[v] = !any || v % g == 0;
  return out;
}

ElementSet set_of(const FiniteCommRing& r, std::initializer_list<Elem> xs) {
  ElementSet s = r.empty_set();
  for (Elem x : xs) s.set(x);
  return s;
}

Elem el(const FiniteCommRing& r, std::string_view text) { return r.parse_element(text); }

}  // namespace

TEST_CASE("Z/12 ideals and primes") {
  FiniteCommRing z12 = FiniteCommRing::parse_spec("Zmod:12");
  ZariskiFinite z(z12);
  CHECK(z.ideals().size() == 6);
  CHECK(z.primes().size() == 2);
  CHECK(z.D(std::vector<Elem>{0}) == set_of(z12, {0, 6}));
  CHECK(z.nilradical() == set_of(z12, {0, 6}));
  CHECK(z.D(std::vector<Elem>{4}) == set_of(z12, {0, 2, 4, 6, 8, 10}));
  CHECK(z.D(std::vector<Elem>{2, 3}) == z12.whole());
  CHECK(z12.format(z.D(std::vector<Elem>{0})) == "{0,6}");
  auto m = z.radical_membership(6, {0});
  CHECK(m.member);
  CHECK(m.k == 2);
  CHECK_FALSE(z.radical_membership(3, {4}).member);
}

TEST_CASE("D in Z/n against the divisor oracle") {
  for (std::uint32_t n = 2; n <= 36; ++n) {
    FiniteCommRing r = FiniteCommRing::parse_spec("Zmod:" + std::to_string(n));
    ZariskiFinite z(r);
    std::size_t divisors = 0;
    for (std::uint32_t d = 1; d <= n; ++d) divisors += n % d == 0;
    CHECK(z.ideals().size() == divisors);
    CHECK(z.primes().size() == prime_divisors(n).size());
    for (Elem a = 0; a < n; ++a) {
      CHECK(z.D(std::vector<Elem>{a}) == zmod_D_oracle(n, {a}));
      for (Elem b = a; b < n; ++b) CHECK(z.D(std::vector<Elem>{a, b}) == zmod_D_oracle(n, {a, b}));
    }
  }
}

TEST_CASE("D in F_2[x]/(x^3)") {
  FiniteCommRing r = FiniteCommRing::parse_spec("quot:F2:x^3");
  ZariskiFinite z(r);
  REQUIRE(r.size() == 8);
  REQUIRE(z.primes().size() == 1);
  Elem x = el(r, "x");
  ElementSet maximal = z.principal(x);
  CHECK(maximal.count() == 4);
  // every subset: D is <x> when all constant terms vanish
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    std::vector<Elem> xs;
    bool all_in = true;
    for (Elem e = 0; e < 8; ++e) {
      if (mask >> e & 1U) {
        xs.push_back(e);
        all_in = all_in && maximal.test(e);
      }
    }
    CHECK(z.D(xs) == (all_in ? maximal : r.whole()));
  }
  CHECK(z.nilradical() == maximal);
}

TEST_CASE("product rings") {
  FiniteCommRing r = FiniteCommRing::parse_spec("prod:Zmod:4;Fp:3");
  CHECK(r.size() == 12);
  ZariskiFinite z(r);
  CHECK(z.primes().size() == 2);
  CHECK(z.ideals().size() == 6);
  CHECK(r.is_unit(el(r, "[1,2]")));
  CHECK_FALSE(r.is_unit(el(r, "[2,1]")));
  CHECK(FiniteCommRing::parse_spec("prod:Fp:2\xC3\x97" "Fp:2").size() == 4);
  CHECK_THROWS_AS(FiniteCommRing::parse_spec("Zmod:x"), ParseError);
  CHECK_THROWS_AS(FiniteCommRing::parse_spec("ring"), ParseError);
}

TEST_CASE("broken operation tables are rejected") {
  std::vector<std::vector<Elem>> add = {{0, 1}, {1, 0}};
  std::vector<std::vector<Elem>> mul = {{0, 0}, {0, 1}};
  CHECK_NOTHROW(FiniteCommRing("F2", {"0", "1"}, add, mul));
  std::vector<std::vector<Elem>> bad_mul = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(FiniteCommRing("bad", {"0", "1"}, add, bad_mul), BadParams);
  std::vector<std::vector<Elem>> bad_add = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(FiniteCommRing("bad", {"0", "1"}, bad_add, mul), BadParams);
}

TEST_CASE("lattice laws and boundary condition") {
  for (const char* spec : {"Zmod:4", "Zmod:6", "Zmod:12", "Zmod:30", "quot:F2:x^3", "prod:Zmod:4;Zmod:2"}) {
    FiniteCommRing r = FiniteCommRing::parse_spec(spec);
    ZariskiFinite z(r);
    auto laws = check_lattice_laws(z);
    CHECK(laws.size() == 12);
    for (const auto& law : laws) {
      CHECK_MESSAGE(law.passed(), spec << " law " << law.law << ": " << law.first_violation);
      CHECK(law.checks > 0);
    }
    BoundaryReport b = check_boundary_condition(z);
    CHECK(b.passed());
    CHECK(b.elements == r.size());
  }
}

TEST_CASE("quotient rings") {
  FiniteCommRing z12 = FiniteCommRing::parse_spec("Zmod:12");
  ZariskiFinite z(z12);
  QuotientRing q = quotient_ring(z, z.principal(4));
  CHECK(q.ring.size() == 4);
  CHECK(q.projection[5] == q.projection[1]);
  CHECK(q.projection[8] == 0);
}

TEST_CASE("Kronecker reduction in dimension zero") {
  FiniteCommRing z12 = FiniteCommRing::parse_spec("Zmod:12");
  ZariskiFinite z(z12);
  Dim0Reduction r = kronecker_reduce_dim0(z, 2, 3);
  CHECK(r.constructive_verified);
  CHECK(z.D(std::vector<Elem>{static_cast<Elem>((2 + r.x1 * 3) % 12)}) == z.D(std::vector<Elem>{2, 3}));

  for (std::uint32_t n : {6U, 12U, 18U, 20U}) {
    FiniteCommRing ring = FiniteCommRing::parse_spec("Zmod:" + std::to_string(n));
    ZariskiFinite zn(ring);
    for (Elem u1 = 0; u1 < n; ++u1) {
      for (Elem u = 0; u < n; ++u) {
        Dim0Reduction d = kronecker_reduce_dim0(zn, u1, u);
        CHECK(d.constructive_verified);
        Elem v = ring.add(u1, ring.mul(d.x1, u));
        CHECK(zn.D(std::vector<Elem>{v}) == zn.D(std::vector<Elem>{u1, u}));
      }
    }
  }
}

TEST_CASE("finite Kronecker reduction with two generators") {
  FiniteCommRing z12 = FiniteCommRing::parse_spec("Zmod:12");
  ZariskiFinite z(z12);
  std::vector<Elem> xs = kronecker_reduce_finite(z, {0, 2}, 3);
  REQUIRE(xs.size() == 2);
  ElementSet target = z.D(std::vector<Elem>{0, 2, 3});
  CHECK(z.D(std::vector<Elem>{z12.add(0, z12.mul(xs[0], 3)), z12.add(2, z12.mul(xs[1], 3))}) == target);
}

TEST_CASE("unimodular shrink over finite rings") {
  FiniteCommRing z12 = FiniteCommRing::parse_spec("Zmod:12");
  ZariskiFinite z(z12);
  std::vector<Elem> xs = unimodular_shrink_finite(z, {2, 4, 3});
  REQUIRE(xs.size() == 2);
  CHECK(z.D(std::vector<Elem>{z12.add(2, z12.mul(xs[0], 3)), z12.add(4, z12.mul(xs[1], 3))}) == z12.whole());
  CHECK_THROWS_AS(unimodular_shrink_finite(z, {2, 4, 6}), PreconditionFailed);
}

TEST_CASE("F_p[t] radicals") {
  auto P = [](std::string_view s) { return FpPoly::parse(5, s); };
  CHECK(zariski_D({P("t^2*(t + 1)^3")}, 5).generator == P("t^2 + t"));
  CHECK(zariski_D({P("t^2"), P("t^3 + t^2")}, 5).generator == P("t"));
  CHECK(zariski_D({P("0")}, 5).generator.is_zero());
  CHECK(zariski_D({P("t"), P("t + 1")}, 5).is_unit());
  auto m = radical_membership(P("t^2 + t"), {P("t^3*(t + 1)^2")}, 5);
  CHECK(m.member);
  CHECK(m.k == 3);

  std::mt19937_64 rng(7);
  auto random_poly = [&](int max_deg) {
    std::vector<std::int64_t> c(1 + rng() % static_cast<std::uint64_t>(max_deg + 1));
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % 5);
    return FpPoly(5, c);
  };
  for (int s = 0; s < 1000; ++s) {
    std::vector<FpPoly> gens = {random_poly(4), random_poly(4)};
    // bias toward shared factors so both answers occur
    if (s % 2 == 0) {
      FpPoly f = random_poly(2);
      for (auto& g : gens) g = g * f * f;
    }
    FpPoly a = random_poly(3);
    RadicalClass d = zariski_D(gens, 5);
    bool expected = d.generator.is_zero() ? a.is_zero() : (a % d.generator).is_zero();
    CHECK(radical_membership(a, gens, 5).member == expected);
  }
}

TEST_CASE("F_p[t] Kronecker reduction") {
  auto P = [](std::string_view s) { return FpPoly::parse(5, s); };
  auto r = kronecker_reduce_poly({P("t^2"), P("t^2")}, P("t + 1"), 2);
  REQUIRE(r);
  CHECK(r->xs == std::vector<FpPoly>{P("0"), P("1")});
  CHECK(verify_kronecker_poly({P("t^2"), P("t^2")}, P("t + 1"), r->xs));
  CHECK_FALSE(verify_kronecker_poly({P("t^2"), P("t^2")}, P("t + 1"), {P("0"), P("0")}));

  auto shrink = unimodular_shrink_poly({P("t"), P("t + 1"), P("t^2")}, 2);
  REQUIRE(shrink);
  CHECK(shrink->xs == std::vector<FpPoly>{P("0"), P("0")});
  auto other = unimodular_shrink_poly({P("t^2"), P("t^3"), P("1 + t")}, 3);
  REQUIRE(other);
  CHECK(gcd(P("t^2") + other->xs[0] * P("1 + t"), P("t^3") + other->xs[1] * P("1 + t")).is_one());
  CHECK_THROWS_AS(unimodular_shrink_poly({P("t"), P("t^2"), P("t^3")}, 2), PreconditionFailed);
  CHECK_THROWS_AS(zariski_D({P("t"), FpPoly::parse(3, "t")}, 5), KindMismatch);
}
