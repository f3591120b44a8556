#include <doctest.h>

#include <set>

#include "skewpbw/coeff_ring.hpp"
#include "skewpbw/errors.hpp"

using namespace skewpbw;

namespace {

RingElement num(const Ring& r, long v) { return r.from_integer(Integer(v)); }

}  // namespace

TEST_CASE("residue arithmetic") {
  Ring z12(RingDescriptor::residue(12));
  CHECK(z12.add(num(z12, 5), num(z12, 9)) == num(z12, 2));
  CHECK(z12.inv(num(z12, 5)) == num(z12, 5));
  CHECK_THROWS_AS(z12.inv(num(z12, 4)), NotAUnit);
  CHECK_FALSE(z12.is_unit(num(z12, 6)));
  CHECK(arith(ArithOp::Add, num(z12, 5), num(z12, 9), z12) == num(z12, 2));
  CHECK_THROWS_AS(arith(ArithOp::Inv, num(z12, 4), std::nullopt, z12), NotAUnit);
}

TEST_CASE("unit witnesses") {
  Ring f11(RingDescriptor::prime_field(11));
  auto w = f11.unit_inverse(num(f11, 7));
  REQUIRE(w);
  CHECK(*w == num(f11, 8));
  Ring f5t(RingDescriptor::univariate(5, "t"));
  CHECK_FALSE(f5t.is_unit(f5t.generator()));
  CHECK(f5t.is_unit(num(f5t, 3)));
}

TEST_CASE("rationals stay exact") {
  Ring q(RingDescriptor::rationals());
  RingElement half = q.from_rational(Rational(1, 2));
  RingElement third = q.from_rational(Rational(1, 3));
  CHECK(q.add(half, third) == q.from_rational(Rational(5, 6)));
  CHECK(q.mul(q.inv(third), third) == q.one());
  CHECK(q.parse("1/2 + 1/3") == q.from_rational(Rational(5, 6)));
  CHECK_THROWS_AS(q.inv(q.zero()), NotAUnit);
}

TEST_CASE("endomorphisms act through the generator image") {
  Ring qt(RingDescriptor::univariate(0, "t"));
  RingElement t = qt.generator();
  EndoSpec shift{qt.add(t, qt.one()), true};
  CHECK(apply_endo(shift, qt.pow(t, 2), qt) == qt.parse("t^2 + 2*t + 1"));
  EndoSpec id;
  RingElement a = qt.parse("3*t^4 - t + 7");
  CHECK(apply_endo(id, a, qt) == a);

  Ring f5t(RingDescriptor::univariate(5, "t"));
  EndoSpec twice{f5t.parse("2*t"), true};
  CHECK(apply_endo(twice, f5t.parse("3*t^3"), f5t) == f5t.parse("4*t^3"));
}

TEST_CASE("sigma-derivations satisfy the twisted rule") {
  Ring qt(RingDescriptor::univariate(0, "t"));
  DerivationSpec d{qt.one(), EndoSpec{}};
  CHECK(apply_derivation(d, qt.parse("t^3"), qt) == qt.parse("3*t^2"));
  CHECK(apply_derivation(d, qt.parse("5"), qt).is_zero());

  RingElement q = qt.from_integer(3);
  EndoSpec sigma{qt.mul(q, qt.generator()), true};
  DerivationSpec dq{qt.one(), sigma};
  // delta(t^2) = sigma(t) delta(t) + delta(t) t = (q + 1) t
  CHECK(apply_derivation(dq, qt.parse("t^2"), qt) == qt.parse("4*t"));

  Rng rng(7);
  CHECK(check_endo_laws(sigma, qt, 500, rng).passed());
  CHECK(check_derivation_laws(dq, qt, 500, rng).passed());
}

TEST_CASE("enumeration") {
  Ring z4(RingDescriptor::residue(4));
  auto e = z4.enumerate();
  REQUIRE(e.size() == 4);
  for (long i = 0; i < 4; ++i) CHECK(e[static_cast<std::size_t>(i)] == num(z4, i));

  Ring q2(RingDescriptor::quotient_poly(2, {0, 0, 1}));
  auto f = q2.enumerate();
  REQUIRE(f.size() == 4);
  CHECK(q2.to_string(f[0]) == "0");
  CHECK(q2.to_string(f[1]) == "1");
  CHECK(q2.to_string(f[2]) == "x");
  CHECK(q2.to_string(f[3]) == "x + 1");

  CHECK_THROWS_AS(Ring(RingDescriptor::rationals()).enumerate(), InfiniteRing);
  CHECK_THROWS_AS(Ring(RingDescriptor::univariate(3, "t")).size(), InfiniteRing);

  Ring q8(RingDescriptor::quotient_poly(2, {1, 1, 0, 1}));
  auto all = q8.enumerate();
  std::set<std::string> names;
  for (std::size_t i = 0; i < all.size(); ++i) {
    names.insert(q8.to_string(all[i]));
    CHECK(q8.index_of(all[i]) == i);
  }
  CHECK(names.size() == 8);
}

TEST_CASE("canonical forms under random arithmetic") {
  std::vector<RingDescriptor> kinds = {
      RingDescriptor::prime_field(7),      RingDescriptor::rationals(),
      RingDescriptor::residue(12),         RingDescriptor::univariate(5, "t"),
      RingDescriptor::univariate(0, "t"),  RingDescriptor::quotient_poly(3, {1, 0, 1}),
  };
  for (const auto& d : kinds) {
    Ring r(d);
    Rng rng(20170401);
    for (int s = 0; s < 1000; ++s) {
      RingElement a = r.random(rng), b = r.random(rng);
      CHECK(r.add(a, r.neg(a)).is_zero());
      CHECK(r.add(a, b) == r.add(b, a));
      CHECK(r.contains(r.mul(a, b)));
      if (auto w = r.unit_inverse(a)) {
        CHECK(r.mul(a, *w) == r.one());
        CHECK(r.mul(*w, a) == r.one());
      }
    }
  }
}

TEST_CASE("bad descriptors") {
  CHECK_THROWS_AS(Ring(RingDescriptor::prime_field(12)), BadParams);
  CHECK_THROWS_AS(Ring(RingDescriptor::residue(1)), BadParams);
  CHECK_THROWS_AS(Ring(RingDescriptor::quotient_poly(3, {1, 1, 2})), BadParams);
}

TEST_CASE("mixing rings is rejected") {
  Ring f5(RingDescriptor::prime_field(5));
  Ring q(RingDescriptor::rationals());
  CHECK_THROWS_AS(f5.require(q.from_rational(Rational(1, 2))), KindMismatch);
}
