#include <doctest.h>

#include <random>

#include "skewpbw/errors.hpp"
#include "skewpbw/fp_poly.hpp"

using namespace skewpbw;

namespace {

FpPoly P(std::string_view text, std::int64_t p = 5) { return FpPoly::parse(p, text); }

// brute force: no monic divisor of degree 1..deg/2
bool irreducible(const FpPoly& f) {
  std::int64_t p = f.prime();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t start = 1, count = 1;
    for (int i = 0; i < d; ++i) start *= static_cast<std::uint64_t>(p);
    count = start;
    for (std::uint64_t idx = start; idx < start + count; ++idx) {
      if ((f % FpPoly::from_index(p, idx)).is_zero()) return false;
    }
  }
  return f.degree() >= 1;
}

}  // namespace

TEST_CASE("arithmetic and printing") {
  CHECK((P("t + 1") * P("t - 1")).to_string() == "t^2 + 4");
  CHECK(P("3*t^2 + 2*t").to_string() == "3*t^2 + 2*t");
  CHECK((P("t") - P("t")).is_zero());
  CHECK(P("0").degree() == -1);
  auto [q, r] = P("t^3 + 1").divmod(P("t + 2"));
  CHECK(q * P("t + 2") + r == P("t^3 + 1"));
  CHECK(r.degree() < 1);
  CHECK(P("2*t + 4").monic() == P("t + 2"));
  CHECK(mod_inverse(3, 7) == 5);
  CHECK_THROWS(P("t").divmod(P("0")));
  CHECK_THROWS_AS(FpPoly::parse(5, "t +"), ParseError);
}

TEST_CASE("index encoding") {
  CHECK(FpPoly::from_index(5, 0).is_zero());
  CHECK(FpPoly::from_index(5, 7) == P("t + 2"));
  for (std::uint64_t i = 0; i < 500; ++i) CHECK(FpPoly::from_index(3, i).index() == i);
}

TEST_CASE("gcd and powers") {
  CHECK(gcd(P("t^2 - 1"), P("t^2 + 2*t + 1")) == P("t + 1"));
  CHECK(gcd(P("0"), P("0")).is_zero());
  CHECK(gcd(P("0"), P("3*t")) == P("t"));
  CHECK(gcd({P("t^2"), P("t^3 + t^2"), P("2*t")}, 5) == P("t"));
  CHECK(gcd({P("t"), P("t + 1")}, 5).is_one());
  CHECK(pow_mod(P("t"), 5, P("t^2 + 2")) == P("t^5") % P("t^2 + 2"));
  CHECK(pow_mod(P("t + 1"), 0, P("t^3")).is_one());
}

TEST_CASE("factorization recombines into irreducible pieces") {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {2, 3, 5}) {
    for (int s = 0; s < 150; ++s) {
      std::vector<std::int64_t> c(1 + rng() % 7);
      for (auto& v : c) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      FpPoly f(p, c);
      if (f.is_zero()) continue;
      FpPoly product = FpPoly::constant(p, 1);
      for (const auto& [g, e] : factorize(f)) {
        CHECK(irreducible(g));
        CHECK(g == g.monic());
        for (int i = 0; i < e; ++i) product = product * g;
      }
      CHECK(product == f.monic());
    }
  }
  auto fs = factorize(P("t^4 + 4"));  // t^4 - 1 over F_5 splits completely
  CHECK(fs.size() == 4);
}
