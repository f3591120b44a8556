#include "skewpbw/suites.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "skewpbw/catalog.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/fp_poly.hpp"
#include "skewpbw/matrix.hpp"
#include "skewpbw/rewriter.hpp"
#include "skewpbw/zariski.hpp"

#ifndef SKEWPBW_DATA_DIR
#define SKEWPBW_DATA_DIR "tests/data"
#endif

namespace skewpbw {

using json = nlohmann::ordered_json;

namespace {

SuiteCheck start(std::string name, int criterion, std::string suite, double budget) {
  SuiteCheck c;
  c.name = std::move(name);
  c.criterion = criterion;
  c.suite = std::move(suite);
  c.budget_seconds = budget;
  return c;
}

void finish(SuiteCheck& c, std::string summary) {
  c.passed = c.failures == 0;
  c.summary = std::move(summary);
}

CatalogParams over_prime(std::int64_t p) {
  CatalogParams params;
  params.field = RingDescriptor::prime_field(p);
  return params;
}

// -------------------------------------------------------------- bound table

SuiteCheck bound_table(const SuiteConfig&) {
  SuiteCheck c = start("bound-table", 1, "bound", 1.0);
  struct Row {
    const char* id;
    std::function<int(int, int)> expected;  // (n, dimR)
    bool uses_n;
    bool uses_dim;
  };
  const std::vector<Row> rows = {
      {"weyl", [](int n, int) { return 2 * n + 1; }, true, false},
      {"extended-weyl", [](int n, int) { return n + 1; }, true, false},
      {"polynomial-ring", [](int n, int d) { return d + n + 1; }, true, true},
      {"multiplicative-analogue", [](int n, int) { return n + 1; }, true, false},
      {"additive-analogue", [](int n, int) { return 2 * n + 1; }, true, false},
      {"q-heisenberg", [](int n, int) { return 3 * n + 1; }, true, false},
      {"manin", [](int, int) { return 5; }, false, false},
      {"sl-q-2", [](int, int) { return 5; }, false, false},
      {"dispin", [](int, int) { return 4; }, false, false},
      {"woronowicz", [](int, int) { return 4; }, false, false},
      {"uq-sl2", [](int, int) { return 4; }, false, false},
      {"quantum-symplectic", [](int n, int) { return 2 * n + 1; }, true, false},
  };
  json cases = json::array();
  std::size_t rows_ok = 0;
  for (const auto& row : rows) {
    bool row_ok = true;
    for (int n = 1; n <= (row.uses_n ? 3 : 1); ++n) {
      for (int d = 0; d <= (row.uses_dim ? 1 : 0); ++d) {
        BoundQuery q;
        if (row.uses_n) q.n = n;
        if (row.uses_dim) q.dim_r = d;
        int want = row.expected(n, d);
        int got = -1;
        try {
          BoundReport r = stable_rank_bound(row.id, q);
          got = r.bound == r.d_hermite ? r.bound : -1;
        } catch (const Error&) {
        }
        ++c.checks;
        if (got != want) {
          ++c.failures;
          row_ok = false;
        }
        json one = {{"algebra", row.id}, {"bound", got}, {"expected", want}};
        if (row.uses_n) one["n"] = n;
        if (row.uses_dim) one["dim_r"] = d;
        cases.push_back(one);
      }
    }
    rows_ok += row_ok ? 1 : 0;
  }
  c.data = {{"rows", rows.size()}, {"rows_exact", rows_ok}, {"cases", cases}};
  finish(c, std::to_string(rows_ok) + "/" + std::to_string(rows.size()) + " rows exact over " +
                std::to_string(c.checks) + " parameter choices");
  return c;
}

// --------------------------------------------------------------------- pbw

struct Named {
  std::string label;
  Presentation pres;
};

std::vector<Named> oracle_algebras() {
  CatalogParams qp = over_prime(7);
  qp.q = 3;
  return {{"weyl n=1 over F_7", build("weyl", over_prime(7))}, {"quantum-plane q=3 over F_7", build("quantum-plane", qp)}};
}

SuiteCheck oracle_equivalence(const SuiteConfig& config) {
  SuiteCheck c = start("normal-form-oracle", 2, "pbw", 10.0);
  json per = json::array();
  std::string first;
  for (const auto& [label, pres] : oracle_algebras()) {
    Algebra algebra(pres);
    Rng rng(config.seed);
    std::uint64_t bad = 0;
    for (int s = 0; s < 500; ++s) {
      auto word = random_word(algebra, rng, 8);
      SkewPoly fast = normalize_word(algebra, word);
      SkewPoly slow = reference_normalize(pres, word);
      ++c.checks;
      if (fast != slow) {
        ++bad;
        if (first.empty()) {
          first = label + ": " + format_word(algebra, word) + " gives " + algebra.to_string(fast) + " vs " +
                  algebra.to_string(slow);
        }
      }
    }
    c.failures += bad;
    per.push_back({{"algebra", label}, {"words", 500}, {"mismatches", bad}});
  }
  c.data = {{"seed", config.seed}, {"algebras", per}};
  if (!first.empty()) c.data["first_mismatch"] = first;
  finish(c, std::to_string(c.checks - c.failures) + "/" + std::to_string(c.checks) + " random words agree");
  return c;
}

// Live catalog entries with parameters that give them a few variables.
std::vector<Named> catalog_over(const RingDescriptor& field) {
  std::vector<Named> out;
  for (const auto& entry : catalog_entries()) {
    CatalogParams params;
    params.field = field;
    if (entry.id == "weyl" || entry.id == "polynomial-ring" || entry.id == "additive-analogue") params.n = 2;
    if (entry.id == "multiplicative-analogue") params.n = 3;
    out.push_back({entry.id, build(entry.id, params)});
  }
  return out;
}

SuiteCheck associativity(const SuiteConfig& config) {
  SuiteCheck c = start("associativity", 3, "pbw", 60.0);
  json per = json::array();
  std::string first;
  auto algebras = catalog_over(RingDescriptor::prime_field(7));
  for (std::size_t k = 0; k < algebras.size(); ++k) {
    Algebra algebra(algebras[k].pres);
    Rng rng(config.seed + k);
    std::uint64_t bad = 0;
    for (std::size_t s = 0; s < config.trials; ++s) {
      SkewPoly f = algebra.random(rng, 2), g = algebra.random(rng, 2), h = algebra.random(rng, 2);
      ++c.checks;
      if (algebra.multiply(algebra.multiply(f, g), h) != algebra.multiply(f, algebra.multiply(g, h))) {
        ++bad;
        if (first.empty()) {
          first = algebras[k].label + ": f = " + algebra.to_string(f) + ", g = " + algebra.to_string(g) +
                  ", h = " + algebra.to_string(h);
        }
      }
    }
    c.failures += bad;
    per.push_back({{"algebra", algebras[k].label}, {"triples", config.trials}, {"failures", bad}});
  }
  if (algebras.size() < 8) ++c.failures;
  c.data = {{"seed", config.seed}, {"algebras", per}};
  if (!first.empty()) c.data["first_failure"] = first;
  finish(c, std::to_string(algebras.size()) + " algebras, " + std::to_string(c.checks) + " triples, " +
                std::to_string(c.failures) + " failures");
  return c;
}

SuiteCheck graded_law(const SuiteConfig&) {
  SuiteCheck c = start("associated-graded", 4, "pbw", 1.0);
  json bad = json::array();
  for (const auto& field : {RingDescriptor::prime_field(7), RingDescriptor::rationals()}) {
    for (const auto& [label, pres] : catalog_over(field)) {
      Presentation gr = associated_graded(pres);
      ++c.checks;
      if (!is_quasi_commutative(gr) || associated_graded(gr) != gr) {
        ++c.failures;
        bad.push_back(label + (field.kind == RingKind::Rationals ? " over Q" : " over F_7"));
      }
    }
  }
  c.data = {{"presentations", c.checks}, {"failing", bad}};
  finish(c, std::to_string(c.checks - c.failures) + "/" + std::to_string(c.checks) +
                " graded presentations are quasi-commutative");
  return c;
}

SuiteCheck domain_probe(const SuiteConfig& config) {
  SuiteCheck c = start("domain-probe", 5, "pbw", 30.0);
  json per = json::array();
  for (const auto& [label, pres] : oracle_algebras()) {
    Algebra algebra(pres);
    ZeroDivisorReport r = zero_divisor_probe(algebra, 200, 3, config.seed);
    c.checks += r.trials;
    c.failures += r.counterexamples.size();
    per.push_back({{"algebra", label}, {"trials", r.trials}, {"zero_products", r.counterexamples.size()},
                   {"degree_drops", r.degree_drops}});
  }
  c.data = {{"seed", config.seed}, {"algebras", per}};
  finish(c, std::to_string(c.checks) + " products, " + std::to_string(c.failures) + " zero divisors");
  return c;
}

// ----------------------------------------------------------------- lattice

SuiteCheck lattice_laws(const SuiteConfig&) {
  SuiteCheck c = start("lattice-laws", 6, "lattice", 120.0);
  json per = json::array();
  std::size_t rings_ok = 0;
  for (const auto& spec : lattice_test_rings()) {
    FiniteCommRing ring = FiniteCommRing::parse_spec(spec);
    ZariskiFinite z(ring);
    auto laws = check_lattice_laws(z);
    std::size_t passed = 0;
    json broken = json::array();
    for (const auto& law : laws) {
      c.checks += law.checks;
      c.failures += law.violations;
      if (law.passed()) {
        ++passed;
      } else {
        broken.push_back({{"law", law.law}, {"violations", law.violations}, {"first", law.first_violation}});
      }
    }
    if (laws.size() != 12) ++c.failures;
    rings_ok += passed == 12 ? 1 : 0;
    per.push_back({{"ring", spec}, {"ideals", z.ideals().size()}, {"primes", z.primes().size()},
                   {"laws_passed", passed}, {"violations", broken}});
  }
  c.data = {{"rings", per}};
  finish(c, std::to_string(rings_ok) + "/" + std::to_string(lattice_test_rings().size()) +
                " rings satisfy 12/12 laws (" + std::to_string(c.checks) + " instances)");
  return c;
}

SuiteCheck boundary(const SuiteConfig&) {
  SuiteCheck c = start("boundary-condition", 7, "lattice", 10.0);
  json per = json::array();
  for (const auto& spec : lattice_test_rings()) {
    FiniteCommRing ring = FiniteCommRing::parse_spec(spec);
    ZariskiFinite z(ring);
    BoundaryReport r = check_boundary_condition(z);
    c.checks += r.elements;
    c.failures += r.failures.size();
    json fails = json::array();
    for (auto v : r.failures) fails.push_back(ring.to_string(v));
    per.push_back({{"ring", spec}, {"elements", r.elements}, {"failures", fails}});
  }
  c.data = {{"rings", per}};
  finish(c, std::to_string(c.checks - c.failures) + "/" + std::to_string(c.checks) + " elements have I_v = S");
  return c;
}

SuiteCheck kronecker_dim0(const SuiteConfig&) {
  SuiteCheck c = start("kronecker-d1", 8, "kronecker", 120.0);
  json per = json::array();
  std::uint64_t constructive = 0, fallback = 0;
  for (const auto& spec : lattice_test_rings()) {
    FiniteCommRing ring = FiniteCommRing::parse_spec(spec);
    ZariskiFinite z(ring);
    std::uint64_t ring_pairs = 0, ring_constructive = 0, ring_fallback = 0, ring_bad = 0;
    for (FiniteCommRing::Elem u1 = 0; u1 < ring.size(); ++u1) {
      for (FiniteCommRing::Elem u = 0; u < ring.size(); ++u) {
        ++ring_pairs;
        Dim0Reduction r = kronecker_reduce_dim0(z, u1, u);
        bool ok = z.D(std::vector<FiniteCommRing::Elem>{ring.add(u1, ring.mul(r.x1, u))}) ==
                  z.D(std::vector<FiniteCommRing::Elem>{u1, u});
        if (!ok) ++ring_bad;
        if (r.constructive_verified) ++ring_constructive;
        if (r.method == Dim0Reduction::Method::Fallback) ++ring_fallback;
      }
    }
    c.checks += ring_pairs;
    c.failures += ring_bad;
    constructive += ring_constructive;
    fallback += ring_fallback;
    per.push_back({{"ring", spec}, {"pairs", ring_pairs}, {"unverified", ring_bad},
                   {"constructive_verified", ring_constructive}, {"fallback_used", ring_fallback}});
  }
  double rate = c.checks == 0 ? 0.0 : static_cast<double>(constructive) / static_cast<double>(c.checks);
  c.data = {{"rings", per}, {"constructive_rate", rate}, {"fallback_used", fallback}};
  std::ostringstream s;
  s << c.checks - c.failures << "/" << c.checks << " pairs verified; constructive pick verifies in "
    << static_cast<double>(static_cast<int>(rate * 10000)) / 100 << "%, fallback used " << fallback << " times";
  finish(c, s.str());
  return c;
}

// -------------------------------------------------------------- F_5[t] d=2

FpPoly poly_from_json(const json& j, std::int64_t p) { return FpPoly(p, j.get<std::vector<std::int64_t>>()); }

SuiteCheck kronecker_fpt(const SuiteConfig& config) {
  SuiteCheck c = start("kronecker-f5t", 9, "kronecker", 300.0);
  const std::int64_t p = 5;
  std::string path = config.kronecker_fixtures.empty() ? std::string(SKEWPBW_DATA_DIR) + "/kronecker_f5.json"
                                                       : config.kronecker_fixtures;
  std::ifstream in(path);
  if (!in) {
    c.failures = 1;
    finish(c, "fixture file " + path + " is missing");
    return c;
  }
  json fixtures = json::parse(in);
  std::uint64_t fixture_ok = 0, identical = 0, fixture_count = 0;
  for (const auto& fx : fixtures.at("cases")) {
    ++fixture_count;
    std::vector<FpPoly> us;
    for (const auto& e : fx.at("us")) us.push_back(poly_from_json(e, p));
    FpPoly u = poly_from_json(fx.at("u"), p);
    std::vector<FpPoly> expected;
    for (const auto& e : fx.at("xs")) expected.push_back(poly_from_json(e, p));
    auto found = kronecker_reduce_poly(us, u, 4);
    bool ok = found && verify_kronecker_poly(us, u, found->xs);
    // The oracle certificate must verify here too.
    ok = ok && verify_kronecker_poly(us, u, expected);
    if (ok) ++fixture_ok;
    if (found && found->xs == expected) ++identical;
  }
  if (fixture_count != 50 || fixture_ok != fixture_count) c.failures += fixture_count - fixture_ok + (fixture_count != 50);
  c.checks += fixture_count;

  Rng rng(config.seed);
  auto random_poly = [&](int max_degree) {
    std::vector<std::int64_t> coeffs;
    for (int k = 0; k <= max_degree; ++k) coeffs.push_back(static_cast<std::int64_t>(draw_below(rng, p)));
    return FpPoly(p, coeffs);
  };
  std::uint64_t fresh_found = 0, fresh_unverified = 0, candidates = 0;
  json sample = json::array();
  for (int s = 0; s < 200; ++s) {
    std::vector<FpPoly> us{random_poly(4), random_poly(4)};
    FpPoly u = random_poly(4);
    auto found = kronecker_reduce_poly(us, u, 6);
    ++c.checks;
    if (!found) continue;
    ++fresh_found;
    candidates += found->candidates;
    if (!verify_kronecker_poly(us, u, found->xs)) {
      ++fresh_unverified;
      ++c.failures;
    }
    if (sample.size() < 3) {
      sample.push_back({{"us", {us[0].to_string(), us[1].to_string()}},
                        {"u", u.to_string()},
                        {"xs", {found->xs[0].to_string(), found->xs[1].to_string()}}});
    }
  }
  double rate = static_cast<double>(fresh_found) / 200.0;
  if (rate < 0.9) ++c.failures;
  c.data = {{"seed", config.seed},
            {"fixtures", fixture_count},
            {"fixtures_verified", fixture_ok},
            {"fixtures_identical_certificate", identical},
            {"fresh", 200},
            {"fresh_found", fresh_found},
            {"fresh_success_rate", rate},
            {"fresh_unverified", fresh_unverified},
            {"mean_candidates", fresh_found == 0 ? 0.0 : static_cast<double>(candidates) / fresh_found},
            {"sample_certificates", sample}};
  std::ostringstream s;
  s << fixture_ok << "/" << fixture_count << " fixtures reproduced (" << identical << " identical), fresh success "
    << fresh_found << "/200, unverified " << fresh_unverified;
  finish(c, s.str());
  return c;
}

// ------------------------------------------------------------------ matrix

SkewPoly to_skew(const Algebra& algebra, const FpPoly& f) {
  SkewPoly out;
  const auto& cs = f.coefficients();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k] == 0) continue;
    out.accumulate(Monomial(std::vector<std::uint32_t>{static_cast<std::uint32_t>(k)}),
                   algebra.ring().from_integer(Integer(static_cast<long>(cs[k]))), algebra.ring());
  }
  return out;
}

SuiteCheck unimodular(const SuiteConfig&) {
  SuiteCheck c = start("unimodular-solver", 10, "matrix", 60.0);
  Algebra weyl(build("weyl", over_prime(101)));
  PolyMatrix row = PolyMatrix::row(parse_entries(weyl, "t, x"));
  auto witness = find_right_inverse_row(weyl, row, 1);
  bool weyl_ok = witness && verify_inverse(weyl, row, *witness, Side::Right);
  ++c.checks;
  if (!weyl_ok) ++c.failures;

  const std::int64_t p = 3;
  Algebra poly(Presentation::polynomial("F3[x]", RingDescriptor::prime_field(p), {"x"}));
  std::uint64_t agree = 0, pairs = 0, unimodular_pairs = 0;
  std::string first;
  const std::uint64_t count = 81;  // all polynomials of degree <= 3
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = 0; b < count; ++b) {
      FpPoly fa = FpPoly::from_index(p, a), fb = FpPoly::from_index(p, b);
      int bound = std::max(fa.degree(), 0) + std::max(fb.degree(), 0);
      PolyMatrix u = PolyMatrix::row({to_skew(poly, fa), to_skew(poly, fb)});
      auto w = find_right_inverse_row(poly, u, bound);
      bool solver = w.has_value() && verify_inverse(poly, u, *w, Side::Right);
      bool coprime = gcd(fa, fb).is_one();
      ++pairs;
      if (coprime) ++unimodular_pairs;
      if (solver == coprime) {
        ++agree;
      } else if (first.empty()) {
        first = "[" + fa.to_string("x") + ", " + fb.to_string("x") + "]";
      }
    }
  }
  c.checks += pairs;
  c.failures += pairs - agree;
  c.data = {{"weyl_row", "[t, x] over F_101, bound 1"},
            {"weyl_witness", witness ? format_matrix(weyl, *witness) : std::string("none")},
            {"weyl_verified", weyl_ok},
            {"family_pairs", pairs},
            {"family_unimodular", unimodular_pairs},
            {"family_agree", agree}};
  if (!first.empty()) c.data["first_disagreement"] = first;
  finish(c, std::string("Weyl witness ") + (weyl_ok ? "verified" : "missing") + "; gcd criterion matched on " +
                std::to_string(agree) + "/" + std::to_string(pairs) + " pairs over F_3[x]");
  return c;
}

SuiteCheck completion(const SuiteConfig& config) {
  SuiteCheck c = start("completion", 11, "matrix", 60.0);
  Algebra poly(Presentation::polynomial("F5[t]", RingDescriptor::prime_field(5), {"t"}));
  Rng rng(config.seed);
  std::uint64_t max_degree = 0;
  for (int s = 0; s < 100; ++s) {
    std::size_t factors = 1 + draw_below(rng, 6);
    InvertiblePair pair = random_invertible(poly, 3, factors, 2, config.seed + static_cast<std::uint64_t>(s));
    PolyMatrix u = PolyMatrix::row({pair.u(0, 0), pair.u(0, 1), pair.u(0, 2)});
    PolyMatrix witness = PolyMatrix::column({pair.uinv(0, 0), pair.uinv(1, 0), pair.uinv(2, 0)});
    bool ok = verify_completion(poly, u, pair.uinv, pair.u) && verify_inverse(poly, u, witness, Side::Right);
    ++c.checks;
    if (!ok) ++c.failures;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        max_degree = std::max<std::uint64_t>(max_degree, std::max(0, degree(pair.u(i, j))));
      }
    }
  }
  c.data = {{"seed", config.seed}, {"matrices", 100}, {"max_entry_degree", max_degree}};
  finish(c, std::to_string(c.checks - c.failures) + "/100 first rows complete with the constructed inverse");
  return c;
}

struct Runner {
  SuiteCheck (*run)(const SuiteConfig&);
  const char* name;
  int criterion;
  double budget;
};

const std::vector<std::pair<std::string, std::vector<Runner>>>& registry() {
  static const std::vector<std::pair<std::string, std::vector<Runner>>> r = {
      {"bound", {{bound_table, "bound-table", 1, 1.0}}},
      {"pbw",
       {{oracle_equivalence, "normal-form-oracle", 2, 10.0},
        {associativity, "associativity", 3, 60.0},
        {graded_law, "associated-graded", 4, 1.0},
        {domain_probe, "domain-probe", 5, 30.0}}},
      {"lattice", {{lattice_laws, "lattice-laws", 6, 120.0}, {boundary, "boundary-condition", 7, 10.0}}},
      {"kronecker", {{kronecker_dim0, "kronecker-d1", 8, 120.0}, {kronecker_fpt, "kronecker-f5t", 9, 300.0}}},
      {"matrix", {{unimodular, "unimodular-solver", 10, 60.0}, {completion, "completion", 11, 60.0}}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& lattice_test_rings() {
  static const std::vector<std::string> rings = {"Zmod:4", "Zmod:6", "Zmod:8", "Zmod:12", "Zmod:30", "quot:F2:x^3"};
  return rings;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bound", "pbw", "lattice", "kronecker", "matrix", "all"};
  return names;
}

std::vector<SuiteCheck> run_suite(std::string_view name, const SuiteConfig& config) {
  std::vector<SuiteCheck> out;
  bool known = false;
  for (const auto& [suite, runners] : registry()) {
    if (name != "all" && name != suite) continue;
    known = true;
    for (const Runner& runner : runners) {
      auto t0 = std::chrono::steady_clock::now();
      SuiteCheck check;
      try {
        check = runner.run(config);
      } catch (const std::exception& e) {
        check = start(runner.name, runner.criterion, suite, runner.budget);
        check.failures = 1;
        check.summary = std::string("aborted: ") + e.what();
      }
      check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!check.within_budget()) check.passed = false;
      out.push_back(std::move(check));
    }
  }
  if (!known) throw BadParams("unknown suite '" + std::string(name) + "'");
  return out;
}

}  // namespace skewpbw
