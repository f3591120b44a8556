// skewpbw: command-line front end. Exit codes: 0 success, 1 a verification
// failed or nothing was found within the bound, 2 usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "run_report.hpp"
#include "skewpbw/catalog.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/fp_poly.hpp"
#include "skewpbw/matrix.hpp"
#include "skewpbw/suites.hpp"
#include "skewpbw/zariski.hpp"

namespace skewpbw::cli {
namespace {

using json = RunReport::json;
using Elem = FiniteCommRing::Elem;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  bool json = false;
  std::optional<std::uint64_t> seed;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("SKEWPBW_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
      } catch (const std::logic_error&) {
      }
      throw UsageError(std::string("SKEWPBW_SEED is not an unsigned integer: ") + env);
    }
    return kDefaultSeed;
  }
};

/// Text output goes to stdout unless --json asked for the report instead.
class Out {
 public:
  explicit Out(const Globals& g) : quiet_(g.json) {}
  template <typename T>
  Out& operator<<(const T& v) {
    if (!quiet_) std::cout << v;
    return *this;
  }

 private:
  bool quiet_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Splits on commas outside brackets and parentheses.
std::vector<std::string> split_top(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (auto& s : out) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

Rational parse_rational(const std::string& text, const char* what) {
  try {
    Rational r(text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("--") + what + " expects an integer or fraction, got '" + text + "'");
  }
}

// ------------------------------------------------------------ algebra opts

struct AlgebraOpts {
  std::string algebra;
  std::string file;
  std::optional<std::int64_t> p;
  int n = 1;
  std::string q = "2", nu = "2", h = "1";
  std::string lambdas, qs;

  void attach(CLI::App* sub) {
    sub->add_option("--algebra", algebra, "catalog id (see `catalog list`)");
    sub->add_option("--file", file, "presentation file");
    sub->add_option("--p", p, "coefficient field F_p (default Q)");
    sub->add_option("--n", n, "number of variable pairs / variables");
    sub->add_option("--q", q, "deformation parameter");
    sub->add_option("--nu", nu, "Woronowicz parameter");
    sub->add_option("--step", h, "shift step h");
    sub->add_option("--lambdas", lambdas, "comma-separated lambda_ji for the multiplicative analogue");
    sub->add_option("--qs", qs, "comma-separated q_i for the additive analogue");
  }

  CatalogParams params() const {
    CatalogParams out;
    out.n = n;
    out.q = parse_rational(q, "q");
    out.nu = parse_rational(nu, "nu");
    out.h = parse_rational(h, "h");
    if (!lambdas.empty()) {
      for (const auto& s : split_top(lambdas)) out.lambdas.push_back(parse_rational(s, "lambdas"));
    }
    if (!qs.empty()) {
      for (const auto& s : split_top(qs)) out.qs.push_back(parse_rational(s, "qs"));
    }
    if (p) out.field = RingDescriptor::prime_field(*p);
    return out;
  }

  Presentation presentation() const {
    if (!file.empty()) {
      if (!algebra.empty()) throw UsageError("give either --algebra or --file, not both");
      return parse_presentation(read_file(file));
    }
    if (algebra.empty()) throw UsageError("an algebra is required: --algebra <id> or --file <path>");
    return build(algebra, params());
  }

  std::unique_ptr<Algebra> make() const { return std::make_unique<Algebra>(presentation()); }
};

// ---------------------------------------------------------------- handlers

int cmd_check(const Globals& g, const AlgebraOpts& a, std::size_t samples, RunReport& report) {
  Out out(g);
  ValidationOptions opts;
  opts.samples = samples;
  opts.seed = g.resolved_seed();
  report.set_seed(opts.seed);
  Presentation p = a.presentation();
  ValidationReport v = validate_presentation(p, opts);
  for (const auto& c : v.checks) {
    out << (c.passed ? "pass  " : "FAIL  ") << c.name;
    if (c.samples > 0) out << " (" << c.samples << " samples)";
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
    json detail = {{"samples", c.samples}, {"failures", c.failures}};
    if (!c.detail.empty()) detail["detail"] = c.detail;
    report.add_result(c.name, c.passed, detail);
  }
  out << (v.passed() ? "valid" : "invalid") << " presentation " << p.name << "\n";
  return v.passed() ? 0 : 1;
}

int cmd_normalize(const Globals& g, const AlgebraOpts& a, const std::string& expr, RunReport& report) {
  auto algebra = a.make();
  std::string nf = algebra->to_string(algebra->parse(expr));
  Out(g) << nf << "\n";
  report.certificates()["normal_form"] = nf;
  report.add_result("normalize", true);
  return 0;
}

int cmd_mul(const Globals& g, const AlgebraOpts& a, const std::vector<std::string>& factors, RunReport& report) {
  auto algebra = a.make();
  SkewPoly acc = algebra->one();
  for (const auto& f : factors) acc = algebra->multiply(acc, algebra->parse(f));
  std::string nf = algebra->to_string(acc);
  Out(g) << nf << "\n";
  report.certificates()["product"] = nf;
  report.add_result("mul", true);
  return 0;
}

int cmd_catalog_list(const Globals& g, bool all, RunReport& report) {
  Out out(g);
  json live = json::array();
  for (const auto& e : catalog_entries()) {
    out << e.id << "  " << e.summary << "\n";
    live.push_back({{"id", e.id}, {"summary", e.summary}, {"params", e.params}});
  }
  report.certificates()["algebras"] = live;
  if (all) {
    json rows = json::array();
    out << "\nbound rows:\n";
    for (const auto& r : bound_rows()) {
      out << r.id << "  " << r.title << "  [" << r.formula.to_string() << "]\n";
      rows.push_back({{"id", r.id}, {"title", r.title}, {"formula", r.formula.to_string()}});
    }
    report.certificates()["bound_rows"] = rows;
  }
  return 0;
}

int cmd_catalog_show(const Globals& g, const std::string& name, const AlgebraOpts& a, RunReport& report) {
  Out out(g);
  const CatalogEntry& e = catalog_entry(name);
  AlgebraOpts opts = a;
  opts.algebra = name;
  Presentation p = opts.presentation();
  std::string text = serialize_presentation(p);
  out << "# " << e.summary << "\n# parameters: " << e.params << "\n" << text;
  report.certificates()["id"] = e.id;
  report.certificates()["summary"] = e.summary;
  report.certificates()["presentation"] = text;
  try {
    BoundReport b = stable_rank_bound(name, {});
    out << "# stable rank bound: " << b.formula << "\n";
    report.certificates()["bound_formula"] = b.formula;
  } catch (const MissingDimR&) {
    for (const auto& r : bound_rows()) {
      if (r.id == name) out << "# stable rank bound: " << r.formula.to_string() << "\n";
    }
  } catch (const UnknownAlgebra&) {
  }
  return 0;
}

int cmd_bound(const Globals& g, const std::string& name, const BoundQuery& q, RunReport& report) {
  BoundReport b = stable_rank_bound(name, q);
  Out(g) << b.bound << "\n";
  json c = {{"algebra", b.algebra}, {"title", b.title}, {"formula", b.formula}};
  c["n"] = b.n ? json(*b.n) : json(nullptr);
  c["m"] = b.m ? json(*b.m) : json(nullptr);
  c["dim_r"] = b.dim_r ? json(*b.dim_r) : json(nullptr);
  c["bound"] = b.bound;
  c["d_hermite"] = b.d_hermite;
  report.certificates()["bound"] = c;
  report.add_result("bound", true);
  return 0;
}

int cmd_unimod(const Globals& g, const AlgebraOpts& a, const std::string& row, const std::string& column,
               int bound, RunReport& report) {
  Out out(g);
  if (row.empty() == column.empty()) throw UsageError("give exactly one of --row or --column");
  auto algebra = a.make();
  bool is_row = !row.empty();
  auto entries = parse_entries(*algebra, is_row ? row : column);
  PolyMatrix m = is_row ? PolyMatrix::row(entries) : PolyMatrix::column(entries);
  auto w = is_row ? find_right_inverse_row(*algebra, m, bound) : find_left_inverse_column(*algebra, m, bound);
  if (!w) {
    out << "no witness of degree <= " << bound << "\n";
    report.add_result("witness", false, {{"bound", bound}, {"found", false}});
    return 1;
  }
  bool ok = verify_inverse(*algebra, m, *w, is_row ? Side::Right : Side::Left);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    parts.push_back(algebra->to_string(is_row ? (*w)(i, 0) : (*w)(0, i)));
  }
  out << (is_row ? "right inverse: [" : "left inverse: [");
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : "") << parts[i];
  out << "]" << (is_row ? "^T" : "") << "\n" << (ok ? "verified" : "VERIFICATION FAILED") << "\n";
  report.certificates()["witness"] = parts;
  report.certificates()["side"] = is_row ? "right" : "left";
  report.add_result("witness", ok, {{"bound", bound}, {"found", true}});
  return ok ? 0 : 1;
}

int cmd_complete(const Globals& g, const AlgebraOpts& a, const std::string& row, const std::string& f_file,
                 const std::string& u_file, const std::string& uinv_file, RunReport& report) {
  if (row.empty() == f_file.empty()) throw UsageError("give exactly one of --row or --F");
  auto algebra = a.make();
  PolyMatrix u = parse_matrix(*algebra, read_file(u_file));
  PolyMatrix uinv = parse_matrix(*algebra, read_file(uinv_file));
  bool ok;
  if (!row.empty()) {
    ok = verify_completion(*algebra, PolyMatrix::row(parse_entries(*algebra, row)), u, uinv);
  } else {
    ok = verify_rect_completion(*algebra, parse_matrix(*algebra, read_file(f_file)), u, uinv);
  }
  Out(g) << (ok ? "verified" : "not a completion") << "\n";
  report.add_result("completion", ok);
  return ok ? 0 : 1;
}

int cmd_reduce_stable(const Globals& g, const AlgebraOpts& a, const std::string& column, const std::string& given,
                      int a_bound, int bound, RunReport& report) {
  Out out(g);
  auto algebra = a.make();
  PolyMatrix v = PolyMatrix::column(parse_entries(*algebra, column));
  if (v.rows() < 2) throw UsageError("the column needs at least two entries");
  if (!given.empty()) {
    auto as = parse_entries(*algebra, given);
    if (as.size() + 1 != v.rows()) throw UsageError("--a needs one entry fewer than the column");
    bool ok = stable_reduce_check(*algebra, v, as, bound);
    out << (ok ? "stable: the reduced column has a left inverse" : "no left inverse of degree <= " +
                                                                      std::to_string(bound))
        << "\n";
    report.add_result("stable-reduction", ok, {{"bound", bound}});
    return ok ? 0 : 1;
  }
  auto found = search_stable_reduction(*algebra, v, a_bound, bound);
  if (!found) {
    out << "no reduction with deg a <= " << a_bound << " and witness degree <= " << bound << "\n";
    report.add_result("stable-reduction", false, {{"a_bound", a_bound}, {"bound", bound}});
    return 1;
  }
  std::vector<std::string> as, ws;
  for (const auto& e : found->a) as.push_back(algebra->to_string(e));
  for (std::size_t i = 0; i < found->witness.cols(); ++i) ws.push_back(algebra->to_string(found->witness(0, i)));
  out << "a = (";
  for (std::size_t i = 0; i < as.size(); ++i) out << (i ? ", " : "") << as[i];
  out << ")\nleft inverse of the reduced column: [";
  for (std::size_t i = 0; i < ws.size(); ++i) out << (i ? ", " : "") << ws[i];
  out << "]\n";
  report.certificates()["a"] = as;
  report.certificates()["witness"] = ws;
  report.add_result("stable-reduction", true, {{"a_bound", a_bound}, {"bound", bound}});
  return 0;
}

// ------------------------------------------------------------------ zariski

struct ZariskiOpts {
  std::string ring;
  std::string backend;
  std::string gens;
  std::string us;
  std::string u;
  std::string a;
  std::string v;
  int bound = 3;

  bool polynomial() const {
    if (ring.empty() == backend.empty()) throw UsageError("give exactly one of --ring or --backend");
    return !backend.empty();
  }

  std::int64_t prime() const {
    if (backend.rfind("fpt:", 0) != 0) throw UsageError("backend must be fpt:<p>, got '" + backend + "'");
    try {
      std::int64_t p = std::stoll(backend.substr(4));
      if (p < 2 || p > 101) throw UsageError("fpt:<p> needs a prime 2 <= p <= 101");
      for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) throw UsageError("fpt:<p> needs a prime");
      }
      return p;
    } catch (const std::logic_error&) {
      throw UsageError("backend must be fpt:<p>, got '" + backend + "'");
    }
  }
};

std::vector<Elem> parse_elems(const FiniteCommRing& ring, const std::string& text) {
  std::vector<Elem> out;
  for (const auto& s : split_top(text)) {
    if (!s.empty()) out.push_back(ring.parse_element(s));
  }
  return out;
}

std::vector<FpPoly> parse_polys(std::int64_t p, const std::string& text) {
  std::vector<FpPoly> out;
  for (const auto& s : split_top(text)) {
    if (!s.empty()) out.push_back(FpPoly::parse(p, s));
  }
  return out;
}

std::string format_elems(const FiniteCommRing& ring, const std::vector<Elem>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + ring.to_string(xs[i]);
  return out + ")";
}

std::string format_class(const RadicalClass& c) {
  if (c.generator.is_zero()) return "D(0) = 0";
  if (c.is_unit()) return "whole ring (unit class)";
  return "radical of (" + c.generator.to_string() + ")";
}

json set_json(const FiniteCommRing& ring, const ElementSet& s) {
  json out = json::array();
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) out.push_back(ring.to_string(i));
  return out;
}

int cmd_zariski(const Globals& g, const std::string& action, const ZariskiOpts& o, RunReport& report) {
  Out out(g);
  if (o.polynomial()) {
    std::int64_t p = o.prime();
    if (action == "D") {
      RadicalClass c = zariski_D(parse_polys(p, o.gens), p);
      out << format_class(c) << "\n";
      report.certificates()["D"] = c.generator.to_string();
      return 0;
    }
    if (action == "radical") {
      PolyMembership m = radical_membership(FpPoly::parse(p, o.a), parse_polys(p, o.gens), p);
      out << (m.member ? "member, k = " + std::to_string(m.k) : std::string("not a member")) << "\n";
      report.certificates()["member"] = m.member;
      if (m.member) report.certificates()["k"] = m.k;
      return 0;
    }
    if (action == "kronecker" || action == "shrink") {
      auto us = parse_polys(p, o.us);
      std::optional<PolyKronecker> r;
      FpPoly u;
      if (action == "kronecker") {
        if (o.u.empty()) throw UsageError("--u is required");
        u = FpPoly::parse(p, o.u);
        r = kronecker_reduce_poly(us, u, o.bound);
      } else {
        r = unimodular_shrink_poly(us, o.bound);
        u = us.back();
        us.pop_back();
      }
      if (!r) {
        out << "no certificate with deg x_i <= " << o.bound << "\n";
        report.add_result(action, false, {{"bound", o.bound}, {"found", false}});
        return 1;
      }
      bool ok = verify_kronecker_poly(us, u, r->xs);
      std::vector<std::string> xs;
      for (const auto& x : r->xs) xs.push_back(x.to_string());
      out << "x = (";
      for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
      out << ")\n" << (ok ? "verified" : "VERIFICATION FAILED") << " after " << r->candidates << " candidates\n";
      report.certificates()["xs"] = xs;
      report.certificates()["candidates"] = r->candidates;
      report.add_result(action, ok, {{"bound", o.bound}, {"found", true}});
      return ok ? 0 : 1;
    }
    throw UsageError("zariski " + action + " is only available with --ring");
  }

  FiniteCommRing ring = FiniteCommRing::parse_spec(o.ring);
  ZariskiFinite z(ring);
  if (action == "primes") {
    json primes = json::array();
    for (const auto& pr : z.primes()) {
      std::string gen;
      for (Elem a = 0; a < ring.size() && gen.empty(); ++a) {
        if (z.principal(a) == pr) gen = "<" + ring.to_string(a) + "> ";
      }
      out << gen << ring.format(pr) << "\n";
      primes.push_back(set_json(ring, pr));
    }
    report.certificates()["primes"] = primes;
    return 0;
  }
  if (action == "D") {
    ElementSet d = z.D(parse_elems(ring, o.gens));
    out << ring.format(d) << "\n";
    report.certificates()["D"] = set_json(ring, d);
    return 0;
  }
  if (action == "radical") {
    auto m = z.radical_membership(ring.parse_element(o.a), parse_elems(ring, o.gens));
    out << (m.member ? "member, k = " + std::to_string(m.k) : std::string("not a member")) << "\n";
    report.certificates()["member"] = m.member;
    if (m.member) report.certificates()["k"] = m.k;
    return 0;
  }
  if (action == "laws") {
    bool all = true;
    for (const auto& law : check_lattice_laws(z)) {
      out << (law.passed() ? "pass  " : "FAIL  ") << "(" << law.law << ") " << law.description << " ["
          << law.checks << " checks]";
      if (!law.passed()) out << ": " << law.first_violation;
      out << "\n";
      json detail = {{"checks", law.checks}, {"violations", law.violations}};
      if (!law.passed()) detail["first_violation"] = law.first_violation;
      report.add_result("law " + law.law, law.passed(), detail);
      all = all && law.passed();
    }
    return all ? 0 : 1;
  }
  if (action == "boundary") {
    std::vector<Elem> vs;
    if (o.v.empty()) {
      for (Elem v = 0; v < ring.size(); ++v) vs.push_back(v);
    } else {
      vs = parse_elems(ring, o.v);
    }
    bool all = true;
    for (Elem v : vs) {
      ElementSet iv = z.boundary_ideal(v);
      bool ok = iv == ring.whole();
      out << "I_" << ring.to_string(v) << " = " << (ok ? "S" : ring.format(iv)) << "\n";
      report.add_result("I_" + ring.to_string(v), ok, {{"ideal", set_json(ring, iv)}});
      all = all && ok;
    }
    return all ? 0 : 1;
  }
  if (action == "kronecker" || action == "shrink") {
    auto us = parse_elems(ring, o.us);
    std::vector<Elem> xs;
    Elem u = 0;
    if (action == "kronecker") {
      if (o.u.empty()) throw UsageError("--u is required");
      u = ring.parse_element(o.u);
      if (us.size() == 1) {
        Dim0Reduction r = kronecker_reduce_dim0(z, us[0], u);
        xs = {r.x1};
        const char* method = r.method == Dim0Reduction::Method::Trivial        ? "trivial"
                             : r.method == Dim0Reduction::Method::Constructive ? "constructive"
                                                                               : "fallback";
        report.certificates()["method"] = method;
        report.certificates()["constructive_verified"] = r.constructive_verified;
        out << "method: " << method << "\n";
      } else {
        xs = kronecker_reduce_finite(z, us, u);
      }
    } else {
      xs = unimodular_shrink_finite(z, us);
      u = us.back();
      us.pop_back();
    }
    std::vector<Elem> shifted, all = us;
    for (std::size_t i = 0; i < us.size(); ++i) shifted.push_back(ring.add(us[i], ring.mul(xs[i], u)));
    all.push_back(u);
    ElementSet lhs = z.D(shifted), rhs = z.D(all);
    bool ok = lhs == rhs;
    out << "x = " << format_elems(ring, xs) << "\nD" << format_elems(ring, shifted) << " = " << ring.format(lhs)
        << (ok ? " = " : " != ") << "D" << format_elems(ring, all) << "\n";
    json cx = json::array();
    for (Elem x : xs) cx.push_back(ring.to_string(x));
    report.certificates()["xs"] = cx;
    report.certificates()["D"] = set_json(ring, lhs);
    report.add_result(action, ok);
    return ok ? 0 : 1;
  }
  throw UsageError("unknown zariski action '" + action + "'");
}

int cmd_suite(const Globals& g, const std::string& name, std::size_t trials, const std::string& fixtures,
              RunReport& report) {
  Out out(g);
  SuiteConfig config;
  config.seed = g.resolved_seed();
  config.trials = trials;
  config.kronecker_fixtures = fixtures;
  report.set_seed(config.seed);
  auto checks = run_suite(name, config);
  bool all = true;
  for (const auto& c : checks) {
    bool ok = c.passed && c.within_budget();
    all = all && ok;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << c.seconds;
    out << (ok ? "PASS  " : "FAIL  ") << "[" << c.criterion << "] " << c.name << " (" << t.str() << " s, budget "
        << c.budget_seconds << " s): " << c.summary << "\n";
    report.add_counts(c.checks, c.failures);
    // Timings stay out of the report so that reruns compare byte for byte.
    report.certificates()[c.name] = c.data;
  }
  for (const auto& c : checks) {
    report.add_result(c.name, c.passed && c.within_budget(),
                      {{"criterion", c.criterion}, {"suite", c.suite}, {"summary", c.summary}});
  }
  return all ? 0 : 1;
}

}  // namespace
}  // namespace skewpbw::cli

int main(int argc, char** argv) {
  using namespace skewpbw;
  using namespace skewpbw::cli;

  CLI::App app{"Skew PBW extensions: normal forms, bounds, matrices and Zariski lattices"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "print a JSON run report instead of text");
  app.add_option("--seed", g.seed, "sampling seed (default $SKEWPBW_SEED or 20170401)");

  std::function<int(RunReport&)> handler;

  AlgebraOpts alg;
  std::size_t samples = 500;
  auto* check = app.add_subcommand("check", "validate a presentation");
  alg.attach(check);
  check->add_option("--samples", samples, "sampled coefficients per law");
  check->callback([&] { handler = [&](RunReport& r) { return cmd_check(g, alg, samples, r); }; });

  std::string expr;
  auto* normalize = app.add_subcommand("normalize", "normal form of an expression");
  alg.attach(normalize);
  normalize->add_option("expr", expr, "expression, e.g. x*x*t - 3*t")->required();
  normalize->callback([&] { handler = [&](RunReport& r) { return cmd_normalize(g, alg, expr, r); }; });

  std::vector<std::string> factors;
  auto* mul = app.add_subcommand("mul", "product of expressions, left to right");
  alg.attach(mul);
  mul->add_option("factors", factors, "two or more expressions")->required()->expected(1, -1);
  mul->callback([&] { handler = [&](RunReport& r) { return cmd_mul(g, alg, factors, r); }; });

  auto* catalog = app.add_subcommand("catalog", "built-in algebras");
  catalog->require_subcommand(1);
  bool all_rows = false;
  auto* clist = catalog->add_subcommand("list", "list built-in algebras");
  clist->add_flag("--all", all_rows, "also list the data-only bound rows");
  clist->callback([&] { handler = [&](RunReport& r) { return cmd_catalog_list(g, all_rows, r); }; });
  std::string show_name;
  AlgebraOpts show_alg;
  auto* cshow = catalog->add_subcommand("show", "print a presentation");
  cshow->add_option("name", show_name, "catalog id")->required();
  show_alg.attach(cshow);
  cshow->callback([&] { handler = [&](RunReport& r) { return cmd_catalog_show(g, show_name, show_alg, r); }; });

  std::string bound_name;
  std::optional<int> bn, bm, bdim;
  auto* bound = app.add_subcommand("bound", "stable rank upper bound and d-Hermite index");
  bound->add_option("name", bound_name, "row or catalog id")->required();
  bound->add_option("--n", bn, "n");
  bound->add_option("--m", bm, "m");
  bound->add_option("--dimR,--dim-r", bdim, "Krull dimension of the coefficient ring");
  bound->callback([&] {
    handler = [&](RunReport& r) { return cmd_bound(g, bound_name, BoundQuery{bn, bm, bdim}, r); };
  });

  AlgebraOpts un_alg;
  std::string un_row, un_col;
  int un_bound = 1;
  auto* unimod = app.add_subcommand("unimod", "one-sided inverses of rows and columns");
  unimod->require_subcommand(1);
  auto* ucheck = unimod->add_subcommand("check", "search for a witness within a degree bound");
  un_alg.attach(ucheck);
  ucheck->add_option("--row", un_row, "comma-separated row entries (right inverse)");
  ucheck->add_option("--column", un_col, "comma-separated column entries (left inverse)");
  ucheck->add_option("--bound", un_bound, "degree bound for the witness");
  ucheck->callback([&] { handler = [&](RunReport& r) { return cmd_unimod(g, un_alg, un_row, un_col, un_bound, r); }; });

  AlgebraOpts co_alg;
  std::string co_row, co_f, co_u, co_uinv;
  auto* complete = app.add_subcommand("complete", "completion certificates");
  complete->require_subcommand(1);
  auto* cverify = complete->add_subcommand("verify", "check u U = e_1 (or F U = [I|0]) and U Uinv = Uinv U = I");
  co_alg.attach(cverify);
  cverify->add_option("--row", co_row, "comma-separated row u");
  cverify->add_option("--F", co_f, "matrix file for the rectangular variant");
  cverify->add_option("--U", co_u, "matrix file")->required();
  cverify->add_option("--Uinv", co_uinv, "matrix file")->required();
  cverify->callback([&] {
    handler = [&](RunReport& r) { return cmd_complete(g, co_alg, co_row, co_f, co_u, co_uinv, r); };
  });

  AlgebraOpts rs_alg;
  std::string rs_col, rs_a;
  int rs_abound = 1, rs_bound = 1;
  auto* reduce = app.add_subcommand("reduce-stable", "stable reduction of a unimodular column");
  rs_alg.attach(reduce);
  reduce->add_option("--column", rs_col, "comma-separated column v")->required();
  reduce->add_option("--a", rs_a, "check this tuple instead of searching");
  reduce->add_option("--a-bound", rs_abound, "degree bound for searched a_i");
  reduce->add_option("--bound", rs_bound, "degree bound for the left inverse");
  reduce->callback([&] {
    handler = [&](RunReport& r) { return cmd_reduce_stable(g, rs_alg, rs_col, rs_a, rs_abound, rs_bound, r); };
  });

  ZariskiOpts zo;
  std::string z_action;
  auto* zariski = app.add_subcommand("zariski", "Zariski lattice computations");
  zariski->require_subcommand(1);
  struct ZSub {
    const char* name;
    const char* help;
  };
  for (const ZSub& s : {ZSub{"primes", "prime ideals of a finite ring"}, ZSub{"D", "D(X)"},
                        ZSub{"laws", "check the twelve lattice laws"}, ZSub{"boundary", "boundary ideals I_v"},
                        ZSub{"kronecker", "x with D(u_i + x_i u) = D(u_1..u_d, u)"},
                        ZSub{"shrink", "shorten a tuple generating the ring"},
                        ZSub{"radical", "radical membership with exponent"}}) {
    auto* sub = zariski->add_subcommand(s.name, s.help);
    sub->add_option("--ring", zo.ring, "Zmod:n, Fp:p, quot:F<p>:<poly>, prod:<spec>;<spec>");
    sub->add_option("--backend", zo.backend, "fpt:<p> for F_p[t]");
    sub->add_option("--gens", zo.gens, "comma-separated generators");
    sub->add_option("--us", zo.us, "comma-separated u_i");
    sub->add_option("--u", zo.u, "the element u");
    sub->add_option("--a", zo.a, "element tested for radical membership");
    sub->add_option("--v", zo.v, "elements v (default: all)");
    sub->add_option("--bound", zo.bound, "degree bound for F_p[t] searches");
    std::string name = s.name;
    sub->callback([&, name] {
      z_action = name;
      handler = [&](RunReport& r) { return cmd_zariski(g, z_action, zo, r); };
    });
  }

  std::string suite_name;
  std::size_t trials = 200;
  std::string fixtures;
  auto* suite = app.add_subcommand("suite", "property suites behind the acceptance criteria");
  suite->add_option("name", suite_name, "bound, pbw, lattice, kronecker, matrix or all")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  suite->add_option("--trials", trials, "random triples per algebra in the associativity check");
  suite->add_option("--fixtures", fixtures, "JSON fixtures for the F_5[t] check");
  suite->callback([&] { handler = [&](RunReport& r) { return cmd_suite(g, suite_name, trials, fixtures, r); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunReport report(std::vector<std::string>(argv + 1, argv + argc));
  int code = 2;
  std::string kind, message;
  try {
    code = handler(report);
  } catch (const UsageError& e) {
    kind = "usage";
    message = e.what();
  } catch (const ParseError& e) {
    kind = "parse";
    message = e.what();
  } catch (const PreconditionFailed& e) {
    kind = "precondition";
    message = e.what();
    code = 1;
  } catch (const UnknownAlgebra& e) {
    kind = "unknown-algebra";
    message = e.what();
  } catch (const MissingDimR& e) {
    kind = "missing-dim-r";
    message = e.what();
  } catch (const Error& e) {
    kind = "input";
    message = e.what();
  }
  if (!kind.empty()) {
    std::cerr << "skewpbw: " << message << "\n";
    report.set_error(kind, message);
  }
  if (g.json) report.print(std::cout, code == 0 ? Status::Ok : kind.empty() || code == 1 ? Status::Failed : Status::Error);
  return code;
}
