#include "skewpbw/catalog.hpp"

#include <algorithm>

#include "skewpbw/errors.hpp"

namespace skewpbw {

std::string BoundFormula::to_string() const {
  std::string out;
  auto append = [&](int coeff, const std::string& sym) {
    if (coeff == 0) return;
    if (!out.empty()) out += "+";
    if (coeff != 1) out += std::to_string(coeff);
    out += sym;
  };
  append(dim, "dim(R)");
  append(n, "n");
  append(m, "m");
  if (constant != 0 || out.empty()) {
    if (!out.empty()) out += "+";
    out += std::to_string(constant);
  }
  return out;
}

const std::vector<BoundRow>& bound_rows() {
  static const std::vector<BoundRow> rows = {
      {"polynomial-ring", "Habitual polynomial ring R[x1,...,xn]", {1, 1, 0, 1}},
      {"ore-bijective", "Ore extension of bijective type", {1, 1, 0, 1}},
      {"weyl", "Weyl algebra A_n(K)", {0, 2, 0, 1}},
      {"extended-weyl", "Extended Weyl algebra B_n(K)", {0, 1, 0, 1}},
      {"enveloping", "Universal enveloping algebra U(g), K commutative", {1, 1, 0, 1}},
      {"tensor-enveloping", "Tensor product R (x)_K U(g)", {1, 1, 0, 1}},
      {"crossed-product", "Crossed product R*U(g)", {1, 1, 0, 1}},
      {"q-differential-dqh", "Algebra of q-differential operators D_{q,h}[x,y]", {0, 0, 0, 3}},
      {"shift-operators", "Algebra of shift operators S_h", {0, 0, 0, 3}},
      {"mixed-dh", "Mixed algebra D_h", {0, 0, 0, 4}},
      {"discrete-linear", "Discrete linear systems K[t1..tn][x1;s1]...[xn;sn]", {0, 2, 0, 1}},
      {"partial-shift-poly", "Linear partial shift operators K[t1..tn][E1..En]", {0, 2, 0, 1}},
      {"partial-shift-rational", "Linear partial shift operators K(t1..tn)[E1..En]", {0, 1, 0, 1}},
      {"partial-differential-poly", "Linear partial differential operators K[t1..tn][D1..Dn]", {0, 2, 0, 1}},
      {"partial-differential-rational", "Linear partial differential operators K(t1..tn)[D1..Dn]", {0, 1, 0, 1}},
      {"partial-difference-poly", "Linear partial difference operators K[t1..tn][Delta1..Deltan]", {0, 2, 0, 1}},
      {"partial-difference-rational", "Linear partial difference operators K(t1..tn)[Delta1..Deltan]", {0, 1, 0, 1}},
      {"q-dilation-poly", "Linear partial q-dilation operators K[t1..tn][H1..Hm]", {0, 1, 1, 1}},
      {"q-dilation-rational", "Linear partial q-dilation operators K(t1..tn)[H1..Hm]", {0, 0, 1, 1}},
      {"q-differential-poly", "Linear partial q-differential operators K[t1..tn][D1..Dm]", {0, 1, 1, 1}},
      {"q-differential-rational", "Linear partial q-differential operators K(t1..tn)[D1..Dm]", {0, 0, 1, 1}},
      {"diffusion", "Diffusion algebras", {0, 2, 0, 1}},
      {"additive-analogue", "Additive analogue of the Weyl algebra A_n(q1..qn)", {0, 2, 0, 1}},
      {"multiplicative-analogue", "Multiplicative analogue of the Weyl algebra O_n(lambda_ji)", {0, 1, 0, 1}},
      {"u-so3", "Quantum algebra U'(so(3,K))", {0, 0, 0, 4}},
      {"skew-3dim", "3-dimensional skew polynomial algebras", {0, 0, 0, 4}},
      {"dispin", "Dispin algebra U(osp(1,2))", {0, 0, 0, 4}},
      {"woronowicz", "Woronowicz algebra W_nu(sl(2,K))", {0, 0, 0, 4}},
      {"vq-sl3", "Complex algebra V_q(sl_3(C))", {0, 0, 0, 11}},
      {"algebra-u", "Algebra U", {0, 3, 0, 1}},
      {"manin", "Manin algebra O_q(M_2(K))", {0, 0, 0, 5}},
      {"sl-q-2", "Coordinate algebra of the quantum group SL_q(2)", {0, 0, 0, 5}},
      {"q-heisenberg", "q-Heisenberg algebra H_n(q)", {0, 3, 0, 1}},
      {"uq-sl2", "Quantum enveloping algebra U_q(sl(2,K))", {0, 0, 0, 4}},
      {"hayashi", "Hayashi algebra W_q(J)", {0, 3, 0, 1}},
      {"quantum-space-diffops", "Differential operators on a quantum space D_q(S_q)", {0, 2, 0, 1}},
      {"witten", "Witten's deformation of U(sl(2,K))", {0, 0, 0, 4}},
      {"maltsiniotis", "Quantum Weyl algebra of Maltsiniotis A_n^{q,lambda}, K commutative", {1, 2, 0, 1}},
      {"quantum-weyl", "Quantum Weyl algebra A_n(q,p_ij)", {0, 2, 0, 1}},
      {"multiparameter-weyl", "Multiparameter Weyl algebra A_n^{Q,Gamma}(K)", {0, 2, 0, 1}},
      {"quantum-symplectic", "Quantum symplectic space O_q(sp(K^2n))", {0, 2, 0, 1}},
      {"quadratic-3", "Quadratic algebras in 3 variables", {0, 0, 0, 4}},
  };
  return rows;
}

namespace {

// Live ids that are not rows themselves resolve to a row with fixed data.
struct Alias {
  std::string_view id;
  std::string_view row;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> dim_r;
};

constexpr Alias kAliases[] = {
    {"quantum-plane", "multiplicative-analogue", 2, std::nullopt, std::nullopt},
    {"u-sl2", "enveloping", 3, std::nullopt, 0},
    {"weyl-ore", "ore-bijective", 1, std::nullopt, 1},
    {"q-dilation", "q-dilation-poly", 1, 1, std::nullopt},
};

const BoundRow* find_row(std::string_view id) {
  for (const auto& row : bound_rows()) {
    if (row.id == id) return &row;
  }
  return nullptr;
}

}  // namespace

BoundReport stable_rank_bound(std::string_view name, const BoundQuery& query) {
  BoundQuery q = query;
  const BoundRow* row = find_row(name);
  if (row == nullptr) {
    for (const auto& alias : kAliases) {
      if (alias.id != name) continue;
      row = find_row(alias.row);
      if (alias.n) {
        if (q.n && *q.n != *alias.n) throw BadParams(std::string(name) + " has n = " + std::to_string(*alias.n));
        q.n = alias.n;
      }
      if (alias.m) q.m = q.m.value_or(*alias.m);
      if (alias.dim_r) q.dim_r = q.dim_r.value_or(*alias.dim_r);
    }
  }
  if (row == nullptr) throw UnknownAlgebra("no bound is known for '" + std::string(name) + "'");

  const BoundFormula& f = row->formula;
  BoundReport report;
  report.algebra = row->id;
  report.title = row->title;
  report.formula = f.to_string();
  if (f.n != 0) {
    report.n = q.n.value_or(1);
    if (*report.n < 1) throw BadParams("n must be at least 1");
  }
  if (f.m != 0) {
    report.m = q.m.value_or(1);
    if (*report.m < 1) throw BadParams("m must be at least 1");
  }
  if (f.dim != 0) {
    if (!q.dim_r) throw MissingDimR("the bound for " + row->id + " depends on dim(R); supply it");
    if (*q.dim_r < 0) throw BadParams("dim(R) must be non-negative");
    report.dim_r = q.dim_r;
  }
  report.bound = f.dim * report.dim_r.value_or(0) + f.n * report.n.value_or(0) + f.m * report.m.value_or(0) +
                 f.constant;
  report.d_hermite = report.bound;
  return report;
}

int d_hermite_bound(std::string_view name, const BoundQuery& query) {
  return stable_rank_bound(name, query).d_hermite;
}

// ----------------------------------------------------------------- catalog

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"weyl", "Weyl algebra: x_i t_i = t_i x_i + 1, all other pairs commute", "n, p"},
      {"weyl-ore", "Weyl algebra as K[t][x; d/dt]: x t = t x + 1 with t in the coefficient ring", "p"},
      {"polynomial-ring", "commutative polynomial ring K[x_1..x_n]", "n, p"},
      {"quantum-plane", "quantum plane: y x = q x y", "q, p"},
      {"multiplicative-analogue", "x_j x_i = lambda_ji x_i x_j", "n, lambda (or q), p"},
      {"additive-analogue", "y_i x_i = q_i x_i y_i + 1, all other pairs commute", "n, qs (or q), p"},
      {"u-sl2", "enveloping algebra of sl2: y x = x y - z, z x = x z + 2x, z y = y z - 2y", "p"},
      {"dispin", "dispin algebra: y x = x y - x, z x = -x z + y, z y = y z - z", "p"},
      {"q-heisenberg", "q-Heisenberg algebra on x_i, y_i, z_i; different indices commute", "n, q, p"},
      {"manin", "Manin algebra O_q(M_2) over K[b] with variables a, c, d", "q, p"},
      {"shift-operators", "shift operators over K[t]: x t = (t - h) x", "h, p"},
      {"q-dilation", "q-dilation operator over K[t]: H t = q t H", "q, p"},
      {"woronowicz", "Woronowicz algebra W_nu(sl2) on x, y, z", "nu, p"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view id) {
  for (const auto& e : catalog_entries()) {
    if (e.id == id) return e;
  }
  throw UnknownAlgebra("unknown algebra '" + std::string(id) + "'");
}

namespace {

class Builder {
 public:
  Builder(std::string name, RingDescriptor ring, std::vector<std::string> vars)
      : p_(Presentation::polynomial(std::move(name), ring, std::move(vars))), ring_(p_.ring) {}

  const Ring& ring() const { return ring_; }
  RingElement scalar(const Rational& v) const { return ring_.from_rational(v); }

  // x_j x_i = c x_i x_j + d0 + sum d_k x_k, addressed by variable names.
  void rel(const std::string& later, const std::string& earlier, const RingElement& c,
           const RingElement& d0 = {}, std::vector<std::pair<std::string, RingElement>> linear = {}) {
    auto i = static_cast<std::size_t>(p_.index_of(earlier));
    auto j = static_cast<std::size_t>(p_.index_of(later));
    Affine low{d0, std::vector<RingElement>(p_.num_vars())};
    for (auto& [v, d] : linear) low.linear[static_cast<std::size_t>(p_.index_of(v))] = d;
    p_.set_relation(i, j, c, std::move(low));
  }

  void action(const std::string& var, std::optional<RingElement> sigma, std::optional<RingElement> delta) {
    p_.set_action(static_cast<std::size_t>(p_.index_of(var)), std::move(sigma), std::move(delta));
  }

  Presentation done() {
    check_structure(p_);
    return std::move(p_);
  }

 private:
  Presentation p_;
  Ring ring_;
};

RingDescriptor base_field(const CatalogParams& params) {
  const auto& f = params.field;
  if (f.kind == RingKind::PrimeField || f.kind == RingKind::Rationals) return f;
  throw BadParams("catalog algebras are built over F_p or Q");
}

RingDescriptor poly_over(const CatalogParams& params, const std::string& var) {
  auto f = base_field(params);
  return RingDescriptor::univariate(f.kind == RingKind::PrimeField ? f.modulus : 0, var);
}

std::vector<std::string> indexed(const std::string& stem, int n) {
  if (n == 1) return {stem};
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

RingElement nonzero_scalar(const Ring& ring, const Rational& v, const std::string& what) {
  RingElement e;
  try {
    e = ring.from_rational(v);
  } catch (const NotAUnit&) {
    throw BadParams(what + " = " + v.get_str() + " is not defined in this field");
  }
  if (e.is_zero()) throw BadParams(what + " must be nonzero in the coefficient field");
  return e;
}

void require_n(const CatalogParams& params) {
  if (params.n < 1) throw BadParams("n must be at least 1");
}

}  // namespace

Presentation build(std::string_view id, const CatalogParams& params) {
  catalog_entry(id);  // UnknownAlgebra
  const std::string name(id);
  RingDescriptor field = base_field(params);
  Ring k(field);
  RingElement one = k.one();
  RingElement minus_one = k.neg(one);

  if (id == "weyl") {
    require_n(params);
    auto ts = indexed("t", params.n);
    auto xs = indexed("x", params.n);
    std::vector<std::string> vars = ts;
    vars.insert(vars.end(), xs.begin(), xs.end());
    Builder b(name, field, vars);
    for (int i = 0; i < params.n; ++i) b.rel(xs[i], ts[i], one, one);
    return b.done();
  }
  if (id == "weyl-ore") {
    Builder b(name, poly_over(params, "t"), {"x"});
    b.action("x", std::nullopt, b.ring().one());
    return b.done();
  }
  if (id == "polynomial-ring") {
    require_n(params);
    return Builder(name, field, indexed("x", params.n)).done();
  }
  if (id == "quantum-plane") {
    Builder b(name, field, {"x", "y"});
    b.rel("y", "x", nonzero_scalar(k, params.q, "q"));
    return b.done();
  }
  if (id == "multiplicative-analogue") {
    require_n(params);
    auto xs = indexed("x", params.n);
    std::size_t pairs = static_cast<std::size_t>(params.n) * static_cast<std::size_t>(params.n - 1) / 2;
    if (!params.lambdas.empty() && params.lambdas.size() != pairs) {
      throw BadParams("expected " + std::to_string(pairs) + " lambda values");
    }
    Builder b(name, field, xs);
    std::size_t next = 0;
    for (int i = 0; i < params.n; ++i) {
      for (int j = i + 1; j < params.n; ++j) {
        const Rational& lam = params.lambdas.empty() ? params.q : params.lambdas[next++];
        b.rel(xs[j], xs[i], nonzero_scalar(k, lam, "lambda"));
      }
    }
    return b.done();
  }
  if (id == "additive-analogue") {
    require_n(params);
    if (!params.qs.empty() && params.qs.size() != static_cast<std::size_t>(params.n)) {
      throw BadParams("expected " + std::to_string(params.n) + " q values");
    }
    auto xs = indexed("x", params.n);
    auto ys = indexed("y", params.n);
    std::vector<std::string> vars = xs;
    vars.insert(vars.end(), ys.begin(), ys.end());
    Builder b(name, field, vars);
    for (int i = 0; i < params.n; ++i) {
      const Rational& qi = params.qs.empty() ? params.q : params.qs[i];
      b.rel(ys[i], xs[i], nonzero_scalar(k, qi, "q"), one);
    }
    return b.done();
  }
  if (id == "u-sl2") {
    Builder b(name, field, {"x", "y", "z"});
    RingElement two = k.from_integer(2);
    b.rel("y", "x", one, {}, {{"z", minus_one}});
    b.rel("z", "x", one, {}, {{"x", two}});
    b.rel("z", "y", one, {}, {{"y", k.neg(two)}});
    return b.done();
  }
  if (id == "dispin") {
    Builder b(name, field, {"x", "y", "z"});
    b.rel("y", "x", one, {}, {{"x", minus_one}});
    b.rel("z", "x", minus_one, {}, {{"y", one}});
    b.rel("z", "y", one, {}, {{"z", minus_one}});
    return b.done();
  }
  if (id == "q-heisenberg") {
    require_n(params);
    RingElement q = nonzero_scalar(k, params.q, "q");
    RingElement qinv = k.inv(q);
    auto xs = indexed("x", params.n);
    auto ys = indexed("y", params.n);
    auto zs = indexed("z", params.n);
    std::vector<std::string> vars;
    for (int i = 0; i < params.n; ++i) {
      vars.push_back(xs[i]);
      vars.push_back(ys[i]);
      vars.push_back(zs[i]);
    }
    Builder b(name, field, vars);
    for (int i = 0; i < params.n; ++i) {
      // x y - q y x = z, x z = q z x, z y = q y z
      b.rel(ys[i], xs[i], qinv, {}, {{zs[i], k.neg(qinv)}});
      b.rel(zs[i], xs[i], qinv);
      b.rel(zs[i], ys[i], q);
    }
    return b.done();
  }
  if (id == "manin") {
    // b is central-like up to q: a b = q b a, d b = q^-1 b d, c b = b c.
    Builder b(name, poly_over(params, "b"), {"a", "c", "d"});
    const Ring& r = b.ring();
    RingElement q = nonzero_scalar(r, params.q, "q");
    RingElement qinv = r.inv(q);
    RingElement gen = r.generator();
    b.action("a", r.mul(q, gen), std::nullopt);
    b.action("d", r.mul(qinv, gen), std::nullopt);
    b.rel("c", "a", qinv);
    b.rel("d", "a", r.one(), {}, {{"c", r.neg(r.mul(r.sub(q, qinv), gen))}});
    b.rel("d", "c", qinv);
    return b.done();
  }
  if (id == "shift-operators") {
    Builder b(name, poly_over(params, "t"), {"x"});
    const Ring& r = b.ring();
    RingElement h = r.from_rational(params.h);
    b.action("x", r.sub(r.generator(), h), std::nullopt);
    return b.done();
  }
  if (id == "q-dilation") {
    Builder b(name, poly_over(params, "t"), {"H"});
    const Ring& r = b.ring();
    b.action("H", r.mul(nonzero_scalar(r, params.q, "q"), r.generator()), std::nullopt);
    return b.done();
  }
  if (id == "woronowicz") {
    RingElement nu = nonzero_scalar(k, params.nu, "nu");
    RingElement nu2 = k.mul(nu, nu);
    RingElement nu4 = k.mul(nu2, nu2);
    RingElement one_nu2 = k.add(one, nu2);
    if (one_nu2.is_zero()) throw BadParams("woronowicz needs 1 + nu^2 != 0");
    Builder b(name, field, {"x", "y", "z"});
    // x y - nu^2 y x = nu z, x z - nu^4 z x = (1+nu^2) x, z y - nu^4 y z = (1+nu^2) y
    b.rel("y", "x", k.inv(nu2), {}, {{"z", k.neg(k.inv(nu))}});
    b.rel("z", "x", k.inv(nu4), {}, {{"x", k.neg(k.mul(k.inv(nu4), one_nu2))}});
    b.rel("z", "y", nu4, {}, {{"y", one_nu2}});
    return b.done();
  }
  throw UnknownAlgebra("unknown algebra '" + name + "'");
}

}  // namespace skewpbw
