#include "skewpbw/pbw.hpp"

#include <algorithm>
#include <set>

#include "skewpbw/errors.hpp"
#include "skewpbw/expr_parser.hpp"

namespace skewpbw {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += static_cast<int>(e);
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t k) {
  Monomial m(num_vars);
  m.exps_[k] = 1;
  m.degree_ = 1;
  return m;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += other.exps_[i];
  m.degree_ += other.degree_;
  return m;
}

Monomial Monomial::raised(std::size_t k, int delta) const {
  Monomial m = *this;
  m.exps_[k] = static_cast<std::uint32_t>(static_cast<int>(m.exps_[k]) + delta);
  m.degree_ += delta;
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.exps_.begin(), a.exps_.end(), b.exps_.begin(), b.exps_.end());
}

// ---------------------------------------------------------------- SkewPoly

RingElement SkewPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RingElement{} : it->second;
}

void SkewPoly::accumulate(const Monomial& m, const RingElement& c, const Ring& ring) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = ring.add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

int degree(const SkewPoly& f) {
  if (f.is_zero()) return kDegreeOfZero;
  return f.terms().rbegin()->first.degree();
}

bool Affine::is_zero() const {
  return constant.is_zero() && std::all_of(linear.begin(), linear.end(), [](const auto& d) { return d.is_zero(); });
}

// ------------------------------------------------------------ Presentation

Presentation Presentation::polynomial(std::string name, RingDescriptor ring, std::vector<std::string> variables) {
  Ring r(ring);
  std::size_t n = variables.size();
  Presentation p;
  p.name = std::move(name);
  p.ring = r.descriptor();
  p.variables = std::move(variables);
  p.sigma.assign(n, EndoSpec{});
  p.delta.assign(n, DerivationSpec{});
  p.c.assign(n, std::vector<RingElement>(n, r.one()));
  p.lower.assign(n, std::vector<Affine>(n, Affine{RingElement{}, std::vector<RingElement>(n)}));
  p.bijective = true;
  return p;
}

int Presentation::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == var) return static_cast<int>(i);
  }
  return -1;
}

void Presentation::set_relation(std::size_t i, std::size_t j, RingElement c_ij, Affine lower_ij) {
  if (i >= j || j >= num_vars()) throw SemanticError("relations are indexed by i < j");
  lower_ij.linear.resize(num_vars());
  c[i][j] = std::move(c_ij);
  lower[i][j] = std::move(lower_ij);
}

void Presentation::set_action(std::size_t i, std::optional<RingElement> sigma_image,
                              std::optional<RingElement> delta_image) {
  if (i >= num_vars()) throw SemanticError("variable index out of range");
  Ring r(ring);
  if (sigma_image && *sigma_image == r.generator()) sigma_image.reset();
  if (delta_image && delta_image->is_zero()) delta_image.reset();
  sigma[i] = EndoSpec{std::move(sigma_image), true};
  delta[i] = DerivationSpec{std::move(delta_image), sigma[i]};
}

void check_structure(const Presentation& p) {
  Ring ring(p.ring);
  std::size_t n = p.num_vars();
  if (n == 0) throw SemanticError("a presentation needs at least one variable");
  switch (ring.kind()) {
    case RingKind::PrimeField:
    case RingKind::Rationals:
    case RingKind::UnivariatePoly:
      break;
    case RingKind::Residue:
      if (!ring.is_field()) {
        throw SemanticError("Z/" + std::to_string(p.ring.modulus) +
                            " is not a domain; composite residue rings are not allowed as coefficient rings");
      }
      break;
    case RingKind::QuotientPoly:
      throw SemanticError("quotient rings are not allowed as coefficient rings of a presentation");
  }
  std::set<std::string> seen;
  for (const auto& v : p.variables) {
    if (v.empty() || !is_identifier_start(v[0]) ||
        !std::all_of(v.begin(), v.end(), [](char ch) { return is_identifier_char(ch); })) {
      throw SemanticError("invalid variable name '" + v + "'");
    }
    if (!seen.insert(v).second) throw SemanticError("duplicate variable '" + v + "'");
    if (v == ring.variable()) throw SemanticError("variable '" + v + "' clashes with the coefficient generator");
  }
  if (p.sigma.size() != n || p.delta.size() != n || p.c.size() != n || p.lower.size() != n) {
    throw SemanticError("presentation data does not match the number of variables");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = p.sigma[i];
    const auto& d = p.delta[i];
    if ((!s.is_identity() || !d.is_zero()) && !ring.is_polynomial()) {
      throw SemanticError("sigma/delta for '" + p.variables[i] + "' need a polynomial coefficient ring");
    }
    if (s.generator_image) ring.require(*s.generator_image);
    if (d.generator_image) ring.require(*d.generator_image);
    if (!(d.twist == s)) throw SemanticError("delta of '" + p.variables[i] + "' must be twisted by its sigma");
    if (p.c[i].size() != n || p.lower[i].size() != n) throw SemanticError("relation table has the wrong shape");
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& cij = p.c[i][j];
      ring.require(cij);
      if (cij.is_zero()) {
        throw SemanticError("c_{" + p.variables[i] + "," + p.variables[j] + "} must be nonzero");
      }
      if (p.bijective && !ring.is_unit(cij)) {
        throw SemanticError("c_{" + p.variables[i] + "," + p.variables[j] + "} = " + ring.to_string(cij) +
                            " is not a unit in a bijective presentation");
      }
      const auto& low = p.lower[i][j];
      if (low.linear.size() != n) throw SemanticError("lower term has the wrong number of coefficients");
      ring.require(low.constant);
      for (const auto& dk : low.linear) ring.require(dk);
    }
  }
}

// ----------------------------------------------------------------- Algebra

Algebra::Algebra(Presentation p) : pres_(std::move(p)), ring_(pres_.ring) {
  check_structure(pres_);
  for (std::size_t i = 0; i < pres_.num_vars(); ++i) {
    if (!pres_.sigma[i].is_identity() || !pres_.delta[i].is_zero()) central_ = false;
  }
}

SkewPoly Algebra::constant(const RingElement& r) const { return term(r, Monomial(num_vars())); }

SkewPoly Algebra::variable(std::size_t k) const { return term(ring_.one(), Monomial::variable(num_vars(), k)); }

SkewPoly Algebra::term(const RingElement& c, const Monomial& m) const {
  SkewPoly f;
  f.accumulate(m, c, ring_);
  return f;
}

SkewPoly Algebra::add(const SkewPoly& f, const SkewPoly& g) const {
  SkewPoly out = f;
  for (const auto& [m, c] : g.terms()) out.accumulate(m, c, ring_);
  return out;
}

SkewPoly Algebra::neg(const SkewPoly& f) const {
  SkewPoly out;
  for (const auto& [m, c] : f.terms()) out.accumulate(m, ring_.neg(c), ring_);
  return out;
}

SkewPoly Algebra::sub(const SkewPoly& f, const SkewPoly& g) const { return add(f, neg(g)); }

SkewPoly Algebra::scale(const RingElement& r, const SkewPoly& f) const {
  SkewPoly out;
  add_scaled_into(out, r, f);
  return out;
}

void Algebra::add_scaled_into(SkewPoly& acc, const RingElement& r, const SkewPoly& f) const {
  if (r.is_zero()) return;
  bool unit = ring_.is_one(r);
  for (const auto& [m, c] : f.terms()) acc.accumulate(m, unit ? c : ring_.mul(r, c), ring_);
}

SkewPoly Algebra::commute_coefficient(const Monomial& a, const RingElement& r) const {
  if (central_ || ring_.is_constant(r) || a.degree() == 0) return term(r, a);
  // Apply x_k on the left one power at a time, last variable first; at each
  // stage every monomial only involves variables >= k, so x_k stays in order.
  SkewPoly acc = constant(r);
  for (std::size_t k = num_vars(); k-- > 0;) {
    for (std::uint32_t step = 0; step < a[k]; ++step) {
      SkewPoly next;
      for (const auto& [m, c] : acc.terms()) {
        next.accumulate(m.raised(k, 1), apply_endo(pres_.sigma[k], c, ring_), ring_);
        next.accumulate(m, apply_derivation(pres_.delta[k], c, ring_), ring_);
      }
      acc = std::move(next);
    }
  }
  return acc;
}

SkewPoly Algebra::monomial_times_variable(const Monomial& a, std::size_t k) const {
  std::size_t n = num_vars();
  std::size_t top = n;
  for (std::size_t m = n; m-- > k + 1;) {
    if (a[m] > 0) {
      top = m;
      break;
    }
  }
  if (top == n) return term(ring_.one(), a.raised(k, 1));

  auto key = std::make_pair(a, k);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = var_cache_.find(key); it != var_cache_.end()) return it->second;
  }

  // x^a x_k = x^{a'} (x_top x_k) = x^{a'} (c x_k x_top + sum_l d_l x_l + d_0)
  Monomial rest = a.raised(top, -1);
  const RingElement& c = pres_.c[k][top];
  const Affine& low = pres_.lower[k][top];
  SkewPoly result = mul_var_right(mul_var_right(commute_coefficient(rest, c), k), top);
  for (std::size_t l = 0; l < n; ++l) {
    if (low.linear[l].is_zero()) continue;
    result = add(result, mul_var_right(commute_coefficient(rest, low.linear[l]), l));
  }
  if (!low.constant.is_zero()) result = add(result, commute_coefficient(rest, low.constant));

  std::lock_guard lock(cache_mutex_);
  var_cache_.emplace(std::move(key), result);
  return result;
}

SkewPoly Algebra::mul_var_right(const SkewPoly& f, std::size_t k) const {
  SkewPoly out;
  for (const auto& [m, c] : f.terms()) add_scaled_into(out, c, monomial_times_variable(m, k));
  return out;
}

SkewPoly Algebra::monomial_product(const Monomial& a, const Monomial& b) const {
  if (b.degree() == 0) return term(ring_.one(), a);
  std::size_t n = num_vars();
  std::size_t first_b = 0;
  while (b[first_b] == 0) ++first_b;
  bool ordered = true;
  for (std::size_t m = first_b + 1; m < n; ++m) {
    if (a[m] > 0) {
      ordered = false;
      break;
    }
  }
  if (ordered) return term(ring_.one(), a.times(b));

  auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = mono_cache_.find(key); it != mono_cache_.end()) return it->second;
  }
  SkewPoly acc = term(ring_.one(), a);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::uint32_t step = 0; step < b[k]; ++step) acc = mul_var_right(acc, k);
  }
  std::lock_guard lock(cache_mutex_);
  mono_cache_.emplace(std::move(key), acc);
  return acc;
}

SkewPoly Algebra::multiply(const SkewPoly& f, const SkewPoly& g) const {
  SkewPoly acc;
  for (const auto& [alpha, a] : f.terms()) {
    for (const auto& [beta, b] : g.terms()) {
      SkewPoly moved = commute_coefficient(alpha, b);
      for (const auto& [gamma, e] : moved.terms()) {
        add_scaled_into(acc, ring_.mul(a, e), monomial_product(gamma, beta));
      }
    }
  }
  return acc;
}

SkewPoly Algebra::pow(const SkewPoly& f, unsigned long e) const {
  SkewPoly result = one();
  for (unsigned long i = 0; i < e; ++i) result = multiply(result, f);
  return result;
}

std::vector<Monomial> Algebra::monomials_up_to(int bound) const {
  std::vector<Monomial> out;
  std::size_t n = num_vars();
  std::vector<std::uint32_t> exps(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      out.emplace_back(exps);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[i] = static_cast<std::uint32_t>(e);
      self(self, i + 1, remaining - e);
    }
    exps[i] = 0;
  };
  if (bound >= 0) rec(rec, 0, bound);
  std::sort(out.begin(), out.end());
  return out;
}

SkewPoly Algebra::random(Rng& rng, int degree_bound, double density, int coeff_degree) const {
  SkewPoly f;
  auto threshold = static_cast<std::uint64_t>(density * 1000.0);
  for (const auto& m : monomials_up_to(degree_bound)) {
    if (draw_below(rng, 1000) < threshold) f.accumulate(m, ring_.random(rng, coeff_degree), ring_);
  }
  return f;
}

namespace {

struct AlgebraBuilder {
  using Value = SkewPoly;
  const Algebra& algebra;

  Value from_integer(const Integer& v) const { return algebra.constant(algebra.ring().from_integer(v)); }
  Value from_identifier(const std::string& name, std::size_t line, std::size_t column) const {
    int k = algebra.presentation().index_of(name);
    if (k >= 0) return algebra.variable(static_cast<std::size_t>(k));
    if (!algebra.ring().variable().empty() && name == algebra.ring().variable()) {
      return algebra.constant(algebra.ring().generator());
    }
    throw ParseError("unknown identifier '" + name + "'", line, column);
  }
  Value add(const Value& a, const Value& b) const { return algebra.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return algebra.sub(a, b); }
  Value neg(const Value& a) const { return algebra.neg(a); }
  Value mul(const Value& a, const Value& b) const { return algebra.multiply(a, b); }
  Value pow(const Value& a, unsigned long e) const { return algebra.pow(a, e); }
  Value divide(const Value& a, const Integer& d) const {
    const Ring& r = algebra.ring();
    return algebra.scale(r.inv(r.from_integer(d)), a);
  }
};

std::string monomial_string(const Presentation& p, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += p.variables[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

SkewPoly Algebra::parse(std::string_view text, std::size_t line) const {
  return parse_expression(text, AlgebraBuilder{*this}, line);
}

std::string Algebra::to_string(const SkewPoly& f) const {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coeff = ring_.to_string(c);
    bool compound = coeff.find(' ') != std::string::npos;
    std::string mono = monomial_string(pres_, m);
    bool negative = false;
    if ((!compound || mono.empty()) && !coeff.empty() && coeff[0] == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    std::string body;
    if (mono.empty()) {
      body = coeff;
    } else if (coeff == "1") {
      body = mono;
    } else if (compound) {
      body = "(" + coeff + ")*" + mono;
    } else {
      body = coeff + "*" + mono;
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

SkewPoly normalize_word(const Algebra& algebra, const std::vector<WordToken>& word) {
  SkewPoly acc = algebra.one();
  for (const auto& tok : word) {
    acc = algebra.multiply(acc, tok.is_variable ? algebra.variable(tok.var) : algebra.constant(tok.coeff));
  }
  return acc;
}

// -------------------------------------------------------------- validation

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

CheckResult from_law(const LawCheck& law, const std::string& var) {
  CheckResult r;
  r.name = law.name + " (" + var + ")";
  r.samples = law.samples;
  r.failures = law.failures;
  r.passed = law.passed();
  r.detail = law.first_failure;
  return r;
}

}  // namespace

ValidationReport validate_presentation(const Presentation& p, const ValidationOptions& options) {
  ValidationReport report;
  report.seed = options.seed;
  try {
    check_structure(p);
  } catch (const SemanticError& e) {
    report.checks.push_back({"structure", false, 1, 1, e.what()});
    return report;
  }
  Algebra algebra(p);
  const Ring& ring = algebra.ring();
  std::size_t n = p.num_vars();
  Rng rng(options.seed);

  CheckResult nonzero{"constants c_ij nonzero", true, 0, 0, {}};
  CheckResult units{"constants c_ij units", true, 0, 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++nonzero.samples;
      ++units.samples;
      if (p.c[i][j].is_zero()) ++nonzero.failures;
      if (!ring.is_unit(p.c[i][j])) {
        if (units.failures++ == 0) units.detail = "c_{" + p.variables[i] + "," + p.variables[j] + "}";
      }
    }
  }
  nonzero.passed = nonzero.failures == 0;
  units.passed = units.failures == 0 || !p.bijective;
  report.checks.push_back(nonzero);
  if (p.bijective) report.checks.push_back(units);

  CheckResult injective{"sigma injective", true, 0, 0, {}};
  CheckResult bijective{"sigma bijective", true, 0, 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    ++injective.samples;
    ++bijective.samples;
    if (!endo_is_injective(p.sigma[i], ring)) {
      ++injective.failures;
      injective.detail = "sigma of " + p.variables[i];
    }
    if (!endo_is_bijective(p.sigma[i], ring)) {
      ++bijective.failures;
      bijective.detail = "sigma of " + p.variables[i];
    }
  }
  injective.passed = injective.failures == 0;
  bijective.passed = bijective.failures == 0;
  report.checks.push_back(injective);
  if (p.bijective) report.checks.push_back(bijective);

  for (std::size_t i = 0; i < n; ++i) {
    if (!p.sigma[i].is_identity()) {
      report.checks.push_back(from_law(check_endo_laws(p.sigma[i], ring, options.samples, rng), p.variables[i]));
    }
    if (!p.delta[i].is_zero()) {
      report.checks.push_back(
          from_law(check_derivation_laws(p.delta[i], ring, options.samples, rng), p.variables[i]));
    }
  }

  CheckResult triples{"associativity on generator triples", true, 0, 0, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        ++triples.samples;
        SkewPoly xk = algebra.variable(k), xj = algebra.variable(j), xi = algebra.variable(i);
        SkewPoly left = algebra.multiply(algebra.multiply(xk, xj), xi);
        SkewPoly right = algebra.multiply(xk, algebra.multiply(xj, xi));
        if (left != right) {
          if (triples.failures++ == 0) {
            std::string word = p.variables[k] + "*" + p.variables[j] + "*" + p.variables[i];
            triples.detail = "(" + p.variables[k] + "*" + p.variables[j] + ")*" + p.variables[i] + " = " +
                             algebra.to_string(left) + " but " + p.variables[k] + "*(" + p.variables[j] + "*" +
                             p.variables[i] + ") = " + algebra.to_string(right) + " [" + word + "]";
          }
        }
      }
    }
  }
  triples.passed = triples.failures == 0;
  report.checks.push_back(triples);

  CheckResult mixed{"associativity with coefficients", true, 0, 0, {}};
  std::size_t coeff_samples = algebra.coefficients_central() ? std::min<std::size_t>(options.samples, 5)
                                                             : std::min<std::size_t>(options.samples, 50);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t s = 0; s < coeff_samples; ++s) {
        RingElement r = ring.random(rng, 3);
        ++mixed.samples;
        SkewPoly xj = algebra.variable(j), xi = algebra.variable(i), cr = algebra.constant(r);
        SkewPoly left = algebra.multiply(algebra.multiply(xj, xi), cr);
        SkewPoly right = algebra.multiply(xj, algebra.multiply(xi, cr));
        if (left != right && mixed.failures++ == 0) {
          mixed.detail = "(" + p.variables[j] + "*" + p.variables[i] + ")*(" + ring.to_string(r) +
                         ") = " + algebra.to_string(left) + " but " + p.variables[j] + "*(" + p.variables[i] +
                         "*(" + ring.to_string(r) + ")) = " + algebra.to_string(right);
        }
      }
    }
  }
  mixed.passed = mixed.failures == 0;
  report.checks.push_back(mixed);
  return report;
}

Presentation associated_graded(const Presentation& p) {
  Presentation g = p;
  std::size_t n = p.num_vars();
  for (std::size_t i = 0; i < n; ++i) {
    g.delta[i] = DerivationSpec{std::nullopt, g.sigma[i]};
    for (std::size_t j = 0; j < n; ++j) g.lower[i][j] = Affine{RingElement{}, std::vector<RingElement>(n)};
  }
  return g;
}

bool is_quasi_commutative(const Presentation& p) {
  std::size_t n = p.num_vars();
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.delta[i].is_zero()) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!p.lower[i][j].is_zero()) return false;
    }
  }
  return true;
}

ZeroDivisorReport zero_divisor_probe(const Algebra& algebra, std::size_t trials, int degree_bound,
                                     std::uint64_t seed) {
  if (!algebra.ring().is_domain()) throw PreconditionFailed("zero-divisor probe needs a domain as coefficient ring");
  ZeroDivisorReport report;
  report.seed = seed;
  Rng rng(seed);
  auto nonzero = [&]() {
    for (;;) {
      SkewPoly f = algebra.random(rng, degree_bound, 0.5);
      if (!f.is_zero()) return f;
    }
  };
  for (std::size_t t = 0; t < trials; ++t) {
    SkewPoly f = nonzero();
    SkewPoly g = nonzero();
    SkewPoly fg = algebra.multiply(f, g);
    ++report.trials;
    if (fg.is_zero()) {
      report.counterexamples.emplace_back(algebra.to_string(f), algebra.to_string(g));
    } else if (degree(fg) < degree(f) + degree(g)) {
      ++report.degree_drops;
    }
  }
  return report;
}

}  // namespace skewpbw
