#include "skewpbw/coeff_ring.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "skewpbw/errors.hpp"
#include "skewpbw/expr_parser.hpp"

namespace skewpbw {

namespace {

std::int64_t mod_reduce(const Integer& v, std::int64_t m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r.get_si();
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

// Inverse of a modulo m via the extended Euclidean algorithm.
std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = a % m;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) return std::nullopt;
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

const Rational& as_rational(const Scalar& s) {
  const auto* q = std::get_if<Rational>(&s);
  if (q == nullptr) throw KindMismatch("expected a rational scalar");
  return *q;
}

std::int64_t as_residue(const Scalar& s) {
  const auto* r = std::get_if<std::int64_t>(&s);
  if (r == nullptr) throw KindMismatch("expected a modular scalar");
  return *r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- BaseRing

BaseRing BaseRing::modular(std::int64_t m) {
  if (m < 2) throw BadParams("modulus must be at least 2, got " + std::to_string(m));
  BaseRing b;
  b.modulus_ = m;
  b.prime_ = is_prime(m);
  return b;
}

Scalar BaseRing::zero() const {
  if (is_rational()) return Rational(0);
  return std::int64_t{0};
}

Scalar BaseRing::one() const {
  if (is_rational()) return Rational(1);
  return std::int64_t{1};
}

Scalar BaseRing::from_integer(const Integer& v) const {
  if (is_rational()) return Rational(v);
  return mod_reduce(v, modulus_);
}

Scalar BaseRing::from_rational(const Rational& v) const {
  if (is_rational()) return v;
  std::int64_t num = mod_reduce(v.get_num(), modulus_);
  std::int64_t den = mod_reduce(v.get_den(), modulus_);
  auto inv = mod_inverse(den, modulus_);
  if (!inv) throw NotAUnit("denominator " + v.get_den().get_str() + " is not invertible modulo " +
                           std::to_string(modulus_));
  return mod_mul(num, *inv, modulus_);
}

Scalar BaseRing::add(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return Rational(as_rational(a) + as_rational(b));
  std::int64_t s = as_residue(a) + as_residue(b);
  return s >= modulus_ ? s - modulus_ : s;
}

Scalar BaseRing::sub(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return Rational(as_rational(a) - as_rational(b));
  std::int64_t s = as_residue(a) - as_residue(b);
  return s < 0 ? s + modulus_ : s;
}

Scalar BaseRing::mul(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return Rational(as_rational(a) * as_rational(b));
  return mod_mul(as_residue(a), as_residue(b), modulus_);
}

Scalar BaseRing::neg(const Scalar& a) const {
  if (is_rational()) return Rational(-as_rational(a));
  std::int64_t r = as_residue(a);
  return r == 0 ? 0 : modulus_ - r;
}

bool BaseRing::is_zero(const Scalar& a) const {
  if (is_rational()) return as_rational(a) == 0;
  return as_residue(a) == 0;
}

bool BaseRing::is_one(const Scalar& a) const {
  if (is_rational()) return as_rational(a) == 1;
  return as_residue(a) == 1;
}

std::optional<Scalar> BaseRing::inverse(const Scalar& a) const {
  if (is_rational()) {
    const Rational& q = as_rational(a);
    if (q == 0) return std::nullopt;
    return Rational(1 / q);
  }
  auto inv = mod_inverse(as_residue(a), modulus_);
  if (!inv) return std::nullopt;
  return *inv;
}

bool BaseRing::contains(const Scalar& a) const {
  if (is_rational()) return std::holds_alternative<Rational>(a);
  const auto* r = std::get_if<std::int64_t>(&a);
  return r != nullptr && *r >= 0 && *r < modulus_;
}

Scalar BaseRing::random(Rng& rng) const {
  if (is_rational()) {
    Rational q(draw_between(rng, -4, 4), draw_between(rng, 1, 3));
    q.canonicalize();
    return q;
  }
  return static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(modulus_)));
}

std::string BaseRing::to_string(const Scalar& a) const {
  if (is_rational()) return as_rational(a).get_str();
  return std::to_string(as_residue(a));
}

bool BaseRing::is_negative(const Scalar& a) const {
  return is_rational() && as_rational(a) < 0;
}

// ---------------------------------------------------------- RingDescriptor

RingDescriptor RingDescriptor::prime_field(std::int64_t p) {
  return {RingKind::PrimeField, p, "", {}};
}

RingDescriptor RingDescriptor::rationals() { return {RingKind::Rationals, 0, "", {}}; }

RingDescriptor RingDescriptor::residue(std::int64_t n) { return {RingKind::Residue, n, "", {}}; }

RingDescriptor RingDescriptor::univariate(std::int64_t base_prime, std::string variable) {
  return {RingKind::UnivariatePoly, base_prime, std::move(variable), {}};
}

RingDescriptor RingDescriptor::quotient_poly(std::int64_t p, std::vector<std::int64_t> monic_modulus,
                                             std::string variable) {
  return {RingKind::QuotientPoly, p, std::move(variable), std::move(monic_modulus)};
}

// -------------------------------------------------------------------- Ring

Ring::Ring(RingDescriptor descriptor) : desc_(std::move(descriptor)) {
  switch (desc_.kind) {
    case RingKind::PrimeField:
      if (!is_prime(desc_.modulus)) throw BadParams("F_p needs a prime p, got " + std::to_string(desc_.modulus));
      base_ = BaseRing::modular(desc_.modulus);
      desc_.variable.clear();
      break;
    case RingKind::Rationals:
      base_ = BaseRing::rationals();
      desc_.modulus = 0;
      desc_.variable.clear();
      break;
    case RingKind::Residue:
      base_ = BaseRing::modular(desc_.modulus);
      desc_.variable.clear();
      break;
    case RingKind::UnivariatePoly:
      if (desc_.modulus != 0 && !is_prime(desc_.modulus)) {
        throw BadParams("polynomial base must be F_p or Q, got modulus " + std::to_string(desc_.modulus));
      }
      base_ = desc_.modulus == 0 ? BaseRing::rationals() : BaseRing::modular(desc_.modulus);
      if (desc_.variable.empty()) throw BadParams("polynomial ring needs a variable name");
      break;
    case RingKind::QuotientPoly: {
      if (!is_prime(desc_.modulus)) throw BadParams("quotient ring needs a prime p");
      base_ = BaseRing::modular(desc_.modulus);
      std::vector<Scalar> f;
      for (auto c : desc_.quotient) f.push_back(base_.from_integer(Integer(static_cast<long>(c))));
      while (!f.empty() && base_.is_zero(f.back())) f.pop_back();
      if (f.size() < 2) throw BadParams("quotient modulus must have degree >= 1");
      if (!base_.is_one(f.back())) throw BadParams("quotient modulus must be monic");
      desc_.quotient.clear();
      for (const auto& c : f) desc_.quotient.push_back(std::get<std::int64_t>(c));
      quotient_ = std::move(f);
      if (desc_.variable.empty()) desc_.variable = "x";
      break;
    }
  }
}

bool Ring::is_field() const noexcept {
  switch (desc_.kind) {
    case RingKind::PrimeField:
    case RingKind::Rationals:
      return true;
    case RingKind::Residue:
      return is_prime(desc_.modulus);
    default:
      return false;
  }
}

bool Ring::is_domain() const noexcept {
  // Quotient rings are reported conservatively: irreducibility is not tested here.
  return is_field() || desc_.kind == RingKind::UnivariatePoly;
}

bool Ring::is_finite() const noexcept {
  return desc_.kind == RingKind::PrimeField || desc_.kind == RingKind::Residue ||
         desc_.kind == RingKind::QuotientPoly;
}

std::uint64_t Ring::size() const {
  if (!is_finite()) throw InfiniteRing("ring is infinite");
  std::uint64_t n = static_cast<std::uint64_t>(desc_.modulus);
  if (desc_.kind != RingKind::QuotientPoly) return n;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i + 1 < quotient_.size(); ++i) total *= n;
  return total;
}

RingElement Ring::one() const { return RingElement({base_.one()}); }

RingElement Ring::from_integer(const Integer& v) const { return make({base_.from_integer(v)}); }

RingElement Ring::from_rational(const Rational& v) const { return make({base_.from_rational(v)}); }

RingElement Ring::from_scalar(const Scalar& s) const { return make({s}); }

RingElement Ring::generator() const {
  if (desc_.kind != RingKind::UnivariatePoly && desc_.kind != RingKind::QuotientPoly) {
    throw KindMismatch("ring has no generator");
  }
  return make({base_.zero(), base_.one()});
}

std::vector<Scalar> Ring::trim(std::vector<Scalar> coeffs) const {
  while (!coeffs.empty() && base_.is_zero(coeffs.back())) coeffs.pop_back();
  return coeffs;
}

std::vector<Scalar> Ring::reduce(std::vector<Scalar> coeffs) const {
  coeffs = trim(std::move(coeffs));
  if (desc_.kind == RingKind::QuotientPoly) {
    std::size_t d = quotient_.size() - 1;
    while (coeffs.size() > d) {
      Scalar lead = coeffs.back();
      std::size_t shift = coeffs.size() - 1 - d;
      for (std::size_t i = 0; i <= d; ++i) {
        coeffs[shift + i] = base_.sub(coeffs[shift + i], base_.mul(lead, quotient_[i]));
      }
      coeffs = trim(std::move(coeffs));
    }
  }
  return coeffs;
}

RingElement Ring::make(std::vector<Scalar> coefficients) const {
  for (const auto& c : coefficients) {
    if (!base_.contains(c)) throw KindMismatch("scalar does not belong to the base ring");
  }
  auto reduced = reduce(std::move(coefficients));
  if (reduced.size() > 1 && desc_.kind != RingKind::UnivariatePoly && desc_.kind != RingKind::QuotientPoly) {
    throw KindMismatch("polynomial data given for a scalar ring");
  }
  return RingElement(std::move(reduced));
}

void Ring::require(const RingElement& a) const {
  if (!contains(a)) throw KindMismatch("element is not a canonical member of the ring");
}

bool Ring::contains(const RingElement& a) const {
  const auto& c = a.coefficients();
  for (const auto& s : c) {
    if (!base_.contains(s)) return false;
  }
  if (!c.empty() && base_.is_zero(c.back())) return false;
  switch (desc_.kind) {
    case RingKind::UnivariatePoly:
      return true;
    case RingKind::QuotientPoly:
      return c.size() < quotient_.size();
    default:
      return c.size() <= 1;
  }
}

RingElement Ring::add(const RingElement& a, const RingElement& b) const {
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  std::vector<Scalar> out(std::max(x.size(), y.size()), base_.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < x.size() && i < y.size()) {
      out[i] = base_.add(x[i], y[i]);
    } else {
      out[i] = i < x.size() ? x[i] : y[i];
    }
  }
  return RingElement(trim(std::move(out)));
}

RingElement Ring::neg(const RingElement& a) const {
  std::vector<Scalar> out;
  out.reserve(a.coefficients().size());
  for (const auto& s : a.coefficients()) out.push_back(base_.neg(s));
  return RingElement(std::move(out));
}

RingElement Ring::sub(const RingElement& a, const RingElement& b) const { return add(a, neg(b)); }

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  if (x.empty() || y.empty()) return {};
  if (x.size() == 1 && y.size() == 1) return RingElement(trim({base_.mul(x[0], y[0])}));
  std::vector<Scalar> out(x.size() + y.size() - 1, base_.zero());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (base_.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      out[i + j] = base_.add(out[i + j], base_.mul(x[i], y[j]));
    }
  }
  return RingElement(reduce(std::move(out)));
}

RingElement Ring::pow(const RingElement& a, unsigned long e) const {
  RingElement result = one();
  RingElement base = a;
  while (e > 0) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

std::optional<RingElement> Ring::unit_inverse(const RingElement& a) const {
  const auto& c = a.coefficients();
  if (c.empty()) return std::nullopt;
  if (desc_.kind != RingKind::QuotientPoly) {
    if (c.size() != 1) return std::nullopt;  // non-constant polynomial over a field
    auto inv = base_.inverse(c[0]);
    if (!inv) return std::nullopt;
    return RingElement({*inv});
  }
  // Extended Euclid in F_p[x] on (modulus, a), tracking the cofactor of a.
  auto poly_sub_scaled = [&](std::vector<Scalar> p, const std::vector<Scalar>& q, const Scalar& s,
                             std::size_t shift) {
    if (p.size() < q.size() + shift) p.resize(q.size() + shift, base_.zero());
    for (std::size_t i = 0; i < q.size(); ++i) p[i + shift] = base_.sub(p[i + shift], base_.mul(s, q[i]));
    return trim(std::move(p));
  };
  std::vector<Scalar> r0 = quotient_, r1 = c;
  std::vector<Scalar> s0, s1 = {base_.one()};
  while (!r1.empty()) {
    // (r0, s0) <- (r0 - q r1, s0 - q s1), done one leading term at a time.
    Scalar lead_inv = *base_.inverse(r1.back());
    while (!r0.empty() && r0.size() >= r1.size()) {
      Scalar factor = base_.mul(r0.back(), lead_inv);
      std::size_t shift = r0.size() - r1.size();
      r0 = poly_sub_scaled(std::move(r0), r1, factor, shift);
      s0 = poly_sub_scaled(std::move(s0), s1, factor, shift);
    }
    std::swap(r0, r1);
    std::swap(s0, s1);
  }
  if (r0.size() != 1) return std::nullopt;
  Scalar scale = *base_.inverse(r0[0]);
  for (auto& s : s0) s = base_.mul(s, scale);
  return RingElement(reduce(std::move(s0)));
}

RingElement Ring::inv(const RingElement& a) const {
  auto w = unit_inverse(a);
  if (!w) throw NotAUnit(to_string(a) + " is not a unit");
  return *w;
}

std::vector<RingElement> Ring::enumerate() const {
  std::uint64_t n = size();
  std::vector<RingElement> out;
  out.reserve(n);
  std::int64_t p = desc_.modulus;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    std::vector<Scalar> coeffs;
    std::uint64_t rest = idx;
    do {
      coeffs.push_back(static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(p)));
      rest /= static_cast<std::uint64_t>(p);
    } while (rest > 0);
    out.push_back(RingElement(trim(std::move(coeffs))));
  }
  return out;
}

std::uint64_t Ring::index_of(const RingElement& a) const {
  if (!is_finite()) throw InfiniteRing("ring is infinite");
  require(a);
  std::uint64_t idx = 0;
  const auto& c = a.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    idx = idx * static_cast<std::uint64_t>(desc_.modulus) + static_cast<std::uint64_t>(std::get<std::int64_t>(c[i]));
  }
  return idx;
}

RingElement Ring::random(Rng& rng, int degree_bound) const {
  switch (desc_.kind) {
    case RingKind::UnivariatePoly: {
      std::vector<Scalar> coeffs;
      int deg = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(std::max(degree_bound, 0) + 1)));
      for (int i = 0; i <= deg; ++i) coeffs.push_back(base_.random(rng));
      return RingElement(trim(std::move(coeffs)));
    }
    case RingKind::QuotientPoly: {
      std::vector<Scalar> coeffs;
      for (std::size_t i = 0; i + 1 < quotient_.size(); ++i) coeffs.push_back(base_.random(rng));
      return RingElement(trim(std::move(coeffs)));
    }
    default:
      return RingElement(trim({base_.random(rng)}));
  }
}

std::string Ring::to_string(const RingElement& a) const {
  const auto& c = a.coefficients();
  if (c.empty()) return "0";
  if (c.size() == 1) return base_.to_string(c[0]);
  std::string out;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (base_.is_zero(c[k])) continue;
    bool negative = base_.is_negative(c[k]);
    Scalar mag = negative ? base_.neg(c[k]) : c[k];
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string var = k == 0 ? "" : (k == 1 ? desc_.variable : desc_.variable + "^" + std::to_string(k));
    if (k == 0) {
      out += base_.to_string(mag);
    } else if (base_.is_one(mag)) {
      out += var;
    } else {
      out += base_.to_string(mag) + "*" + var;
    }
  }
  return out;
}

namespace {

struct RingBuilder {
  using Value = RingElement;
  const Ring& ring;

  Value from_integer(const Integer& v) const { return ring.from_integer(v); }
  Value from_identifier(const std::string& name, std::size_t line, std::size_t column) const {
    if (!ring.variable().empty() && name == ring.variable()) return ring.generator();
    throw ParseError("unknown identifier '" + name + "'", line, column);
  }
  Value add(const Value& a, const Value& b) const { return ring.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return ring.sub(a, b); }
  Value neg(const Value& a) const { return ring.neg(a); }
  Value mul(const Value& a, const Value& b) const { return ring.mul(a, b); }
  Value pow(const Value& a, unsigned long e) const { return ring.pow(a, e); }
  Value divide(const Value& a, const Integer& d) const { return ring.mul(a, ring.inv(ring.from_integer(d))); }
};

}  // namespace

RingElement Ring::parse(std::string_view text, std::size_t line) const {
  return parse_expression(text, RingBuilder{*this}, line);
}

RingElement arith(ArithOp op, const RingElement& a, const std::optional<RingElement>& b, const Ring& ring) {
  ring.require(a);
  auto second = [&]() -> const RingElement& {
    if (!b) throw KindMismatch("binary operation needs two operands");
    ring.require(*b);
    return *b;
  };
  switch (op) {
    case ArithOp::Add:
      return ring.add(a, second());
    case ArithOp::Mul:
      return ring.mul(a, second());
    case ArithOp::Neg:
      return ring.neg(a);
    case ArithOp::Inv:
      return ring.inv(a);
  }
  throw KindMismatch("unknown operation");
}

// --------------------------------------------------- sigma and delta actions

RingElement apply_endo(const EndoSpec& spec, const RingElement& a, const Ring& ring) {
  if (spec.is_identity() || ring.is_constant(a)) return a;
  const auto& c = a.coefficients();
  const RingElement& g = *spec.generator_image;
  RingElement acc;
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = ring.add(ring.mul(acc, g), ring.from_scalar(c[k]));
  }
  return acc;
}

RingElement apply_derivation(const DerivationSpec& spec, const RingElement& a, const Ring& ring) {
  if (spec.is_zero() || ring.is_constant(a)) return {};
  const auto& c = a.coefficients();
  const RingElement& dt = *spec.generator_image;
  RingElement sigma_t = apply_endo(spec.twist, ring.generator(), ring);
  // delta(t^k) = sigma(t) delta(t^{k-1}) + delta(t) t^{k-1}
  RingElement dk;                 // delta(t^{k})
  RingElement t_power = ring.one();  // t^{k-1}
  RingElement acc;
  for (std::size_t k = 1; k < c.size(); ++k) {
    dk = ring.add(ring.mul(sigma_t, dk), ring.mul(dt, t_power));
    t_power = ring.mul(t_power, ring.generator());
    acc = ring.add(acc, ring.mul(ring.from_scalar(c[k]), dk));
  }
  return acc;
}

bool endo_is_injective(const EndoSpec& spec, const Ring& ring) {
  if (spec.is_identity()) return true;
  if (ring.kind() != RingKind::UnivariatePoly) return spec.declared_bijective;
  return spec.generator_image->degree() >= 1;
}

bool endo_is_bijective(const EndoSpec& spec, const Ring& ring) {
  if (spec.is_identity()) return true;
  if (ring.kind() != RingKind::UnivariatePoly) return spec.declared_bijective;
  return spec.generator_image->degree() == 1;
}

LawCheck check_endo_laws(const EndoSpec& spec, const Ring& ring, std::size_t samples, Rng& rng) {
  LawCheck check{"sigma is a ring endomorphism", 0, 0, {}};
  if (apply_endo(spec, ring.one(), ring) != ring.one()) {
    ++check.failures;
    check.first_failure = "sigma(1) != 1";
  }
  for (std::size_t s = 0; s < samples; ++s) {
    RingElement a = ring.random(rng, 3);
    RingElement b = ring.random(rng, 3);
    ++check.samples;
    bool additive = apply_endo(spec, ring.add(a, b), ring) ==
                    ring.add(apply_endo(spec, a, ring), apply_endo(spec, b, ring));
    bool multiplicative = apply_endo(spec, ring.mul(a, b), ring) ==
                          ring.mul(apply_endo(spec, a, ring), apply_endo(spec, b, ring));
    if (!additive || !multiplicative) {
      if (check.failures++ == 0) {
        check.first_failure = "a = " + ring.to_string(a) + ", b = " + ring.to_string(b);
      }
    }
  }
  return check;
}

LawCheck check_derivation_laws(const DerivationSpec& spec, const Ring& ring, std::size_t samples, Rng& rng) {
  LawCheck check{"delta satisfies twisted Leibniz", 0, 0, {}};
  for (std::size_t s = 0; s < samples; ++s) {
    RingElement a = ring.random(rng, 3);
    RingElement b = ring.random(rng, 3);
    ++check.samples;
    bool additive = apply_derivation(spec, ring.add(a, b), ring) ==
                    ring.add(apply_derivation(spec, a, ring), apply_derivation(spec, b, ring));
    RingElement lhs = apply_derivation(spec, ring.mul(a, b), ring);
    RingElement rhs = ring.add(ring.mul(apply_endo(spec.twist, a, ring), apply_derivation(spec, b, ring)),
                               ring.mul(apply_derivation(spec, a, ring), b));
    if (!additive || lhs != rhs) {
      if (check.failures++ == 0) {
        check.first_failure = "a = " + ring.to_string(a) + ", b = " + ring.to_string(b);
      }
    }
  }
  return check;
}

}  // namespace skewpbw
