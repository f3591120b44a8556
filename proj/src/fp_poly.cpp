#include "skewpbw/fp_poly.hpp"

#include <gmpxx.h>

#include "skewpbw/errors.hpp"
#include "skewpbw/expr_parser.hpp"

namespace skewpbw {

namespace {

std::int64_t reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

}  // namespace

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = reduce(a, p), s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw NotAUnit(std::to_string(a) + " is not invertible modulo " + std::to_string(p));
  return reduce(s0, p);
}

FpPoly::FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw BadParams("modulus must be at least 2");
  for (auto& c : c_) c = reduce(c, p_);
  trim();
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monomial(std::int64_t p, int degree) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = 1;
  return FpPoly(p, std::move(c));
}

FpPoly FpPoly::from_index(std::int64_t p, std::uint64_t index) {
  std::vector<std::int64_t> c;
  auto base = static_cast<std::uint64_t>(p);
  while (index > 0) {
    c.push_back(static_cast<std::int64_t>(index % base));
    index /= base;
  }
  return FpPoly(p, std::move(c));
}

std::uint64_t FpPoly::index() const {
  std::uint64_t out = 0;
  for (std::size_t i = c_.size(); i-- > 0;) out = out * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(c_[i]);
  return out;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  std::vector<std::int64_t> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator-() const { return scaled(-1); }

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::scaled(std::int64_t s) const {
  std::vector<std::int64_t> c = c_;
  for (auto& x : c) x = reduce(x * reduce(s, p_), p_);
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return FpPoly(p_, {});
  std::vector<std::int64_t> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = (c[i + j] + c_[i] * o.c_[j]) % p_;
  }
  return FpPoly(p_, std::move(c));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw BadParams("polynomial division by zero");
  std::vector<std::int64_t> r = c_;
  if (r.size() < d.c_.size()) return {FpPoly(p_, {}), *this};
  std::vector<std::int64_t> q(r.size() - d.c_.size() + 1, 0);
  std::int64_t inv = mod_inverse(d.lead(), p_);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::int64_t coef = reduce(r[k + d.c_.size() - 1] * inv, p_);
    q[k] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] = reduce(r[k + j] - coef * d.c_[j], p_);
  }
  return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inverse(lead(), p_));
}

std::string FpPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string power = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0) {
      out += std::to_string(c_[k]);
    } else if (c_[k] == 1) {
      out += power;
    } else {
      out += std::to_string(c_[k]) + "*" + power;
    }
  }
  return out;
}

namespace {

struct FpBuilder {
  using Value = FpPoly;
  std::int64_t p;
  const std::string& var;

  Value from_integer(const mpz_class& v) const {
    mpz_class r = v % p;
    return FpPoly::constant(p, r.get_si());
  }
  Value from_identifier(const std::string& name, std::size_t line, std::size_t column) const {
    if (name != var) throw ParseError("unknown identifier '" + name + "'", line, column);
    return FpPoly::monomial(p, 1);
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, unsigned long e) const {
    Value out = FpPoly::constant(p, 1);
    for (unsigned long i = 0; i < e; ++i) out = out * a;
    return out;
  }
  Value divide(const Value& a, const mpz_class& d) const {
    mpz_class r = d % p;
    return a.scaled(mod_inverse(r.get_si(), p));
  }
};

}  // namespace

FpPoly FpPoly::parse(std::int64_t p, std::string_view text, const std::string& var) {
  return parse_expression(text, FpBuilder{p, var});
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  if (a.prime() != b.prime()) throw KindMismatch("polynomials over different fields");
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpPoly gcd(const std::vector<FpPoly>& gens, std::int64_t p) {
  FpPoly g(p, {});
  for (const auto& f : gens) {
    if (f.prime() != p) throw KindMismatch("polynomials over different fields");
    g = gcd(g, f);
  }
  return g;
}

FpPoly pow_mod(const FpPoly& a, std::uint64_t e, const FpPoly& m) {
  FpPoly result = FpPoly::constant(m.prime(), 1) % m;
  FpPoly base = a % m;
  while (e > 0) {
    if (e & 1U) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1U;
  }
  return result;
}

std::vector<std::pair<FpPoly, int>> factorize(const FpPoly& f) {
  if (f.is_zero()) throw BadParams("cannot factor the zero polynomial");
  std::int64_t p = f.prime();
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly rest = f.monic();
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    // Monic polynomials of degree d, in index order of their lower part.
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t k = 0; k < count && 2 * d <= rest.degree(); ++k) {
      FpPoly cand = FpPoly::from_index(p, k) + FpPoly::monomial(p, d);
      int mult = 0;
      for (;;) {
        auto [q, r] = rest.divmod(cand);
        if (!r.is_zero()) break;
        rest = q;
        ++mult;
      }
      if (mult > 0) out.emplace_back(cand, mult);
    }
  }
  if (rest.degree() >= 1) {
    bool merged = false;
    for (auto& [g, m] : out) {
      if (g == rest) {
        ++m;
        merged = true;
      }
    }
    if (!merged) out.emplace_back(rest, 1);
  }
  return out;
}

}  // namespace skewpbw
