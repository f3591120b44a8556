#include "skewpbw/zariski.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "skewpbw/errors.hpp"
#include "skewpbw/random.hpp"

namespace skewpbw {

using Elem = FiniteCommRing::Elem;

// ------------------------------------------------------------ finite rings

FiniteCommRing::FiniteCommRing(std::string name, std::vector<std::string> names, std::vector<std::vector<Elem>> add,
                               std::vector<std::vector<Elem>> mul, std::uint64_t seed)
    : name_(std::move(name)), names_(std::move(names)), add_(std::move(add)), mul_(std::move(mul)) {
  std::size_t n = names_.size();
  if (n == 0) throw BadParams("a ring needs at least one element");
  if (add_.size() != n || mul_.size() != n) throw BadParams("operation tables have the wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (add_[i].size() != n || mul_[i].size() != n) throw BadParams("operation tables have the wrong size");
    for (std::size_t j = 0; j < n; ++j) {
      if (add_[i][j] >= n || mul_[i][j] >= n) throw BadParams("operation table entry out of range");
    }
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != n) throw BadParams("element names must be distinct");
  for (Elem a = 0; a < n; ++a) {
    if (add_[0][a] != a) throw BadParams("element 0 is not the additive identity");
  }
  bool found = false;
  for (Elem e = 0; e < n && !found; ++e) {
    found = true;
    for (Elem a = 0; a < n && found; ++a) found = mul_[e][a] == a;
    if (found) one_ = e;
  }
  if (!found) throw BadParams("no multiplicative identity");
  neg_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    bool has = false;
    for (Elem b = 0; b < n; ++b) {
      if (add_[a][b] == 0) {
        neg_[a] = b;
        has = true;
        break;
      }
    }
    if (!has) throw BadParams("element " + names_[a] + " has no additive inverse");
  }
  validate(seed);
}

void FiniteCommRing::validate(std::uint64_t seed) const {
  std::size_t n = size();
  auto check = [&](Elem a, Elem b, Elem c) {
    auto where = [&]() { return " at (" + names_[a] + ", " + names_[b] + ", " + names_[c] + ")"; };
    if (add_[add_[a][b]][c] != add_[a][add_[b][c]]) throw BadParams("addition is not associative" + where());
    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw BadParams("multiplication is not associative" + where());
    if (mul_[a][add_[b][c]] != add_[mul_[a][b]][mul_[a][c]]) throw BadParams("distributivity fails" + where());
  };
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (add_[a][b] != add_[b][a]) throw BadParams("addition is not commutative");
      if (mul_[a][b] != mul_[b][a]) throw BadParams("multiplication is not commutative");
    }
  }
  if (n <= 64) {
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        for (Elem c = 0; c < n; ++c) check(a, b, c);
      }
    }
    return;
  }
  Rng rng(seed);
  for (int s = 0; s < 20000; ++s) {
    check(static_cast<Elem>(draw_below(rng, n)), static_cast<Elem>(draw_below(rng, n)),
          static_cast<Elem>(draw_below(rng, n)));
  }
}

FiniteCommRing FiniteCommRing::from_descriptor(const RingDescriptor& d) {
  Ring r(d);
  if (!r.is_finite()) throw InfiniteRing("the ring must be finite");
  if (r.size() > 4096) throw BadParams("ring too large for table-based computations");
  auto elems = r.enumerate();
  std::size_t n = elems.size();
  std::vector<std::string> names;
  for (const auto& e : elems) names.push_back(r.to_string(e));
  std::vector<std::vector<Elem>> add(n, std::vector<Elem>(n)), mul(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      add[i][j] = static_cast<Elem>(r.index_of(r.add(elems[i], elems[j])));
      mul[i][j] = static_cast<Elem>(r.index_of(r.mul(elems[i], elems[j])));
    }
  }
  std::string name;
  switch (d.kind) {
    case RingKind::PrimeField:
      name = "Fp:" + std::to_string(d.modulus);
      break;
    case RingKind::Residue:
      name = "Zmod:" + std::to_string(d.modulus);
      break;
    default: {
      Ring aux(RingDescriptor::univariate(d.modulus, d.variable));
      std::vector<Scalar> c(d.quotient.begin(), d.quotient.end());
      name = "quot:F" + std::to_string(d.modulus) + ":" + aux.to_string(aux.make(c));
    }
  }
  FiniteCommRing out(name, std::move(names), std::move(add), std::move(mul));
  out.descriptor_ = d;
  return out;
}

FiniteCommRing FiniteCommRing::product(const FiniteCommRing& a, const FiniteCommRing& b) {
  std::size_t na = a.size(), nb = b.size();
  std::size_t n = na * nb;
  std::vector<std::string> names;
  for (Elem i = 0; i < na; ++i) {
    for (Elem j = 0; j < nb; ++j) names.push_back("[" + a.to_string(i) + "," + b.to_string(j) + "]");
  }
  auto idx = [&](Elem i, Elem j) { return static_cast<Elem>(i * nb + j); };
  std::vector<std::vector<Elem>> add(n, std::vector<Elem>(n)), mul(n, std::vector<Elem>(n));
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      Elem xa = static_cast<Elem>(x / nb), xb = static_cast<Elem>(x % nb);
      Elem ya = static_cast<Elem>(y / nb), yb = static_cast<Elem>(y % nb);
      add[x][y] = idx(a.add(xa, ya), b.add(xb, yb));
      mul[x][y] = idx(a.mul(xa, ya), b.mul(xb, yb));
    }
  }
  FiniteCommRing out("prod:" + a.name() + ";" + b.name(), std::move(names), std::move(add), std::move(mul));
  out.factors_ = {std::make_shared<const FiniteCommRing>(a), std::make_shared<const FiniteCommRing>(b)};
  return out;
}

FiniteCommRing FiniteCommRing::parse_spec(std::string_view spec) {
  auto fail = [&](const std::string& why) -> FiniteCommRing {
    throw ParseError("bad ring spec '" + std::string(spec) + "': " + why, 0, 1);
  };
  auto rest_after = [&](std::string_view prefix) { return spec.substr(prefix.size()); };
  auto to_int = [&](std::string_view s) -> std::int64_t {
    try {
      std::size_t used = 0;
      std::string str(s);
      long long v = std::stoll(str, &used);
      if (used != str.size()) fail("expected an integer");
      return v;
    } catch (const std::logic_error&) {
      fail("expected an integer");
    }
    return 0;
  };
  try {
    if (spec.rfind("prod:", 0) == 0) {
      std::string_view body = rest_after("prod:");
      std::size_t cut = body.find(';');
      std::size_t width = 1;
      std::size_t times = body.find("\xC3\x97");  // multiplication sign
      if (times != std::string_view::npos && (cut == std::string_view::npos || times < cut)) {
        cut = times;
        width = 2;
      }
      if (cut == std::string_view::npos) fail("expected two factors separated by ';'");
      return product(parse_spec(body.substr(0, cut)), parse_spec(body.substr(cut + width)));
    }
    if (spec.rfind("Zmod:", 0) == 0) return from_descriptor(RingDescriptor::residue(to_int(rest_after("Zmod:"))));
    if (spec.rfind("Fp:", 0) == 0) return from_descriptor(RingDescriptor::prime_field(to_int(rest_after("Fp:"))));
    if (spec.rfind("quot:F", 0) == 0) {
      std::string_view body = rest_after("quot:F");
      if (body.rfind("p", 0) == 0) body.remove_prefix(1);
      std::size_t colon = body.find(':');
      if (colon == std::string_view::npos) fail("expected quot:F<p>:<polynomial>");
      std::int64_t p = to_int(body.substr(0, colon));
      Ring aux(RingDescriptor::univariate(p, "x"));
      RingElement f = aux.parse(body.substr(colon + 1));
      std::vector<std::int64_t> coeffs;
      for (const auto& s : f.coefficients()) coeffs.push_back(std::get<std::int64_t>(s));
      return from_descriptor(RingDescriptor::quotient_poly(p, coeffs));
    }
  } catch (const BadParams& e) {
    fail(e.what());
  }
  return fail("expected Zmod:n, Fp:p, quot:F<p>:<poly> or prod:<spec>;<spec>");
}

Elem FiniteCommRing::pow(Elem a, std::uint64_t e) const {
  Elem r = one_;
  for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool FiniteCommRing::is_unit(Elem a) const {
  for (Elem b = 0; b < size(); ++b) {
    if (mul(a, b) == one_) return true;
  }
  return false;
}

Elem FiniteCommRing::parse_element(std::string_view text) const {
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '\t') compact += c;
  }
  for (Elem a = 0; a < size(); ++a) {
    std::string name;
    for (char c : names_[a]) {
      if (c != ' ') name += c;
    }
    if (name == compact) return a;
  }
  if (descriptor_) {
    Ring r(*descriptor_);
    return static_cast<Elem>(r.index_of(r.parse(text)));
  }
  if (factors_.size() == 2 && compact.size() >= 2 && compact.front() == '[' && compact.back() == ']') {
    std::string inner = compact.substr(1, compact.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '[') ++depth;
      if (inner[i] == ']') --depth;
      if (inner[i] == ',' && depth == 0) {
        Elem a = factors_[0]->parse_element(inner.substr(0, i));
        Elem b = factors_[1]->parse_element(inner.substr(i + 1));
        return static_cast<Elem>(a * factors_[1]->size() + b);
      }
    }
  }
  throw ParseError("'" + std::string(text) + "' is not an element of " + name_, 0, 1);
}

std::string FiniteCommRing::format(const ElementSet& s) const {
  std::string out = "{";
  bool first = true;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    if (!first) out += ",";
    out += names_[i];
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------- ideals

ZariskiFinite::ZariskiFinite(const FiniteCommRing& ring) : ring_(ring) {
  std::size_t n = ring.size();
  principal_.assign(n, ring.empty_set());
  for (Elem a = 0; a < n; ++a) {
    for (Elem r = 0; r < n; ++r) principal_[a].set(ring.mul(r, a));
  }
  // Every ideal is a finite sum of principal ideals; grow them from {0}.
  ElementSet zero = ring.empty_set();
  zero.set(0);
  std::set<ElementSet> seen{zero};
  std::deque<ElementSet> queue{zero};
  while (!queue.empty()) {
    ElementSet cur = queue.front();
    queue.pop_front();
    ideals_.push_back(cur);
    for (Elem a = 0; a < n; ++a) {
      if (cur.test(a)) continue;
      ElementSet next = sum(cur, principal_[a]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::sort(ideals_.begin(), ideals_.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  for (const auto& p : ideals_) {
    if (p.all()) continue;
    bool prime = true;
    for (Elem x = 0; x < n && prime; ++x) {
      if (p.test(x)) continue;
      for (Elem y = 0; y < n && prime; ++y) {
        if (!p.test(y) && p.test(ring.mul(x, y))) prime = false;
      }
    }
    if (prime) primes_.push_back(p);
  }
}

ElementSet ZariskiFinite::principal(Elem a) const { return principal_[a]; }

ElementSet ZariskiFinite::sum(const ElementSet& a, const ElementSet& b) const {
  ElementSet out = ring_.empty_set();
  for (auto i = a.find_first(); i != ElementSet::npos; i = a.find_next(i)) {
    for (auto j = b.find_first(); j != ElementSet::npos; j = b.find_next(j)) {
      out.set(ring_.add(static_cast<Elem>(i), static_cast<Elem>(j)));
    }
  }
  return out;
}

ElementSet ZariskiFinite::ideal_generated(const ElementSet& gens) const {
  ElementSet out = ring_.empty_set();
  out.set(0);
  for (auto g = gens.find_first(); g != ElementSet::npos; g = gens.find_next(g)) {
    if (!out.test(g)) out = sum(out, principal_[g]);
  }
  return out;
}

ElementSet ZariskiFinite::ideal_generated(const std::vector<Elem>& gens) const {
  ElementSet s = ring_.empty_set();
  for (Elem g : gens) s.set(g);
  return ideal_generated(s);
}

ElementSet ZariskiFinite::product(const ElementSet& a, const ElementSet& b) const {
  ElementSet gens = ring_.empty_set();
  for (auto i = a.find_first(); i != ElementSet::npos; i = a.find_next(i)) {
    for (auto j = b.find_first(); j != ElementSet::npos; j = b.find_next(j)) {
      gens.set(ring_.mul(static_cast<Elem>(i), static_cast<Elem>(j)));
    }
  }
  return ideal_generated(gens);
}

bool ZariskiFinite::is_ideal(const ElementSet& s) const {
  if (!s.test(0)) return false;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    for (auto j = s.find_first(); j != ElementSet::npos; j = s.find_next(j)) {
      if (!s.test(ring_.add(static_cast<Elem>(i), static_cast<Elem>(j)))) return false;
    }
    if (!principal_[i].is_subset_of(s)) return false;
  }
  return true;
}

ElementSet ZariskiFinite::D(const ElementSet& x) const {
  ElementSet out = ring_.whole();
  for (const auto& p : primes_) {
    if (x.is_subset_of(p)) out &= p;
  }
  return out;
}

ElementSet ZariskiFinite::D(const std::vector<Elem>& x) const {
  ElementSet s = ring_.empty_set();
  for (Elem e : x) s.set(e);
  return D(s);
}

ElementSet ZariskiFinite::nilradical() const {
  ElementSet out = ring_.empty_set();
  for (Elem a = 0; a < ring_.size(); ++a) {
    Elem power = a;
    for (std::size_t k = 0; k <= ring_.size(); ++k) {
      if (power == 0) {
        out.set(a);
        break;
      }
      power = ring_.mul(power, a);
    }
  }
  return out;
}

ElementSet ZariskiFinite::colon(const ElementSet& target, Elem v) const {
  ElementSet out = ring_.empty_set();
  for (Elem x = 0; x < ring_.size(); ++x) {
    if (target.test(ring_.mul(x, v))) out.set(x);
  }
  return out;
}

ElementSet ZariskiFinite::boundary_ideal(Elem v) const {
  return sum(principal_[v], colon(D(ring_.empty_set()), v));
}

ZariskiFinite::Membership ZariskiFinite::radical_membership(Elem a, const std::vector<Elem>& gens) const {
  ElementSet ideal = ideal_generated(gens);
  Membership m;
  if (!D(ideal).test(a)) return m;
  m.member = true;
  Elem power = a;
  for (std::uint64_t k = 1;; ++k) {
    if (ideal.test(power)) {
      m.k = k;
      return m;
    }
    power = ring_.mul(power, a);
  }
}

QuotientRing quotient_ring(const ZariskiFinite& z, const ElementSet& ideal) {
  const FiniteCommRing& s = z.ring();
  std::size_t n = s.size();
  std::vector<Elem> projection(n, 0);
  std::vector<Elem> reps;
  std::vector<bool> assigned(n, false);
  for (Elem a = 0; a < n; ++a) {
    if (assigned[a]) continue;
    auto coset = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (auto i = ideal.find_first(); i != ElementSet::npos; i = ideal.find_next(i)) {
      Elem b = s.add(a, static_cast<Elem>(i));
      assigned[b] = true;
      projection[b] = coset;
    }
  }
  std::size_t m = reps.size();
  std::vector<std::string> names;
  for (Elem r : reps) names.push_back(s.to_string(r));
  std::vector<std::vector<Elem>> add(m, std::vector<Elem>(m)), mul(m, std::vector<Elem>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      add[i][j] = projection[s.add(reps[i], reps[j])];
      mul[i][j] = projection[s.mul(reps[i], reps[j])];
    }
  }
  return {FiniteCommRing(s.name() + "/" + s.format(ideal), std::move(names), std::move(add), std::move(mul)),
          std::move(projection)};
}

// ------------------------------------------------------------ lattice laws

namespace {

class LawRecorder {
 public:
  LawRecorder(std::string law, std::string description) {
    result_.law = std::move(law);
    result_.description = std::move(description);
  }
  void check(bool ok, const std::function<std::string()>& detail) {
    ++result_.checks;
    if (ok) return;
    if (result_.violations++ == 0) result_.first_violation = detail();
  }
  LawResult done() { return std::move(result_); }

 private:
  LawResult result_;
};

}  // namespace

std::vector<LawResult> check_lattice_laws(const ZariskiFinite& z) {
  const FiniteCommRing& s = z.ring();
  const std::size_t n = s.size();
  const auto& ideals = z.ideals();
  const ElementSet whole = s.whole();
  const ElementSet zero_set = z.ideal_generated(std::vector<Elem>{});
  const ElementSet nil = z.nilradical();
  auto fmt = [&](const ElementSet& x) { return s.format(x); };

  std::vector<ElementSet> d_of;
  for (const auto& i : ideals) d_of.push_back(z.D(i));
  // Zar(S) as the distinct values of D.
  std::vector<ElementSet> zar;
  for (const auto& d : d_of) {
    if (std::find(zar.begin(), zar.end(), d) == zar.end()) zar.push_back(d);
  }
  auto join = [&](const ElementSet& a, const ElementSet& b) { return z.D(z.sum(a, b)); };
  auto d_elems = [&](std::vector<Elem> xs) { return z.D(z.ideal_generated(xs)); };

  std::vector<LawResult> out;

  {
    LawRecorder r("i", "D(X) = D(<X>)");
    auto test = [&](const ElementSet& x) {
      r.check(z.D(x) == z.D(z.ideal_generated(x)), [&] { return "X = " + fmt(x); });
    };
    if (n <= 16) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ElementSet x(n, mask);
        test(x);
      }
    } else {
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = a; b < n; ++b) {
          ElementSet x = s.empty_set();
          x.set(a);
          x.set(b);
          test(x);
        }
      }
      test(s.empty_set());
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("ii", "D(I) = rad(S) iff I is inside rad(S); D(0) = rad(S)");
    r.check(z.D(zero_set) == nil, [&] { return "D(0) = " + fmt(z.D(zero_set)) + ", nilradical " + fmt(nil); });
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      r.check((d_of[k] == nil) == ideals[k].is_subset_of(nil), [&] { return "I = " + fmt(ideals[k]); });
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("iii", "D(I) = S iff I = S");
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      r.check((d_of[k] == whole) == (ideals[k] == whole), [&] { return "I = " + fmt(ideals[k]); });
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("iv", "I inside D(I), D(D(I)) = D(I), D monotone");
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      r.check(ideals[k].is_subset_of(d_of[k]), [&] { return "I = " + fmt(ideals[k]); });
      r.check(z.D(d_of[k]) == d_of[k], [&] { return "D(D(I)) for I = " + fmt(ideals[k]); });
      for (std::size_t l = 0; l < ideals.size(); ++l) {
        if (!ideals[k].is_subset_of(ideals[l])) continue;
        r.check(d_of[k].is_subset_of(d_of[l]), [&] { return fmt(ideals[k]) + " inside " + fmt(ideals[l]); });
      }
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("v", "D(I1 + I2) = D(I1) v D(I2); D(x1, x2) = D(x1) v D(x2)");
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      for (std::size_t l = 0; l < ideals.size(); ++l) {
        ElementSet lhs = z.D(z.sum(ideals[k], ideals[l]));
        r.check(lhs == join(d_of[k], d_of[l]), [&] { return fmt(ideals[k]) + " + " + fmt(ideals[l]); });
        // least upper bound among all members of Zar(S)
        for (const auto& w : zar) {
          if (d_of[k].is_subset_of(w) && d_of[l].is_subset_of(w)) {
            r.check(lhs.is_subset_of(w), [&] { return "upper bound " + fmt(w); });
          }
        }
      }
    }
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        r.check(d_elems({x, y}) == join(d_elems({x}), d_elems({y})),
                [&] { return "x = " + s.to_string(x) + ", y = " + s.to_string(y); });
      }
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("vi", "D(I1 I2) = D(I1) ^ D(I2)");
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      for (std::size_t l = 0; l < ideals.size(); ++l) {
        ElementSet meet = d_of[k] & d_of[l];
        r.check(z.D(z.product(ideals[k], ideals[l])) == meet, [&] { return fmt(ideals[k]) + " * " + fmt(ideals[l]); });
        r.check(z.D(meet) == meet, [&] { return "meet not in Zar for " + fmt(ideals[k]) + ", " + fmt(ideals[l]); });
      }
    }
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        r.check(z.D(z.product(z.principal(x), z.principal(y))) == (d_elems({x}) & d_elems({y})),
                [&] { return "x = " + s.to_string(x) + ", y = " + s.to_string(y); });
      }
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("vii", "D(x + y) inside D(x, y)");
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        r.check(d_elems({s.add(x, y)}).is_subset_of(d_elems({x, y})),
                [&] { return "x = " + s.to_string(x) + ", y = " + s.to_string(y); });
      }
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("viii", "<x><y> inside D(0) implies D(x, y) = D(x + y)");
    ElementSet d0 = z.D(zero_set);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (!z.product(z.principal(x), z.principal(y)).is_subset_of(d0)) continue;
        r.check(d_elems({x, y}) == d_elems({s.add(x, y)}),
                [&] { return "x = " + s.to_string(x) + ", y = " + s.to_string(y); });
      }
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("ix", "x in D(I) implies D(I) = D(I, x)");
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      for (Elem x = 0; x < n; ++x) {
        if (!d_of[k].test(x)) continue;
        r.check(z.D(z.sum(ideals[k], z.principal(x))) == d_of[k],
                [&] { return "I = " + fmt(ideals[k]) + ", x = " + s.to_string(x); });
      }
    }
    out.push_back(r.done());
  }
  {
    LawRecorder r("x", "D in S/I is the image of D for ideals containing I");
    LawRecorder r11("xi", "u in D(I) iff u is nilpotent in S/I; then u^k in I");
    for (std::size_t k = 0; k < ideals.size(); ++k) {
      QuotientRing q = quotient_ring(z, ideals[k]);
      ZariskiFinite zq(q.ring);
      auto image = [&](const ElementSet& x) {
        ElementSet img = q.ring.empty_set();
        for (auto i = x.find_first(); i != ElementSet::npos; i = x.find_next(i)) img.set(q.projection[i]);
        return img;
      };
      for (std::size_t l = 0; l < ideals.size(); ++l) {
        if (!ideals[k].is_subset_of(ideals[l])) continue;
        r.check(zq.D(image(ideals[l])) == image(d_of[l]),
                [&] { return "I = " + fmt(ideals[k]) + ", J = " + fmt(ideals[l]); });
      }
      ElementSet nil_q = zq.nilradical();
      for (Elem u = 0; u < n; ++u) {
        bool member = d_of[k].test(u);
        r11.check(member == nil_q.test(q.projection[u]),
                  [&] { return "I = " + fmt(ideals[k]) + ", u = " + s.to_string(u); });
        if (member) {
          bool reached = false;
          Elem power = u;
          for (std::size_t e = 1; e <= n && !reached; ++e) {
            reached = ideals[k].test(power);
            power = s.mul(power, u);
          }
          r11.check(reached, [&] { return "no power of " + s.to_string(u) + " lies in " + fmt(ideals[k]); });
        }
      }
    }
    out.push_back(r.done());
    out.push_back(r11.done());
  }
  {
    LawRecorder r("xii", "Zar(S) is distributive");
    for (const auto& a : zar) {
      for (const auto& b : zar) {
        for (const auto& c : zar) {
          r.check((a & join(b, c)) == join(a & b, a & c),
                  [&] { return "meet over join at " + fmt(a) + ", " + fmt(b) + ", " + fmt(c); });
          r.check(join(a, b & c) == (join(a, b) & join(a, c)),
                  [&] { return "join over meet at " + fmt(a) + ", " + fmt(b) + ", " + fmt(c); });
        }
      }
    }
    out.push_back(r.done());
  }
  return out;
}

BoundaryReport check_boundary_condition(const ZariskiFinite& z) {
  BoundaryReport report;
  const auto whole = z.ring().whole();
  for (Elem v = 0; v < z.ring().size(); ++v) {
    ++report.elements;
    if (z.boundary_ideal(v) != whole) report.failures.push_back(v);
  }
  return report;
}

// ---------------------------------------------------------------- Kronecker

Dim0Reduction kronecker_reduce_dim0(const ZariskiFinite& z, Elem u1, Elem u) {
  const FiniteCommRing& s = z.ring();
  ElementSet target = z.D(std::vector<Elem>{u1, u});
  auto works = [&](Elem x1) { return z.D(std::vector<Elem>{s.add(u1, s.mul(x1, u))}) == target; };

  Dim0Reduction out;
  // 1 = a u1 + x1 with x1 in (D(0) : u1), which exists because I_{u1} = S.
  ElementSet annihilator = z.colon(z.D(s.empty_set()), u1);
  std::optional<Elem> pick;
  for (Elem a = 0; a < s.size() && !pick; ++a) {
    Elem x1 = s.sub(s.one(), s.mul(a, u1));
    if (annihilator.test(x1)) {
      pick = x1;
      out.a = a;
    }
  }
  out.constructive_verified = pick && works(*pick);

  if (works(0)) {
    out.x1 = 0;
    out.method = Dim0Reduction::Method::Trivial;
  } else if (out.constructive_verified) {
    out.x1 = *pick;
    out.method = Dim0Reduction::Method::Constructive;
  } else {
    out.method = Dim0Reduction::Method::Fallback;
    for (Elem x = 0; x < s.size(); ++x) {
      if (works(x)) {
        out.x1 = x;
        return out;
      }
    }
    throw PreconditionFailed("no x1 exists; the ring violates the boundary condition");
  }
  return out;
}

std::vector<Elem> kronecker_reduce_finite(const ZariskiFinite& z, const std::vector<Elem>& us, Elem u) {
  const FiniteCommRing& s = z.ring();
  if (us.empty()) throw BadParams("need at least one u_i");
  std::vector<Elem> all = us;
  all.push_back(u);
  ElementSet target = z.D(all);
  std::size_t d = us.size();
  double space = std::pow(static_cast<double>(s.size()), static_cast<double>(d));
  if (space > 5e7) throw BadParams("search space too large for an exhaustive scan");
  std::vector<Elem> xs(d, 0);
  for (;;) {
    std::vector<Elem> gens(d);
    for (std::size_t i = 0; i < d; ++i) gens[i] = s.add(us[i], s.mul(xs[i], u));
    if (z.D(gens) == target) return xs;
    std::size_t pos = d;
    while (pos-- > 0) {
      if (++xs[pos] < s.size()) break;
      xs[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  throw PreconditionFailed("no reduction exists for these generators");
}

std::vector<Elem> unimodular_shrink_finite(const ZariskiFinite& z, const std::vector<Elem>& us) {
  if (us.size() < 2) throw BadParams("need at least two elements");
  if (z.ideal_generated(us) != z.ring().whole()) throw PreconditionFailed("the elements do not generate the ring");
  std::vector<Elem> head(us.begin(), us.end() - 1);
  return kronecker_reduce_finite(z, head, us.back());
}

// ------------------------------------------------------------------ F_p[t]

RadicalClass zariski_D(const std::vector<FpPoly>& gens, std::int64_t p) {
  FpPoly g = gcd(gens, p);
  if (g.is_zero()) return {g};
  FpPoly rad = FpPoly::constant(p, 1);
  for (const auto& [f, mult] : factorize(g)) rad = rad * f;
  return {rad};
}

PolyMembership radical_membership(const FpPoly& a, const std::vector<FpPoly>& gens, std::int64_t p) {
  FpPoly g = gcd(gens, p);
  if (g.is_zero()) return {a.is_zero(), a.is_zero() ? 1U : 0U};
  auto limit = static_cast<std::uint64_t>(std::max(1, g.degree()));
  FpPoly power = a % g;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (power.is_zero()) return {true, k};
    power = (power * a) % g;
  }
  return {false, 0};
}

namespace {

std::int64_t common_prime(const std::vector<FpPoly>& us, const FpPoly& u) {
  std::int64_t p = u.prime();
  for (const auto& f : us) {
    if (f.prime() != p) throw KindMismatch("polynomials over different fields");
  }
  return p;
}

std::vector<FpPoly> shifted(const std::vector<FpPoly>& us, const FpPoly& u, const std::vector<FpPoly>& xs) {
  std::vector<FpPoly> out;
  for (std::size_t i = 0; i < us.size(); ++i) out.push_back(us[i] + xs[i] * u);
  return out;
}

}  // namespace

bool verify_kronecker_poly(const std::vector<FpPoly>& us, const FpPoly& u, const std::vector<FpPoly>& xs) {
  std::int64_t p = common_prime(us, u);
  if (xs.size() != us.size()) throw DimensionMismatch("one x per u_i");
  std::vector<FpPoly> all = us;
  all.push_back(u);
  return zariski_D(shifted(us, u, xs), p) == zariski_D(all, p);
}

std::optional<PolyKronecker> kronecker_reduce_poly(const std::vector<FpPoly>& us, const FpPoly& u, int bound) {
  if (us.empty()) throw BadParams("need at least one u_i");
  if (bound < 0) throw BadParams("degree bound must be non-negative");
  std::int64_t p = common_prime(us, u);
  std::vector<FpPoly> all = us;
  all.push_back(u);
  FpPoly g0 = gcd(all, p);
  const std::size_t d = us.size();

  // The shifted ideal lies inside the original one, so equality of radicals
  // only needs g0 in the radical of the shifted gcd h: g0^deg(h) = 0 mod h.
  auto accept = [&](const std::vector<FpPoly>& xs) {
    FpPoly h = gcd(shifted(us, u, xs), p);
    if (h.is_zero()) return g0.is_zero();
    return pow_mod(g0, static_cast<std::uint64_t>(std::max(1, h.degree())), h).is_zero();
  };

  PolyKronecker out;
  std::uint64_t lower = 0;
  std::uint64_t limit = 1;
  for (int level = 0; level <= bound; ++level) {
    lower = level == 0 ? 0 : limit;
    limit *= static_cast<std::uint64_t>(p);
    std::vector<std::uint64_t> idx(d, 0);
    for (;;) {
      bool reaches = level == 0 || std::any_of(idx.begin(), idx.end(), [&](auto i) { return i >= lower; });
      if (reaches) {
        ++out.candidates;
        std::vector<FpPoly> xs;
        for (auto i : idx) xs.push_back(FpPoly::from_index(p, i));
        if (accept(xs)) {
          out.xs = std::move(xs);
          return out;
        }
      }
      std::size_t pos = d;
      while (pos-- > 0) {
        if (++idx[pos] < limit) break;
        idx[pos] = 0;
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
  }
  return std::nullopt;
}

std::optional<PolyKronecker> unimodular_shrink_poly(const std::vector<FpPoly>& us, int bound) {
  if (us.size() < 2) throw BadParams("need at least two elements");
  if (!gcd(us, us.front().prime()).is_one()) throw PreconditionFailed("the elements do not generate F_p[t]");
  std::vector<FpPoly> head(us.begin(), us.end() - 1);
  return kronecker_reduce_poly(head, us.back(), bound);
}

}  // namespace skewpbw
