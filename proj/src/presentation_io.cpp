#include <algorithm>
#include <map>
#include <sstream>

#include "skewpbw/catalog.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/expr_parser.hpp"

namespace skewpbw {

namespace {

// Element of the free algebra over R with coefficients on the left; only
// what the right-hand side of a relation needs.
using Word = std::vector<std::size_t>;
using FreeElement = std::map<Word, RingElement>;

struct FreeBuilder {
  using Value = FreeElement;
  const Ring& ring;
  const std::vector<std::string>& vars;

  void put(Value& v, const Word& w, const RingElement& c) const {
    if (c.is_zero()) return;
    auto [it, fresh] = v.try_emplace(w, c);
    if (fresh) return;
    it->second = ring.add(it->second, c);
    if (it->second.is_zero()) v.erase(it);
  }

  Value from_integer(const Integer& n) const {
    Value v;
    put(v, {}, ring.from_integer(n));
    return v;
  }
  Value from_identifier(const std::string& name, std::size_t line, std::size_t column) const {
    Value v;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] == name) {
        put(v, {i}, ring.one());
        return v;
      }
    }
    if (!ring.variable().empty() && name == ring.variable()) {
      put(v, {}, ring.generator());
      return v;
    }
    throw SemanticError(ParseError("unknown variable '" + name + "'", line, column).what());
  }
  Value add(const Value& a, const Value& b) const {
    Value out = a;
    for (const auto& [w, c] : b) put(out, w, c);
    return out;
  }
  Value neg(const Value& a) const {
    Value out;
    for (const auto& [w, c] : a) put(out, w, ring.neg(c));
    return out;
  }
  Value sub(const Value& a, const Value& b) const { return add(a, neg(b)); }
  Value mul(const Value& a, const Value& b) const {
    Value out;
    for (const auto& [wa, ca] : a) {
      for (const auto& [wb, cb] : b) {
        if (!wa.empty() && !ring.is_constant(cb)) {
          throw SemanticError("coefficients from the ring must be written to the left of the variables");
        }
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        put(out, w, ring.mul(ca, cb));
      }
    }
    return out;
  }
  Value pow(const Value& a, unsigned long e) const {
    Value out = from_integer(1);
    for (unsigned long i = 0; i < e; ++i) out = mul(out, a);
    return out;
  }
  Value divide(const Value& a, const Integer& d) const {
    RingElement inv = ring.inv(ring.from_integer(d));
    Value out;
    for (const auto& [w, c] : a) put(out, w, ring.mul(inv, c));
    return out;
  }
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line, std::size_t column) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line, column);
  }
}

// Relation data for one pair, collected from rel/c/sigma/delta lines.
struct PairData {
  std::optional<RingElement> c;
  std::optional<Affine> lower;
};

struct Line {
  std::size_t number;
  std::string text;  // comment stripped
};

class FileParser {
 public:
  explicit FileParser(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      ++number;
      std::size_t hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (!trim(raw).empty()) lines_.push_back({number, std::string(raw)});
      pos = end + 1;
    }
  }

  Presentation parse() {
    std::string name = "custom";
    std::optional<RingDescriptor> ring_desc;
    std::optional<std::vector<std::string>> vars;
    bool bijective = false;
    std::vector<Line> body;
    for (const auto& line : lines_) {
      auto w = words(line.text);
      const std::string& kw = w[0];
      if (kw == "name") {
        if (w.size() != 2) throw ParseError("expected: name <identifier>", line.number, column_of(line, 1));
        name = w[1];
      } else if (kw == "ring") {
        if (ring_desc) throw ParseError("duplicate ring line", line.number, 1);
        ring_desc = parse_ring(line, w);
      } else if (kw == "vars") {
        if (vars) throw ParseError("duplicate vars line", line.number, 1);
        if (w.size() < 2) throw ParseError("vars needs at least one name", line.number, line.text.size() + 1);
        vars = std::vector<std::string>(w.begin() + 1, w.end());
      } else if (kw == "bijective") {
        if (w.size() != 2 || (w[1] != "true" && w[1] != "false")) {
          throw ParseError("expected: bijective true|false", line.number, column_of(line, 1));
        }
        bijective = w[1] == "true";
      } else if (kw == "sigma" || kw == "delta" || kw == "c" || kw == "rel") {
        body.push_back(line);
      } else {
        throw ParseError("unknown keyword '" + kw + "'", line.number, column_of(line, 0));
      }
    }
    if (!ring_desc) throw ParseError("missing ring line", 0, 1);
    if (!vars) throw ParseError("missing vars line", 0, 1);

    // Ring and variable checks happen before any expression is read.
    Presentation p = make_skeleton(name, *ring_desc, *vars);
    p.bijective = bijective;
    ring_.emplace(p.ring);
    n_ = p.num_vars();
    for (const auto& line : body) apply(p, line);
    for (auto& [key, data] : pairs_) {
      auto [i, j] = key;
      p.set_relation(i, j, data.c.value_or(ring_->one()),
                     data.lower.value_or(Affine{RingElement{}, std::vector<RingElement>(n_)}));
    }
    check_structure(p);
    return p;
  }

 private:
  static std::size_t column_of(const Line& line, std::size_t word_index) {
    std::size_t pos = 0;
    for (std::size_t k = 0;; ++k) {
      pos = line.text.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) return line.text.size() + 1;
      if (k == word_index) return pos + 1;
      pos = line.text.find_first_of(" \t\r", pos);
      if (pos == std::string::npos) return line.text.size() + 1;
    }
  }

  static RingDescriptor parse_ring(const Line& line, const std::vector<std::string>& w) {
    auto col = [&](std::size_t k) { return column_of(line, k); };
    if (w.size() >= 2) {
      const std::string& kind = w[1];
      try {
        if (kind == "Q" && w.size() == 2) return RingDescriptor::rationals();
        if (kind == "Fp" && w.size() == 3) return RingDescriptor::prime_field(parse_int(w[2], line.number, col(2)));
        if (kind == "Zmod" && w.size() == 3) return RingDescriptor::residue(parse_int(w[2], line.number, col(2)));
        if (kind == "poly" && w.size() == 4 && w[2] == "Q") return RingDescriptor::univariate(0, w[3]);
        if (kind == "poly" && w.size() == 5 && w[2] == "Fp") {
          return RingDescriptor::univariate(parse_int(w[3], line.number, col(3)), w[4]);
        }
        if (kind == "quot" && w.size() >= 5 && w[2] == "Fp") {
          std::int64_t p = parse_int(w[3], line.number, col(3));
          std::size_t start = col(4) - 1;
          Ring aux(RingDescriptor::univariate(p, "x"));
          RingElement f = aux.parse(std::string_view(line.text).substr(start), line.number);
          std::vector<std::int64_t> coeffs;
          for (const auto& s : f.coefficients()) coeffs.push_back(std::get<std::int64_t>(s));
          return RingDescriptor::quotient_poly(p, coeffs);
        }
      } catch (const BadParams& e) {
        throw SemanticError(e.what());
      }
    }
    throw ParseError("expected: ring Fp p | Q | Zmod n | poly Fp p t | poly Q t | quot Fp p <poly>", line.number,
                     col(1));
  }

  static Presentation make_skeleton(const std::string& name, const RingDescriptor& desc,
                                    const std::vector<std::string>& vars) {
    Presentation p = Presentation::polynomial(name, desc, vars);
    check_structure(p);
    return p;
  }

  std::size_t var_index(const Presentation& p, const Line& line, std::size_t word, const std::string& v) const {
    int k = p.index_of(v);
    if (k < 0) throw SemanticError("line " + std::to_string(line.number) + ", column " +
                                   std::to_string(column_of(line, word)) + ": unknown variable '" + v + "'");
    return static_cast<std::size_t>(k);
  }

  FreeElement parse_free(const Presentation& p, const Line& line, std::size_t offset) const {
    std::string padded(offset, ' ');
    padded += line.text.substr(offset);
    return parse_expression(padded, FreeBuilder{*ring_, p.variables}, line.number);
  }

  std::string where(const Line& line) const { return "line " + std::to_string(line.number) + ": "; }

  // Affine part of a free element; rejects every word of length >= 2.
  Affine affine_part(const Presentation& p, const Line& line, const FreeElement& e) const {
    Affine a{RingElement{}, std::vector<RingElement>(n_)};
    for (const auto& [w, c] : e) {
      if (w.empty()) {
        a.constant = c;
      } else if (w.size() == 1) {
        a.linear[w[0]] = c;
      } else {
        std::string word;
        for (auto k : w) word += (word.empty() ? "" : " ") + p.variables[k];
        throw SemanticError(where(line) + "lower term of degree >= 2 ('" + word + "') is not allowed");
      }
    }
    return a;
  }

  void merge(const Presentation& p, const Line& line, std::size_t i, std::size_t j, std::optional<RingElement> c,
             std::optional<Affine> lower) {
    auto& data = pairs_[{i, j}];
    auto conflict = [&]() {
      throw SemanticError(where(line) + "conflicting relation data for " + p.variables[j] + " " + p.variables[i]);
    };
    if (c) {
      if (data.c && !(*data.c == *c)) conflict();
      data.c = c;
    }
    if (lower) {
      if (data.lower && !(*data.lower == *lower)) conflict();
      data.lower = lower;
    }
  }

  std::pair<std::size_t, std::size_t> ordered_pair(const Presentation& p, const Line& line,
                                                   const std::vector<std::string>& w) const {
    std::size_t j = var_index(p, line, 1, w[1]);
    std::size_t i = var_index(p, line, 2, w[2]);
    if (i >= j) {
      throw SemanticError(where(line) + "name the later variable first: " + p.variables[std::max(i, j)] + " " +
                          p.variables[std::min(i, j)]);
    }
    return {i, j};
  }

  void apply(Presentation& p, const Line& line) {
    auto w = words(line.text);
    const std::string& kw = w[0];
    const Ring& ring = *ring_;

    if (kw == "sigma" || kw == "delta") {
      if (w.size() < 5 || w[3] != "->") {
        throw ParseError("expected: " + kw + " <var> <generator> -> <expr>", line.number, column_of(line, 0));
      }
      std::size_t rhs = column_of(line, 4) - 1;
      if (ring.is_polynomial() && w[2] == ring.variable()) {
        std::size_t k = var_index(p, line, 1, w[1]);
        RingElement image = ring.parse(std::string(rhs, ' ') + line.text.substr(rhs), line.number);
        auto sigma = p.sigma[k].generator_image;
        auto delta = p.delta[k].generator_image;
        if (kw == "sigma") {
          sigma = image;
        } else {
          delta = image;
        }
        p.set_action(k, sigma, delta);
        return;
      }
      // Over a field, "sigma x t -> c t" and "delta x t -> ..." describe the
      // relation x t = c t x + delta between two variables.
      auto [i, j] = ordered_pair(p, line, w);
      FreeElement e = parse_free(p, line, rhs);
      if (kw == "sigma") {
        if (e.size() != 1 || e.begin()->first != Word{i}) {
          throw SemanticError(where(line) + "sigma must map " + p.variables[i] + " to a nonzero multiple of itself");
        }
        merge(p, line, i, j, e.begin()->second, std::nullopt);
      } else {
        merge(p, line, i, j, std::nullopt, affine_part(p, line, e));
      }
      return;
    }

    if (w.size() < 5 || w[3] != "=") {
      throw ParseError("expected: " + kw + " <later var> <earlier var> = <expr>", line.number, column_of(line, 0));
    }
    auto [i, j] = ordered_pair(p, line, w);
    std::size_t rhs = column_of(line, 4) - 1;
    if (kw == "c") {
      RingElement c = ring.parse(std::string(rhs, ' ') + line.text.substr(rhs), line.number);
      if (c.is_zero()) {
        throw SemanticError(where(line) + "c_{" + p.variables[i] + "," + p.variables[j] + "} must be nonzero");
      }
      merge(p, line, i, j, c, std::nullopt);
      return;
    }
    FreeElement e = parse_free(p, line, rhs);
    RingElement c;
    if (auto it = e.find(Word{i, j}); it != e.end()) {
      c = it->second;
      e.erase(it);
    }
    if (c.is_zero()) {
      throw SemanticError(where(line) + "c_{" + p.variables[i] + "," + p.variables[j] + "} must be nonzero");
    }
    merge(p, line, i, j, c, affine_part(p, line, e));
  }

  std::vector<Line> lines_;
  std::optional<Ring> ring_;
  std::size_t n_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, PairData> pairs_;
};

std::string ring_line(const RingDescriptor& d) {
  switch (d.kind) {
    case RingKind::PrimeField:
      return "ring Fp " + std::to_string(d.modulus);
    case RingKind::Rationals:
      return "ring Q";
    case RingKind::Residue:
      return "ring Zmod " + std::to_string(d.modulus);
    case RingKind::UnivariatePoly:
      return d.modulus == 0 ? "ring poly Q " + d.variable : "ring poly Fp " + std::to_string(d.modulus) + " " + d.variable;
    case RingKind::QuotientPoly: {
      Ring aux(RingDescriptor::univariate(d.modulus, "x"));
      std::vector<Scalar> c(d.quotient.begin(), d.quotient.end());
      return "ring quot Fp " + std::to_string(d.modulus) + " " + aux.to_string(aux.make(c));
    }
  }
  return {};
}

}  // namespace

Presentation parse_presentation(std::string_view text) { return FileParser(text).parse(); }

std::string serialize_presentation(const Presentation& p) {
  Ring ring(p.ring);
  std::ostringstream out;
  out << "name " << p.name << "\n";
  out << ring_line(p.ring) << "\n";
  out << "vars";
  for (const auto& v : p.variables) out << " " << v;
  out << "\n";
  for (std::size_t k = 0; k < p.num_vars(); ++k) {
    if (p.sigma[k].generator_image) {
      out << "sigma " << p.variables[k] << " " << ring.variable() << " -> "
          << ring.to_string(*p.sigma[k].generator_image) << "\n";
    }
    if (p.delta[k].generator_image) {
      out << "delta " << p.variables[k] << " " << ring.variable() << " -> "
          << ring.to_string(*p.delta[k].generator_image) << "\n";
    }
  }
  auto coeff = [&](const RingElement& c) { return "(" + ring.to_string(c) + ")"; };
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    for (std::size_t j = i + 1; j < p.num_vars(); ++j) {
      const auto& c = p.c[i][j];
      const auto& low = p.lower[i][j];
      if (ring.is_one(c) && low.is_zero()) continue;
      out << "rel " << p.variables[j] << " " << p.variables[i] << " = ";
      if (!ring.is_one(c)) out << coeff(c) << " * ";
      out << p.variables[i] << " " << p.variables[j];
      for (std::size_t k = 0; k < p.num_vars(); ++k) {
        if (!low.linear[k].is_zero()) out << " + " << coeff(low.linear[k]) << " * " << p.variables[k];
      }
      if (!low.constant.is_zero()) out << " + " << coeff(low.constant);
      out << "\n";
    }
  }
  out << "bijective " << (p.bijective ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace skewpbw
