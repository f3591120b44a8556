#include "skewpbw/rewriter.hpp"

namespace skewpbw {

namespace {

using Word = std::vector<WordToken>;

WordToken coeff_token(RingElement r) {
  WordToken t;
  t.is_variable = false;
  t.coeff = std::move(r);
  return t;
}

WordToken var_token(std::size_t k) {
  WordToken t;
  t.var = k;
  return t;
}

struct Pending {
  RingElement coeff;
  Word word;
};

}  // namespace

SkewPoly reference_normalize(const Presentation& p, const std::vector<WordToken>& word) {
  Ring ring(p.ring);
  SkewPoly out;
  std::vector<Pending> stack{{ring.one(), word}};

  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.coeff.is_zero()) continue;
    Word& w = cur.word;

    if (!w.empty() && !w.front().is_variable) {
      cur.coeff = ring.mul(cur.coeff, w.front().coeff);
      w.erase(w.begin());
      stack.push_back(std::move(cur));
      continue;
    }

    bool rewrote = false;
    for (std::size_t k = 0; k + 1 < w.size() && !rewrote; ++k) {
      const WordToken& a = w[k];
      const WordToken& b = w[k + 1];
      auto splice = [&](Word middle) {
        Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        next.insert(next.end(), middle.begin(), middle.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
        return next;
      };
      if (!a.is_variable && !b.is_variable) {
        stack.push_back({cur.coeff, splice({coeff_token(ring.mul(a.coeff, b.coeff))})});
        rewrote = true;
      } else if (a.is_variable && !b.is_variable) {
        // x_i r = sigma_i(r) x_i + delta_i(r)
        RingElement s = apply_endo(p.sigma[a.var], b.coeff, ring);
        RingElement d = apply_derivation(p.delta[a.var], b.coeff, ring);
        std::size_t i = a.var;
        stack.push_back({cur.coeff, splice({coeff_token(s), var_token(i)})});
        if (!d.is_zero()) stack.push_back({cur.coeff, splice({coeff_token(d)})});
        rewrote = true;
      } else if (a.is_variable && b.is_variable && a.var > b.var) {
        std::size_t i = b.var, j = a.var;
        const Affine& low = p.lower[i][j];
        stack.push_back({cur.coeff, splice({coeff_token(p.c[i][j]), var_token(i), var_token(j)})});
        if (!low.constant.is_zero()) stack.push_back({cur.coeff, splice({coeff_token(low.constant)})});
        for (std::size_t v = 0; v < low.linear.size(); ++v) {
          if (low.linear[v].is_zero()) continue;
          stack.push_back({cur.coeff, splice({coeff_token(low.linear[v]), var_token(v)})});
        }
        rewrote = true;
      }
    }
    if (rewrote) continue;

    Monomial m(p.num_vars());
    for (const auto& t : w) m = m.raised(t.var, 1);
    out.accumulate(m, cur.coeff, ring);
  }
  return out;
}

std::vector<WordToken> random_word(const Algebra& algebra, Rng& rng, std::size_t max_length) {
  std::size_t len = 1 + draw_below(rng, max_length);
  std::vector<WordToken> word;
  while (word.size() < len) {
    if (draw_below(rng, 4) == 0) {
      RingElement r = algebra.ring().random(rng, 1);
      if (!r.is_zero()) word.push_back(coeff_token(std::move(r)));
    } else {
      word.push_back(var_token(draw_below(rng, algebra.num_vars())));
    }
  }
  return word;
}

std::string format_word(const Algebra& algebra, const std::vector<WordToken>& word) {
  std::string out;
  for (const auto& t : word) {
    if (!out.empty()) out += "*";
    out += t.is_variable ? algebra.presentation().variables[t.var] : "(" + algebra.ring().to_string(t.coeff) + ")";
  }
  return out;
}

}  // namespace skewpbw
