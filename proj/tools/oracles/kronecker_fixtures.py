#!/usr/bin/env python3
"""Reference certificates for shifted-generator reductions over F_5[t].

For a triple (u1, u2, u) the script scans pairs (x1, x2) of degree <= 2 in
the same order as the C++ search (by maximal degree, then lexicographically
by base-p index with x1 most significant) and keeps the first pair whose
shifted gcd has the same radical as gcd(u1, u2, u). Radicals come from
sympy's factorization over GF(p), so nothing here shares code with the
library.

    python3 tools/oracles/kronecker_fixtures.py > tests/data/kronecker_f5.json
"""

import json
import random

from sympy import GF, Poly, symbols

P = 5
BOUND = 2
COUNT = 50
SEED = 20170401

t = symbols("t")


def poly(coeffs):
    """Low-degree-first coefficient list to a sympy polynomial over GF(P)."""
    return Poly(list(reversed(coeffs)) or [0], t, domain=GF(P))


def coeffs_of(f):
    out = [int(c) % P for c in reversed(f.all_coeffs())]
    while out and out[-1] == 0:
        out.pop()
    return out


def from_index(index):
    digits = []
    while index:
        digits.append(index % P)
        index //= P
    return digits


def radical(polys):
    g = Poly(0, t, domain=GF(P))
    for f in polys:
        g = g.gcd(f)
    if g.is_zero:
        return None
    factors = sorted(tuple(coeffs_of(f.monic())) for f, _ in g.factor_list()[1])
    return tuple(factors)


def certificate(us, u):
    target = radical(us + [u])
    lower = 1
    for level in range(BOUND + 1):
        limit = P ** (level + 1)
        for i1 in range(limit):
            for i2 in range(limit):
                if level > 0 and i1 < lower and i2 < lower:
                    continue
                xs = [from_index(i1), from_index(i2)]
                shifted = [us[k] + poly(xs[k]) * u for k in range(2)]
                if radical(shifted) == target:
                    return xs
        lower = limit
    raise SystemExit("no certificate within the degree bound")


def main():
    rng = random.Random(SEED)
    handpicked = [
        ([[0, 0, 1], [0, 0, 1]], [1, 1]),
        ([[0, 1], [1, 1]], [1]),
        ([[0, 0, 1], [0, 0, 1]], [0, 0, 1]),
        ([[], []], []),
        ([[0, 1], [0, 1]], [0, 0, 1]),
        ([[4, 0, 1], [1, 2]], [2, 0, 1]),
    ]
    triples = list(handpicked)
    while len(triples) < COUNT:
        draw = [[rng.randrange(P) for _ in range(BOUND + 1)] for _ in range(3)]
        triples.append(([draw[0], draw[1]], draw[2]))

    cases = []
    for us_raw, u_raw in triples:
        us = [poly(c) for c in us_raw]
        u = poly(u_raw)
        xs = certificate(us, u)
        cases.append({
            "us": [coeffs_of(f) for f in us],
            "u": coeffs_of(u),
            "xs": [coeffs_of(poly(x)) for x in xs],
        })
    # One case per line keeps diffs readable.
    header = json.dumps({"p": P, "degree_bound": BOUND, "seed": SEED})[:-1]
    body = ",\n  ".join(json.dumps(c, separators=(",", ":")) for c in cases)
    print(header + ', "cases": [\n  ' + body + "\n]}")


if __name__ == "__main__":
    main()
