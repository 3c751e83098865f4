"""Compare two candidate coefficients c in [s_vw, [s_vw, s_xy]] = c s_vw on random so(8) samples.

The symmetric candidate b(w,x)b(w,y) - b(v,x)b(v,y) cannot be right in general:
swapping x and y negates s_xy but leaves it unchanged.
"""

import argparse

import numpy as np

from extremal_lie.models import (
    commutator, hyperbolic_form, random_siegel_pair, siegel, siegel_bracket_coefficient,
    siegel_coefficient_symmetric,
)
from extremal_lie.scalars import parse_field


def main(p: int, samples: int, seed: int):
    F = parse_field(p)
    B = hyperbolic_form(4)
    g = np.random.default_rng(seed)
    hits = {"symmetric": 0, "antisymmetric": 0, "both sides zero": 0}
    for _ in range(samples):
        v, w = random_siegel_pair(F, B, g)
        x, y = g.integers(0, p, 8), g.integers(0, p, 8)
        S = siegel(F, B, v, w)
        lhs = commutator(F, S, commutator(F, S, siegel(F, B, x, y)))
        hits["symmetric"] += np.array_equal(lhs, F.reduce(S * siegel_coefficient_symmetric(F, B, v, w, x, y)))
        hits["antisymmetric"] += np.array_equal(lhs, F.reduce(S * siegel_bracket_coefficient(F, B, v, w, x, y)))
        hits["both sides zero"] += not lhs.any()
    for k, v in hits.items():
        print(f"{k:16s} {v}/{samples}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    main(ns.p, ns.samples, ns.seed)
