"""Fit the separation constant c1 = min gap / |s| of the Nuij operator per degree."""

import argparse
import math

import numpy as np

from hyplab.corpus import random_roots
from hyplab.polycore import is_hyperbolic, vieta
from hyplab.tschirnsplit import nuij


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--degrees", default="2,3,4")
    args = ap.parse_args()

    for d in map(int, args.degrees.split(",")):
        rng = np.random.default_rng(2024 + d)
        polys = [vieta(random_roots(rng, d, radius=2.0)) for _ in range(args.samples)]
        for s in (1e-1, 1e-2, 1e-3):
            c1, bad = math.inf, 0
            for a in polys:
                for sign in (1, -1):
                    out, rep = nuij(a, sign * s)
                    bad += not (is_hyperbolic(out) and rep.shift_sign_ok)
                    c1 = min(c1, rep.min_gap / s)
            print(f"d={d} |s|={s:g} c1={c1:.6f} failures={bad}")


if __name__ == "__main__":
    main()
