"""Corpus-wide ratio of root Lipschitz constants to the Bronshtein bound under grid refinement."""

import argparse

from hyplab.corpus import NEST, bronshtein_corpus
from hyplab.curvelab import bronshtein_bound, root_lipschitz


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grids", default="1024,2048,4096,8192")
    args = ap.parse_args()

    corpus = bronshtein_corpus()
    for grid in map(int, args.grids.split(",")):
        worst, name = 0.0, ""
        for fam in corpus:
            a = fam.sample(grid)
            r = float(root_lipschitz(a, NEST.I0).max() / bronshtein_bound(a, NEST))
            if r > worst:
                worst, name = r, fam.name
        print(f"N={grid} kappa={worst:.6f} attained by {name}")


if __name__ == "__main__":
    main()
