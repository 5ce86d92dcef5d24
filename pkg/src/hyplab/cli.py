"""Command line entry point: ``hyplab run | nuij | check``."""

from __future__ import annotations

import argparse
import logging
import sys

from .checks import run_checks
from .errors import GridError, HyperbolicityError, SpecError
from .experiments import emit_csv, load_spec, run_convergence, run_nuij

log = logging.getLogger("hyplab")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyplab", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="convergence experiment for a family spec")
    run.add_argument("--spec", required=True)
    run.add_argument("--out", required=True)
    run.add_argument("--grid", type=int, default=None, help="override the spec's grid size N")
    run.add_argument("--seed", type=int, default=0, help="seed of the Hoelder pair sampler")
    run.add_argument("--parallel", type=int, default=1, help="worker processes over n")

    nj = sub.add_parser("nuij", help="Nuij approximation of the limit family")
    nj.add_argument("--spec", required=True)
    nj.add_argument("--s", required=True, type=_floats, help="comma-separated s values")
    nj.add_argument("--out", required=True)
    nj.add_argument("--grid", type=int, default=None)

    sub.add_parser("check", help="run the built-in invariant corpus")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command == "check":
        results = run_checks()
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}")
        return 0 if all(r.ok for r in results) else 1
    try:
        spec = load_spec(args.spec)
        if args.command == "run":
            if args.parallel < 1:
                raise SpecError("--parallel must be at least 1", field="parallel")
            result = run_convergence(spec, grid=args.grid, seed=args.seed, parallel=args.parallel)
        else:
            result = run_nuij(spec, args.s, grid=args.grid)
        emit_csv(result, args.out)
        log.info("wrote %d rows to %s", len(result.rows), args.out)
    except (SpecError, HyperbolicityError, GridError) as exc:
        print(f"hyplab: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
