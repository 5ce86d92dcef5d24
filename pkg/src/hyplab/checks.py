"""Built-in invariant corpus behind ``hyplab check``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .corpus import NEST, bronshtein_corpus, random_roots
from .curvelab import SampledCurve, bronshtein_bound, holder_seminorm, root_curve, root_lipschitz
from .exprdsl import eval_expr, parse, to_string
from .polycore import is_hyperbolic, ordered_roots, vieta
from .tschirnsplit import check_b2_bound, check_dominance, nuij, split, tschirnhausen
from .tuplemetric import dist, dist_bruteforce

CHECK_SEED = 12345


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _round_trip(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(200):
        x = np.sort(rng.uniform(-5, 5, int(rng.integers(1, 9))))
        worst = max(worst, float(np.max(np.abs(np.array(ordered_roots(vieta(x)).roots) - x))))
    return worst <= 1e-8, f"max root error {worst:.3g}"


def _sorted_distance(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(300):
        d = int(rng.integers(2, 8))
        x, y = rng.normal(size=d), rng.normal(size=d)
        worst = max(worst, abs(dist(x, y) - dist_bruteforce(x, y)))
    return worst <= 1e-12, f"max deviation {worst:.3g}"


def _tschirnhausen(rng) -> tuple[bool, str]:
    bad = 0
    for _ in range(200):
        lam = random_roots(rng, int(rng.integers(2, 7)))
        a = vieta(lam)
        t = tschirnhausen(a)
        sq = float(np.sum((lam + t.shift) ** 2))
        if not check_dominance(t) or abs(-2 * t.a2 - sq) > 1e-8 * max(1.0, sq):
            bad += 1
        pair = split(a)
        if pair is not None and not check_b2_bound(a, pair):
            bad += 1
    return bad == 0, f"{bad} violations"


def _nuij(rng) -> tuple[bool, str]:
    bad = 0
    for _ in range(40):
        a = vieta(random_roots(rng, int(rng.integers(2, 5)), radius=2.0))
        for s in (0.1, -0.01):
            out, rep = nuij(a, s)
            if not (is_hyperbolic(out) and rep.min_gap > 0 and rep.shift_sign_ok):
                bad += 1
    return bad == 0, f"{bad} failures"


def _example41(rng) -> tuple[bool, str]:
    n_grid = 2048
    x = np.linspace(-2, 2, n_grid + 1)
    lim = root_curve(SampledCurve(-2, 2, np.stack([0 * x, -x ** 2], 1), "coefficients"))
    worst = math.inf
    for n in (1, 4, 16):
        a = SampledCurve(-2, 2, np.stack([0 * x, -(x ** 2 + 1 / n ** 2)], 1), "coefficients")
        g = (root_curve(a) - lim).component(1)
        worst = min(worst, holder_seminorm(g, 1.0, (-1, 1)))
    target = 2 - math.sqrt(2)
    return worst >= target - 1e-6, f"min C^0,1 gap {worst:.6f} vs {target:.6f}"


def _bronshtein(rng) -> tuple[bool, str]:
    ratios = []
    for fam in bronshtein_corpus()[:12]:
        a = fam.sample(1024)
        ratios.append(root_lipschitz(a, NEST.I0).max() / bronshtein_bound(a, NEST))
    kappa = max(ratios)
    return 0 < kappa < math.inf, f"kappa {kappa:.4f}"


def _dsl(rng) -> tuple[bool, str]:
    ok = eval_expr("2+3*4", 0, 0) == 14 and eval_expr("-2^2", 0, 0) == -4
    src = "-(x^2 + 1/n^2) * max(x, 1, 2)"
    ok = ok and parse(to_string(parse(src))) == parse(src)
    return ok, "precedence and printer round trip"


CHECKS: dict[str, Callable] = {
    "vieta round trip": _round_trip,
    "sorted distance lemma": _sorted_distance,
    "tschirnhausen, dominance and b2 bound": _tschirnhausen,
    "nuij separation and shifts": _nuij,
    "hyperbola family lipschitz gap": _example41,
    "bronshtein ratio": _bronshtein,
    "expression language": _dsl,
}


def run_checks(seed: int = CHECK_SEED) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS.items():
        rng = np.random.default_rng(seed)
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, not a crashed CLI
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
