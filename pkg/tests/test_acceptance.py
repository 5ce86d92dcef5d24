"""Acceptance criteria at their stated tolerances; each records a PASS/FAIL line."""

import math
import time
from importlib import resources

import numpy as np
import pytest

from conftest import record
from hyplab.corpus import NEST, bronshtein_corpus, random_roots
from hyplab.curvelab import bronshtein_bound, fd_derivative, interpolate, root_lipschitz
from hyplab.experiments import load_spec, run_convergence, sample_family
from hyplab.polycore import is_hyperbolic, ordered_roots, vieta
from hyplab.rootgeom import SampledField, graph_area
from hyplab.tschirnsplit import check_b2_bound, check_dominance, nuij, split, tschirnhausen
from hyplab.tuplemetric import dist, dist_bruteforce

SPEC = resources.files("hyplab") / "specs" / "example41.spec"
AREA_LIMIT = 2 * math.sqrt(2)
LIP_GAP = 2 - math.sqrt(2)


@pytest.fixture(scope="module")
def example41():
    spec = load_spec(SPEC)
    t0 = time.perf_counter()
    res = run_convergence(spec)
    return spec, res, time.perf_counter() - t0


def test_criterion_01_lipschitz_gap(example41):
    spec, res, elapsed = example41
    assert spec.grid == 8192 and spec.ns == tuple(float(n) for n in range(1, 65))
    ns, lip = res.column("holder_diff[2]", 1.0)
    _, lip_vec = res.column("holder_diff", 1.0)
    worst = float(min(lip.min(), lip_vec.min()))
    ok = len(ns) == 64 and worst >= LIP_GAP - 1e-6 and elapsed < 30
    record(1, ok, f"min C^0,1 gap {worst:.6f} >= {LIP_GAP - 1e-6:.6f}, run {elapsed:.1f} s < 30 s")
    assert ok


def test_criterion_02_derivative_values():
    spec = load_spec(SPEC)
    worst = 0.0
    for n in range(1, 33):
        f = sample_family(spec, n).roots.component(1)
        df = fd_derivative(f, 1)
        for sign in (-1, 1):
            worst = max(worst, abs(interpolate(df, sign / n) - sign / math.sqrt(2)))
    ok = worst <= 1e-3
    record(2, ok, f"max |f_n'(+-1/n) -+ 1/sqrt2| = {worst:.2e} <= 1e-3 for n <= 32")
    assert ok


def test_criterion_03_w11_closed_form(example41):
    _, res, _ = example41
    ns, dl1 = res.column("dlq_diff[2]", 1.0)
    got = dict(zip(ns.tolist(), dl1.tolist()))
    worst = max(abs(got[n] - 2 * (1 + 1 / n - math.sqrt(1 + 1 / n ** 2))) for n in (1, 2, 4, 8, 16))
    ok = worst <= 2e-4
    record(3, ok, f"max L1 derivative error {worst:.2e} <= 2e-4")
    assert ok


def test_criterion_04_sorted_distance():
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    worst = 0.0
    for d in range(2, 8):
        for _ in range(1000):
            x, y = rng.normal(size=d) * 3, rng.normal(size=d) * 3
            worst = max(worst, abs(dist(x, y) - dist_bruteforce(x, y)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 10
    record(4, ok, f"max |dist - brute force| {worst:.2e} <= 1e-12, {elapsed:.1f} s < 10 s")
    assert ok


def test_criterion_05_vieta_round_trip():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(500):
        x = np.sort(rng.uniform(-5, 5, int(rng.integers(1, 9))))
        worst = max(worst, float(np.max(np.abs(ordered_roots(vieta(x)).as_array() - x))))
    ok = worst <= 1e-8
    record(5, ok, f"max root error {worst:.2e} <= 1e-8 over 500 vectors")
    assert ok


def test_criterion_06_tschirnhausen_invariants():
    rng = np.random.default_rng(6)
    tol = 1e-8
    bad = {"dominance": 0, "sum of squares": 0, "b2": 0}
    splits = 0
    for _ in range(500):
        lam = random_roots(rng, int(rng.integers(2, 8)))
        t = tschirnhausen(vieta(lam))
        if not check_dominance(t, slack=tol):
            bad["dominance"] += 1
        sq = float(np.sum((lam + t.shift) ** 2))
        if abs(-2 * t.a2 - sq) > tol * max(1.0, sq):
            bad["sum of squares"] += 1
    while splits < 500:
        lam = random_roots(rng, int(rng.integers(2, 8)))
        a = vieta(lam)
        pair = split(a)
        if pair is None:
            continue
        splits += 1
        t2 = abs(tschirnhausen(a).a2)
        for f in (pair.left, pair.right):
            if f.degree >= 2 and abs(tschirnhausen(f).a2) > 4 * t2 + tol * max(1.0, t2):
                bad["b2"] += 1
        if not check_b2_bound(a, pair):
            bad["b2"] += 1
    ok = not any(bad.values())
    record(6, ok, "violations " + ", ".join(f"{k} {v}" for k, v in bad.items()))
    assert ok


def test_criterion_07_nuij():
    decades = (1e-1, 1e-2, 1e-3)
    failures = 0
    spread = {}
    for d in (2, 3, 4):
        rng = np.random.default_rng(2024 + d)
        polys = [vieta(random_roots(rng, d, radius=2.0)) for _ in range(200)]
        c1 = []
        for s in decades:
            ratio = math.inf
            for a in polys:
                for sign in (1, -1):
                    out, rep = nuij(a, sign * s)
                    if not (is_hyperbolic(out) and rep.shift_sign_ok and rep.min_gap > 0):
                        failures += 1
                    ratio = min(ratio, rep.min_gap / s)
            c1.append(ratio)
        mid = float(np.median(c1))
        spread[d] = (mid, max(abs(c / mid - 1) for c in c1))
    ok = failures == 0 and all(m > 0 and dev <= 0.2 for m, dev in spread.values())
    detail = "; ".join(f"d={d} c1={m:.4f} spread {dev:.1%}" for d, (m, dev) in spread.items())
    record(7, ok, f"{failures} failures; {detail}")
    assert ok


def test_criterion_08_area_convergence():
    def sheets(n):
        def f(x):
            r = np.sqrt(x ** 2 + 1.0 / n ** 2)
            return np.stack([-r, r], -1)
        return SampledField.from_function(f, [(-1.0, 1.0)], [8192])

    ns = [2 ** k for k in range(9)]
    errs = [abs(graph_area(sheets(n), 1) - AREA_LIMIT) for n in ns]
    monotone = all(b < a for a, b in zip(errs, errs[1:]))
    ok = monotone and errs[-1] < 0.01
    record(8, ok, f"area error at n=256 {errs[-1]:.4f} < 0.01, monotone {monotone}")
    assert ok


def _kappa(grid: int) -> float:
    ratios = []
    for fam in bronshtein_corpus():
        a = fam.sample(grid)
        ratios.append(root_lipschitz(a, NEST.I0).max() / bronshtein_bound(a, NEST))
    return max(ratios)


def test_criterion_09_bronshtein():
    assert len(bronshtein_corpus()) == 50 and max(f.degree for f in bronshtein_corpus()) <= 4
    k1, k2 = _kappa(4096), _kappa(8192)
    change = abs(k2 / k1 - 1)
    ok = 0 < k1 < math.inf and change <= 0.2
    record(9, ok, f"kappa {k1:.4f} at h, {k2:.4f} at h/2, change {change:.1%} <= 20%")
    assert ok


def test_criterion_10_holder_dichotomy(example41):
    _, res, _ = example41
    ratios = {}
    for gamma in (0.25, 0.5, 0.75):
        ns, v = res.column("holder_diff[2]", gamma)
        vals = dict(zip(ns.tolist(), v.tolist()))
        ratios[gamma] = vals[64.0] / vals[1.0]
    _, lip = res.column("holder_diff[2]", 1.0)
    ok = all(r < 0.05 for r in ratios.values()) and lip.min() >= LIP_GAP - 1e-6
    detail = ", ".join(f"gamma {g}: {r:.4f}" for g, r in ratios.items())
    record(10, ok, f"n=64 / n=1 ratios {detail} (need < 0.05); gamma 1 gap holds")
    assert ok
