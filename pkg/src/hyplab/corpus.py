"""Test corpora: smooth hyperbolic curve families and random root configurations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curvelab import IntervalNest, SampledCurve
from .polycore import vieta_batch

CORPUS_SEED = 7
CORPUS_SIZE = 50
GRID = (-2.0, 2.0)
NEST = IntervalNest((-1.0, 1.0), (-2.0, 2.0))

RootFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CurveFamily:
    """A hyperbolic coefficient curve a = vieta(roots(x)) with smooth coefficients."""

    name: str
    degree: int
    roots: RootFn

    def sample(self, n: int, lo: float = GRID[0], hi: float = GRID[1]) -> SampledCurve:
        x = np.linspace(lo, hi, n + 1)
        lam = np.asarray(self.roots(x), dtype=float).reshape(self.degree, -1).T
        return SampledCurve(lo, hi, vieta_batch(lam), "coefficients")


def _stack(*fs: RootFn) -> RootFn:
    return lambda x: np.stack([np.broadcast_to(f(x), x.shape) for f in fs])


def _curated() -> list[CurveFamily]:
    # families whose ordered roots meet, so lambda is Lipschitz but not C^1
    return [
        CurveFamily("cross", 2, _stack(lambda x: x, lambda x: -x)),
        CurveFamily("cross_cubic", 2, _stack(lambda x: x ** 3, lambda x: -x ** 3)),
        CurveFamily("hyperbola", 2, _stack(lambda x: np.sqrt(x ** 2 + 0.01),
                                           lambda x: -np.sqrt(x ** 2 + 0.01))),
        CurveFamily("tangent", 2, _stack(lambda x: x ** 2, lambda x: 0 * x)),
        CurveFamily("triple_cross", 3, _stack(lambda x: x, lambda x: -x, lambda x: 0 * x)),
        CurveFamily("fan", 3, _stack(lambda x: x, lambda x: 2 * x, lambda x: -3 * x)),
        CurveFamily("wave", 3, _stack(np.sin, np.cos, lambda x: np.sin(2 * x))),
        CurveFamily("quad_cross", 4, _stack(lambda x: x, lambda x: -x,
                                            lambda x: 1 + x / 2, lambda x: 1 - x / 2)),
        CurveFamily("constant", 4, _stack(lambda x: 0 * x - 1.5, lambda x: 0 * x,
                                          lambda x: 0 * x, lambda x: 0 * x + 2)),
        CurveFamily("linear", 1, _stack(lambda x: 3 * x - 1)),
    ]


def _random_family(rng: np.random.Generator, k: int) -> CurveFamily:
    d = int(rng.integers(1, 5))
    amp = rng.uniform(0.2, 1.5, d)
    freq = rng.uniform(0.3, 2.5, d)
    phase = rng.uniform(0, 2 * np.pi, d)
    slope = rng.uniform(-1.0, 1.0, d)
    shift = rng.uniform(-1.0, 1.0, d)

    def roots(x, amp=amp, freq=freq, phase=phase, slope=slope, shift=shift):
        x = np.asarray(x)[None, :]
        return (amp[:, None] * np.sin(freq[:, None] * x + phase[:, None])
                + slope[:, None] * x + shift[:, None])

    return CurveFamily(f"random{k:02d}", d, roots)


def bronshtein_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE) -> list[CurveFamily]:
    """Curated crossing families followed by seeded random trigonometric ones (d <= 4)."""
    fams = _curated()
    rng = np.random.default_rng(seed)
    k = 0
    while len(fams) < size:
        fams.append(_random_family(rng, k))
        k += 1
    return fams[:size]


def random_roots(rng: np.random.Generator, d: int, radius: float = 5.0,
                 cluster_prob: float = 0.3) -> np.ndarray:
    """Roots in [-radius, radius]; with ``cluster_prob`` some coincide or nearly coincide."""
    x = rng.uniform(-radius, radius, d)
    if d > 1 and rng.random() < cluster_prob:
        m = int(rng.integers(2, d + 1))
        centre = x[0]
        spread = 0.0 if rng.random() < 0.5 else 10.0 ** rng.uniform(-3, -1)
        x[:m] = centre + spread * rng.standard_normal(m)
    return np.sort(x)


__all__ = [
    "CurveFamily", "bronshtein_corpus", "random_roots", "NEST", "GRID",
    "CORPUS_SEED", "CORPUS_SIZE",
]
