"""Unordered real d-tuples, their metric, and metric speed of root curves."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .curvelab import Interval, SampledCurve, _trapz, derivative_norm, node_range

BRUTEFORCE_MAX_D = 8


@dataclass(frozen=True)
class UnorderedTuple:
    """A multiset of d reals, stored by its increasing representative."""

    sorted: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(sorted(float(v) for v in self.sorted))
        if not vals:
            raise ValueError("an unordered tuple needs at least one entry")
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "sorted", vals)

    @classmethod
    def of(cls, values: Iterable[float]) -> "UnorderedTuple":
        return cls(tuple(values))

    @property
    def d(self) -> int:
        return len(self.sorted)


@dataclass(frozen=True)
class CurveEnergyReport:
    speed: SampledCurve
    energy: dict[float, float] = field(default_factory=dict)
    kinks: tuple[int, ...] = ()


def _tuple(x) -> UnorderedTuple:
    return x if isinstance(x, UnorderedTuple) else UnorderedTuple.of(x)


def dist(x, y) -> float:
    """(1/sqrt d) times the Euclidean distance of the sorted representatives."""
    x, y = _tuple(x), _tuple(y)
    if x.d != y.d:
        raise ValueError(f"dimension mismatch: {x.d} vs {y.d}")
    diff = np.subtract(x.sorted, y.sorted)
    return float(np.linalg.norm(diff)) / math.sqrt(x.d)


def dist_bruteforce(x: Sequence[float], y: Sequence[float]) -> float:
    """Minimum over all permutations; only meant as an oracle for :func:`dist`."""
    xs = np.asarray(x.sorted if isinstance(x, UnorderedTuple) else x, dtype=float)
    ys = np.asarray(y.sorted if isinstance(y, UnorderedTuple) else y, dtype=float)
    d = len(xs)
    if len(ys) != d:
        raise ValueError(f"dimension mismatch: {d} vs {len(ys)}")
    if d > BRUTEFORCE_MAX_D:
        raise ValueError(f"d={d} exceeds the brute-force limit {BRUTEFORCE_MAX_D}")
    perms = np.array(list(itertools.permutations(range(d))))
    sq = np.sum((xs[None, :] - ys[perms]) ** 2, axis=1)
    return math.sqrt(float(sq.min())) / math.sqrt(d)


def curve_distance(a: SampledCurve, b: SampledCurve) -> np.ndarray:
    """Nodewise tuple distance of two root curves on the same grid."""
    va = np.sort(np.atleast_2d(a.values.T).T, axis=1)
    vb = np.sort(np.atleast_2d(b.values.T).T, axis=1)
    if va.shape != vb.shape:
        raise ValueError("root curves differ in shape")
    return np.linalg.norm(va - vb, axis=1) / math.sqrt(va.shape[1])


def metric_speed(roots: SampledCurve, J: Interval | None = None,
                 qs: Sequence[float] = (1.0, 2.0)) -> CurveEnergyReport:
    """|Lambda'| at each node and the q-energies int_J |Lambda'|^q.

    Where the forward and backward difference quotients disagree by more than
    10h the curve is treated as kinked there and the node takes the mean of the
    two one-sided speeds.
    """
    v = roots.values if roots.values.ndim == 2 else roots.values[:, None]
    mag, kinks = derivative_norm(roots.like(v, "roots"))
    speed = mag / math.sqrt(v.shape[1])
    curve = roots.like(speed, "scalar")
    sl = node_range(curve, J, min_nodes=2)
    energy = {float(q): _trapz(speed[sl] ** q, roots.h) for q in qs}
    return CurveEnergyReport(curve, energy, tuple(int(k) for k in kinks))


__all__ = [
    "UnorderedTuple", "CurveEnergyReport", "dist", "dist_bruteforce",
    "curve_distance", "metric_speed",
]
