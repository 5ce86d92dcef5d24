"""Sampled curves on uniform grids: finite differences, norms and the pointwise bounds.

A curve is stored as an ``(N+1,)`` array (scalar) or an ``(N+1, k)`` array
(coefficient, root or plain vector curves).  Vector values are measured with
the Euclidean norm pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import GridError
from .polycore import roots_batch, translate_batch
from .tschirnsplit import cluster_ranges

KINDS = ("coefficients", "roots", "scalar", "vector")
EXACT_PAIR_LIMIT = 4096
HOLDER_SEED = 20240611

Interval = tuple[float, float]


@dataclass(frozen=True, eq=False)
class SampledCurve:
    lo: float
    hi: float
    values: np.ndarray
    kind: str = "scalar"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if not self.hi > self.lo:
            raise GridError("empty grid interval")
        if v.ndim not in (1, 2) or v.shape[0] < 3:
            raise GridError("a curve needs at least 3 nodes")
        if self.kind == "coefficients" and v.shape[0] < 2 * (self.dim + 1) + 1:
            raise GridError(f"N={v.shape[0] - 1} is below 2(d+1) for d={self.dim}")

    @classmethod
    def from_function(cls, f: Callable, lo: float, hi: float, n: int, kind: str = "scalar"):
        x = np.linspace(lo, hi, n + 1)
        return cls(lo, hi, np.asarray(f(x), dtype=float), kind)

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / self.n

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n + 1)

    @property
    def dim(self) -> int:
        return 1 if self.values.ndim == 1 else self.values.shape[1]

    def component(self, j: int) -> "SampledCurve":
        if self.values.ndim == 1:
            if j != 0:
                raise IndexError(j)
            return self
        return SampledCurve(self.lo, self.hi, self.values[:, j], "scalar")

    def like(self, values, kind: str | None = None) -> "SampledCurve":
        return SampledCurve(self.lo, self.hi, values, kind or self.kind)

    def __sub__(self, other: "SampledCurve") -> "SampledCurve":
        _same_grid(self, other)
        return self.like(self.values - other.values, "vector" if self.values.ndim == 2 else "scalar")


@dataclass(frozen=True)
class IntervalNest:
    I0: Interval
    I1: Interval

    def __post_init__(self):
        (a0, b0), (a1, b1) = self.I0, self.I1
        if not (a0 < b0 and a1 < b1):
            raise ValueError("intervals must be nonempty")
        if not (a1 < a0 and b0 < b1):
            raise ValueError(f"I0={self.I0} is not compactly inside I1={self.I1}")

    @property
    def delta(self) -> float:
        return min(self.I0[0] - self.I1[0], self.I1[1] - self.I0[1])

    def check(self, c: SampledCurve) -> None:
        tol = 1e-9 * c.h
        if self.I1[0] < c.lo - tol or self.I1[1] > c.hi + tol:
            raise GridError(f"I1={self.I1} leaves the grid [{c.lo}, {c.hi}]")


@dataclass(frozen=True)
class NormReport:
    interval: IntervalNest | Interval
    ck: dict[int, float] = field(default_factory=dict)
    holder: dict[float, float] = field(default_factory=dict)
    lq: dict[float, float] = field(default_factory=dict)
    w1q: dict[float, float] = field(default_factory=dict)


@dataclass(frozen=True)
class PointwiseBoundReport:
    x0: float
    delta: float
    A1: float
    A2: float
    lambda_prime_bound_factor: float

    @property
    def A(self) -> float:
        return 6.0 * max(self.A1, self.A2)


@dataclass(frozen=True)
class ReclusiveScan:
    zero_components: list[tuple[int, int]]
    isolated_flags: list[bool]
    candidates: list[int]


def _same_grid(a: SampledCurve, b: SampledCurve) -> None:
    if a.values.shape != b.values.shape or a.lo != b.lo or a.hi != b.hi:
        raise GridError("curves live on different grids")


# -- finite differences ------------------------------------------------------


def fornberg_weights(z: float, x: np.ndarray, m: int) -> np.ndarray:
    """Weights of the order-``m`` derivative at ``z`` from nodes ``x`` (Fornberg 1988)."""
    n = len(x)
    c = np.zeros((n, m + 1))
    c1, c4 = 1.0, x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2, c5, c4 = 1.0, c4, x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


@lru_cache(maxsize=None)
def _stencils(k: int) -> tuple[int, np.ndarray, np.ndarray]:
    """Half-width p, central weights (2p+1,) and left one-sided weights (p, k+2)."""
    p = (k + 1) // 2
    central = fornberg_weights(0.0, np.arange(-p, p + 1, dtype=float), k)
    nodes = np.arange(k + 2, dtype=float)
    left = np.array([fornberg_weights(float(i), nodes, k) for i in range(p)])
    return p, central, left


def boundary_width(k: int) -> int:
    """Number of nodes at each end that use one-sided stencils for order ``k``."""
    return (k + 1) // 2 if k > 0 else 0


def fd_derivative(c: SampledCurve, k: int) -> SampledCurve:
    """Order-``k`` derivative with second-order stencils, one-sided at the ends."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    kind = "scalar" if c.values.ndim == 1 else "vector"
    if k == 0:
        return c.like(c.values.copy(), kind)
    v = c.values
    n1 = v.shape[0]
    p, central, left = _stencils(k)
    if n1 < max(2 * p + 1, k + 2):
        raise GridError(f"{n1} nodes cannot carry an order-{k} stencil")
    out = np.zeros_like(v)
    for o, w in zip(range(-p, p + 1), central):
        out[p:n1 - p] += w * v[p + o:n1 - p + o]
    # right boundary is the mirror of the left one with sign (-1)^k
    flip = (-1.0) ** k
    for i in range(p):
        out[i] = np.tensordot(left[i], v[:k + 2], axes=1)
        out[n1 - 1 - i] = flip * np.tensordot(left[i], v[::-1][:k + 2], axes=1)
    return c.like(out / c.h ** k, kind)


# -- interval helpers ----------------------------------------------------------


def node_range(c: SampledCurve, J: Interval | None, min_nodes: int = 1) -> slice:
    """Slice of the nodes lying in ``J`` (grid interval when None)."""
    if J is None:
        return slice(0, c.n + 1)
    lo, hi = J
    tol = 1e-9 * c.h
    if lo < c.lo - tol or hi > c.hi + tol or lo > hi:
        raise GridError(f"interval {J} is not inside the grid [{c.lo}, {c.hi}]")
    i0 = int(math.ceil((lo - c.lo) / c.h - 1e-9))
    i1 = int(math.floor((hi - c.lo) / c.h + 1e-9))
    i0, i1 = max(i0, 0), min(i1, c.n)
    while i1 - i0 + 1 < min_nodes:
        # widen to the enclosing cells when J is thinner than the grid
        if i0 > 0:
            i0 -= 1
        if i1 - i0 + 1 < min_nodes and i1 < c.n:
            i1 += 1
        if i0 == 0 and i1 == c.n:
            break
    return slice(i0, i1 + 1)


def _pointwise(v: np.ndarray) -> np.ndarray:
    return np.abs(v) if v.ndim == 1 else np.linalg.norm(v, axis=1)


def interpolate(c: SampledCurve, x0: float) -> np.ndarray | float:
    """Piecewise-linear value of the curve at ``x0``."""
    if x0 < c.lo - 1e-9 * c.h or x0 > c.hi + 1e-9 * c.h:
        raise GridError(f"x0={x0} outside the grid")
    t = min(max((x0 - c.lo) / c.h, 0.0), float(c.n))
    i = min(int(math.floor(t)), c.n - 1)
    w = t - i
    out = (1.0 - w) * c.values[i] + w * c.values[i + 1]
    return float(out) if np.ndim(out) == 0 else out


# -- norms ----------------------------------------------------------------------


def sup_norm(c: SampledCurve, J: Interval | None = None) -> float:
    return float(np.max(_pointwise(c.values[node_range(c, J)])))


def ck_norm(c: SampledCurve, k: int, J: Interval | None = None) -> float:
    """max_{j <= k} sup_J |c^{(j)}|."""
    return max(sup_norm(fd_derivative(c, j), J) for j in range(k + 1))


def _lag_set(m: int, rng: np.random.Generator) -> np.ndarray:
    short = np.arange(1, min(64, m - 1) + 1)
    if m - 1 <= 64:
        return short
    edges = np.unique(np.geomspace(65, m, 24).astype(int))
    extra = [rng.integers(a, b, size=min(8, b - a)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
    return np.unique(np.concatenate([short, *extra, [m - 1]]))


def holder_seminorm(c: SampledCurve, gamma: float, J: Interval | None = None,
                    seed: int = HOLDER_SEED, exclude: int = 0) -> float:
    """sup |f(x) - f(y)| / |x - y|^gamma over node pairs in ``J``.

    For gamma = 1 adjacent pairs suffice (triangle inequality).  Otherwise all
    pairs are scanned up to EXACT_PAIR_LIMIT nodes, and beyond that every offset
    is scanned for a seeded, log-stratified subset of lags.  ``exclude`` drops
    that many nodes at each end of the grid (boundary stencil rows).
    """
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    sl = node_range(c, J, min_nodes=2)
    i0 = max(sl.start, exclude)
    i1 = min(sl.stop, c.n + 1 - exclude)
    if i1 - i0 < 2:
        i0, i1 = sl.start, sl.stop
    v = c.values[i0:i1]
    m = v.shape[0]
    if m < 2:
        return 0.0
    if gamma == 1.0:
        lags = np.array([1])
    elif m <= EXACT_PAIR_LIMIT:
        lags = np.arange(1, m)
    else:
        lags = _lag_set(m, np.random.default_rng(seed))
    best = 0.0
    for lag in lags:
        diff = _pointwise(v[lag:] - v[:-lag])
        q = float(diff.max()) / (lag * c.h) ** gamma
        best = max(best, q)
    return best


def lipschitz(c: SampledCurve, J: Interval | None = None, exclude: int = 0) -> float:
    return holder_seminorm(c, 1.0, J, exclude=exclude)


def derivative_lipschitz(c: SampledCurve, k: int, J: Interval | None = None) -> float:
    """Grid Lipschitz seminorm of the k-th derivative, boundary stencil rows excluded."""
    return lipschitz(fd_derivative(c, k), J, exclude=boundary_width(k))


def _trapz(y: np.ndarray, h: float) -> float:
    if y.shape[0] < 2:
        return 0.0
    return float(h * (y.sum() - 0.5 * (y[0] + y[-1])))


def lq_norm(c: SampledCurve, q: float, J: Interval | None = None) -> float:
    if not 1 <= q < math.inf:
        raise ValueError("q must lie in [1, inf)")
    y = _pointwise(c.values[node_range(c, J, min_nodes=2)]) ** q
    return _trapz(y, c.h) ** (1.0 / q)


KINK_FACTOR = 10.0


def derivative_norm(c: SampledCurve) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise |c'| and the indices of kink nodes.

    A node is a kink when its forward and backward difference quotients differ
    by more than KINK_FACTOR * h; there |c'| is the mean of the two one-sided
    magnitudes, elsewhere the magnitude of the central stencil.
    """
    v = c.values
    out = _pointwise(fd_derivative(c, 1).values)
    fwd = (v[1:] - v[:-1]) / c.h
    kinks = np.flatnonzero(_pointwise(fwd[1:] - fwd[:-1]) > KINK_FACTOR * c.h) + 1
    out[kinks] = 0.5 * (_pointwise(fwd[kinks]) + _pointwise(fwd[kinks - 1]))
    return out, kinks


def dlq_norm(c: SampledCurve, q: float, J: Interval | None = None) -> float:
    """L^q norm of |c'| (kink nodes take the one-sided mean)."""
    mag, _ = derivative_norm(c)
    return lq_norm(c.like(mag, "scalar"), q, J)


def w1q_norm(c: SampledCurve, q: float, J: Interval | None = None) -> float:
    return lq_norm(c, q, J) + dlq_norm(c, q, J)


def norm_report(c: SampledCurve, J: Interval | IntervalNest, ks=(0, 1), gammas=(), qs=()) -> NormReport:
    iv = J.I0 if isinstance(J, IntervalNest) else J
    return NormReport(
        J,
        {k: ck_norm(c, k, iv) for k in ks},
        {g: holder_seminorm(c, g, iv) for g in gammas},
        {q: lq_norm(c, q, iv) for q in qs},
        {q: w1q_norm(c, q, iv) for q in qs},
    )


# -- root curves -------------------------------------------------------------------


def root_curve(a: SampledCurve) -> SampledCurve:
    """Nodewise ordered roots of a coefficient curve."""
    if a.values.ndim == 1:
        v = a.values[:, None]
    else:
        v = a.values
    return a.like(roots_batch(v, x=a.x), "roots")


def tschirnhausen_curve(a: SampledCurve) -> SampledCurve:
    """Nodewise Tschirnhausen form as a coefficient curve whose first column is 0."""
    v = a.values if a.values.ndim == 2 else a.values[:, None]
    t = translate_batch(v, v[:, 0] / v.shape[1])
    t[:, 0] = 0.0
    return a.like(t, "coefficients")


def bronshtein_bound(a: SampledCurve, nest: IntervalNest) -> float:
    """max(1/delta, 1) * max_j ||a_j||_{C^{d-1,1}(I1)}^{1/j} (the constant C(d) taken as 1)."""
    nest.check(a)
    root_curve(a)
    d = a.dim
    best = 0.0
    for j in range(1, d + 1):
        aj = a.component(j - 1)
        norm = ck_norm(aj, d - 1, nest.I1) + derivative_lipschitz(aj, d - 1, nest.I1)
        best = max(best, norm ** (1.0 / j))
    return max(1.0 / nest.delta, 1.0) * best


def root_lipschitz(a: SampledCurve, J: Interval) -> np.ndarray:
    """Per-root grid Lipschitz constants of the ordered roots on ``J``."""
    lam = root_curve(a)
    return np.array([lipschitz(lam.component(j), J) for j in range(lam.dim)])


def a_delta(t: SampledCurve, x0: float, delta: float) -> PointwiseBoundReport:
    """The quantities A1, A2 and A = 6 max(A1, A2) on I(x0, delta)."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    J = (x0 - delta, x0 + delta)
    node_range(t, J)
    d = t.dim
    if d < 2:
        return PointwiseBoundReport(x0, delta, 0.0, 0.0, 0.0)
    scale = max(1.0, float(np.max(np.abs(t.values))))
    if np.max(np.abs(t.values[:, 0])) > 1e-12 * scale:
        raise ValueError("curve is not in Tschirnhausen form (a_1 != 0)")
    a2 = t.component(1)
    a2_x0 = abs(interpolate(a2, x0))
    A1 = max(math.sqrt(a2_x0) / delta, math.sqrt(derivative_lipschitz(a2, 1, J)))
    sup_a2 = sup_norm(a2, J)
    A2 = 0.0
    for j in range(2, d + 1):
        lip = derivative_lipschitz(t.component(j - 1), d - 1, J)
        A2 = max(A2, float(lip * sup_a2 ** ((d - j) / 2.0)) ** (1.0 / d))
    lam_prime = fd_derivative(root_curve(t), 1)
    observed = float(np.max(np.abs(interpolate(lam_prime, x0))))
    A = 6.0 * max(A1, A2)
    if A > 0:
        factor = observed / A
    else:
        factor = 0.0 if observed <= 1e-12 else math.inf
    return PointwiseBoundReport(x0, delta, A1, A2, factor)


def glaeser_check(f: SampledCurve, x0: float, M: float,
                  slack: float = 1e-9) -> tuple[bool, bool | None]:
    """Both Glaeser inequalities at ``x0``; the second is None when its hypothesis fails."""
    v = f.values
    if v.ndim != 1:
        raise ValueError("glaeser_check needs a scalar curve")
    if not (np.all(v >= 0) or np.all(v <= 0)):
        raise ValueError("f is not sign-definite on the grid")
    if M <= 0:
        raise ValueError("M must be positive")
    fx = abs(interpolate(f, x0))
    fp = abs(interpolate(fd_derivative(f, 1), x0))
    r = math.sqrt(fx) / M
    lip = derivative_lipschitz(f, 1, (x0 - r, x0 + r))
    tol = slack * (1.0 + fp)
    first = bool(fp <= (M + lip / M) * math.sqrt(fx) + tol)
    second = bool(fp <= 2.0 * M * math.sqrt(fx) + tol) if lip <= M * M else None
    return first, second


def interpolation_check(f: SampledCurve, k: int, J: Interval) -> float:
    """Worst ratio |f^(j)| / (|J|^-j (||f||_inf + |f^(k)|_{C^{0,1}} |J|^{k+1})), 1 <= j <= k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if f.values.ndim != 1:
        raise ValueError("interpolation_check needs a scalar curve")
    sl = node_range(f, J, min_nodes=2)
    length = J[1] - J[0]
    base = sup_norm(f, J) + derivative_lipschitz(f, k, J) * length ** (k + 1)
    worst = 0.0
    for j in range(1, k + 1):
        top = float(np.max(np.abs(fd_derivative(f, j).values[sl])))
        if top == 0.0:
            continue
        denom = length ** (-j) * base
        worst = max(worst, top / denom if denom > 0 else math.inf)
    return worst


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    idx = np.flatnonzero(np.diff(np.concatenate([[0], mask.astype(np.int8), [0]])))
    return [(int(a), int(b) - 1) for a, b in zip(idx[::2], idx[1::2])]


def _isolated(run: tuple[int, int], n: int) -> bool:
    return run[0] == run[1] and 0 < run[0] < n


def reclusive_scan(t: SampledCurve, tau_zero: float | None = None,
                   split_tol: float = 0.1) -> ReclusiveScan:
    """Grid approximation of the reclusive points of a Tschirnhausen-form curve."""
    a2 = t.values[:, 1] if t.values.ndim == 2 and t.dim > 1 else np.zeros(t.n + 1)
    if tau_zero is None:
        tau_zero = 1e-10 * max(1.0, float(np.max(np.abs(a2))))
    lam = root_curve(t).values
    zero = np.abs(a2) <= tau_zero
    comps = _runs(zero)
    flags = [_isolated(r, t.n) for r in comps]
    cands = {r[0] for r, ok in zip(comps, flags) if ok}
    # clusters of the full numerical split at each node off the zero set
    seen: set[tuple[int, int]] = set()
    for i in np.flatnonzero(~zero):
        for p, q in cluster_ranges(lam[i], split_tol):
            if q > p:
                seen.add((p, q))
    for p, q in sorted(seen):
        block = lam[:, p:q + 1]
        b2 = -0.5 * np.sum((block - block.mean(axis=1, keepdims=True)) ** 2, axis=1)
        tau_b = 1e-10 * max(1.0, float(np.max(np.abs(b2))))
        zb = np.abs(b2) <= tau_b
        for r in _runs(zb):
            i = r[0]
            if _isolated(r, t.n) and not zero[i] and (p, q) in set(cluster_ranges(lam[i], split_tol)):
                cands.add(i)
    return ReclusiveScan(comps, flags, sorted(cands))


__all__ = [
    "SampledCurve", "IntervalNest", "NormReport", "PointwiseBoundReport", "ReclusiveScan",
    "fornberg_weights", "fd_derivative", "boundary_width", "node_range", "interpolate",
    "sup_norm", "ck_norm", "holder_seminorm", "lipschitz", "derivative_lipschitz",
    "lq_norm", "dlq_norm", "derivative_norm", "w1q_norm", "norm_report", "root_curve", "tschirnhausen_curve",
    "bronshtein_bound", "root_lipschitz", "a_delta", "glaeser_check",
    "interpolation_check", "reclusive_scan",
]
