"""Jacobian-minor norms and graph areas of root fields over intervals and rectangles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .curvelab import SampledCurve, fd_derivative
from .errors import GridError

MERGE_FACTOR = 10.0


@dataclass(frozen=True, eq=False)
class SampledField:
    """Ordered roots on a uniform grid over a box U0 in R^m, m in {1, 2}.

    ``values`` has shape ``(*grid_shape, d)``; ``box`` lists (lo, hi) per axis.
    """

    box: tuple[tuple[float, float], ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        box = tuple((float(a), float(b)) for a, b in self.box)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "box", box)
        m = len(box)
        if m not in (1, 2):
            raise GridError(f"only m in {{1, 2}} is supported, got m={m}")
        if v.ndim != m + 1:
            raise GridError(f"values must have shape (*grid, d) with {m} grid axes")
        for (a, b), n in zip(box, v.shape[:m]):
            if not b > a:
                raise GridError("grid steps must be positive")
            if n < 3:
                raise GridError("each axis needs at least 3 nodes")

    @classmethod
    def from_curve(cls, c: SampledCurve) -> "SampledField":
        v = c.values if c.values.ndim == 2 else c.values[:, None]
        return cls(((c.lo, c.hi),), v)

    @classmethod
    def from_function(cls, f: Callable, box: Sequence[tuple[float, float]],
                      shape: Sequence[int]) -> "SampledField":
        """Sample ``f(*coords) -> (..., d)``; ``shape`` counts intervals per axis."""
        axes = [np.linspace(a, b, n + 1) for (a, b), n in zip(box, shape)]
        grids = np.meshgrid(*axes, indexing="ij")
        v = np.asarray(f(*grids), dtype=float)
        if v.ndim == len(box):
            v = v[..., None]
        return cls(tuple(box), v)

    @property
    def m(self) -> int:
        return len(self.box)

    @property
    def d(self) -> int:
        return self.values.shape[-1]

    @property
    def steps(self) -> tuple[float, ...]:
        return tuple((b - a) / (n - 1) for (a, b), n in zip(self.box, self.values.shape))

    @property
    def measure(self) -> float:
        return math.prod(b - a for a, b in self.box)

    def sheet(self, j: int) -> "SampledField":
        return SampledField(self.box, self.values[..., j:j + 1])


@dataclass(frozen=True)
class AreaReport:
    per_root_area: tuple[float, ...]
    jacobian_norm_lq: dict[float, float] = field(default_factory=dict)


def partials(fld: SampledField) -> np.ndarray:
    """Finite-difference partials, shape ``(*grid, m, d)``."""
    out = []
    for axis, ((a, b), h) in enumerate(zip(fld.box, fld.steps)):
        v = np.moveaxis(fld.values, axis, 0)
        shape = v.shape
        flat = SampledCurve(a, b, v.reshape(shape[0], -1), "vector")
        dv = fd_derivative(flat, 1).values.reshape(shape)
        out.append(np.moveaxis(dv, 0, axis))
    return np.stack(out, axis=-2)


def integrate(steps, y: np.ndarray) -> float:
    """Tensor-product trapezoid rule of a grid function."""
    w = 1.0
    for axis, h in enumerate(steps):
        n = y.shape[axis]
        wa = np.full(n, h)
        wa[0] = wa[-1] = 0.5 * h
        shape = [1] * y.ndim
        shape[axis] = n
        w = w * wa.reshape(shape)
    return float(np.sum(w * y))


def jacobian_minor(fld: SampledField) -> np.ndarray:
    """|Jf| per node: root-sum-square of all k x k minors, k = min(m, d)."""
    J = partials(fld)
    m, d = fld.m, fld.d
    k = min(m, d)
    if k == 1:
        return np.sqrt(np.sum(J ** 2, axis=(-2, -1)))
    acc = np.zeros(J.shape[:-2])
    for i, j in itertools.combinations(range(d), 2):
        det = J[..., 0, i] * J[..., 1, j] - J[..., 1, i] * J[..., 0, j]
        acc += det ** 2
    return np.sqrt(acc)


def jacobian_minor_norm(fld: SampledField, q: float) -> float:
    if not 1 <= q < math.inf:
        raise ValueError("q must lie in [1, inf)")
    y = jacobian_minor(fld) ** q
    return integrate(fld.steps, y) ** (1.0 / q)


def _sheet_integrand(J: np.ndarray, j: int) -> np.ndarray:
    return np.sqrt(1.0 + np.sum(J[..., :, j] ** 2, axis=-1))


def graph_area(fld: SampledField, j: int) -> float:
    """Area (arc length when m = 1) of the graph of the j-th ordered root."""
    if not 0 <= j < fld.d:
        raise IndexError(j)
    return integrate(fld.steps, _sheet_integrand(partials(fld), j))


def zero_set_area(fld: SampledField, distinct: bool | None = None) -> float:
    """H^m of the union of the root sheets.

    Sheets closer than MERGE_FACTOR times the grid step are counted once; the
    estimate is biased low where sheets touch.  ``distinct=None`` detects
    whether any sheets come that close.
    """
    J = partials(fld)
    tol = MERGE_FACTOR * max(fld.steps)
    v = fld.values
    total = integrate(fld.steps, _sheet_integrand(J, 0))
    for j in range(1, fld.d):
        y = _sheet_integrand(J, j)
        close = np.abs(v[..., j] - v[..., j - 1]) <= tol
        if distinct is True or (distinct is None and not np.any(close)):
            close = np.zeros_like(close)
        total += integrate(fld.steps, np.where(close, 0.0, y))
    return total


def area_report(fld: SampledField, qs: Sequence[float] = (1.0,)) -> AreaReport:
    return AreaReport(
        tuple(graph_area(fld, j) for j in range(fld.d)),
        {float(q): jacobian_minor_norm(fld, q) for q in qs},
    )


def field_lq(fld: SampledField, y: np.ndarray, q: float) -> float:
    return integrate(fld.steps, np.abs(y) ** q) ** (1.0 / q)


def polynomial_functional_gap(fld_n: SampledField, fld: SampledField,
                              R: Callable[[np.ndarray], np.ndarray], q: float = 1.0) -> float:
    """||R(D lambda_n) - R(D lambda)||_{L^q(U0)} for R acting on the flattened m*d partials."""
    if fld_n.values.shape != fld.values.shape or fld_n.box != fld.box:
        raise GridError("fields live on different grids")
    shape = fld.values.shape[:-1]
    xn = partials(fld_n).reshape(*shape, -1)
    x = partials(fld).reshape(*shape, -1)
    return field_lq(fld, R(xn) - R(x), q)


__all__ = [
    "SampledField", "AreaReport", "partials", "integrate", "jacobian_minor",
    "jacobian_minor_norm", "graph_area", "zero_set_area", "area_report",
    "field_lq", "polynomial_functional_gap",
]
