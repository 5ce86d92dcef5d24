"""Tschirnhausen form, normalization, numerical splitting and the Nuij operator."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DegenerateError, HyperbolicityError, InternalError
from .polycore import (
    PolyCoeffs,
    _deriv,
    as_poly,
    is_hyperbolic,
    ordered_roots,
    translate,
    vieta,
)

DOMINANCE_SLACK = 1e-12


@dataclass(frozen=True)
class TschirnForm:
    """Coefficients (a~_2, ..., a~_d) of P_a(Z - a_1/d); a~_1 = 0 is implicit.

    ``shift`` is a_1/d: roots(t) = roots(a) + shift.
    """

    coeffs: tuple[float, ...]
    shift: float

    @property
    def degree(self) -> int:
        return len(self.coeffs) + 1

    @property
    def a2(self) -> float:
        return self.coeffs[0] if self.coeffs else 0.0

    @property
    def poly(self) -> PolyCoeffs:
        return PolyCoeffs((0.0, *self.coeffs))


@dataclass(frozen=True)
class NormalizedPoly:
    coeffs: tuple[float, ...]
    scale: float

    @property
    def poly(self) -> PolyCoeffs:
        return PolyCoeffs((0.0, *self.coeffs))


@dataclass(frozen=True)
class SplitPair:
    left: PolyCoeffs
    right: PolyCoeffs
    gap: float


@dataclass(frozen=True)
class NuijReport:
    s: float
    min_gap: float
    max_shift: float
    shift_sign_ok: bool


@dataclass(frozen=True)
class DominanceCheck:
    ok: bool
    worst_j: int
    ratio: float

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class B2Check:
    ok: bool
    ratio: float

    def __bool__(self):
        return self.ok


def tschirnhausen(a) -> TschirnForm:
    a = as_poly(a)
    shift = a.coeffs[0] / a.degree
    t = translate(a, shift)
    return TschirnForm(tuple(t.coeffs[1:]), shift)


def check_dominance(t: TschirnForm, slack: float = DOMINANCE_SLACK) -> DominanceCheck:
    """|a~_j|^{1/j} <= sqrt(2) |a~_2|^{1/2} for every j; reports the worst j.

    The comparison is made between coefficients, |a~_j| <= (2 |a~_2|)^{j/2},
    with a backward-error allowance slack * C(d, j) * (2 rho)^j, rho the root
    scale of the source.  Coincident roots leave round-off of size eps * rho^j
    in a~_j, which no fixed slack on |a~_j|^{1/j} could absorb.
    """
    d = t.degree
    rho = max([abs(t.shift)] + [abs(c) ** (1.0 / j) for j, c in enumerate(t.coeffs, start=2)])
    a2 = abs(t.a2)
    rhs = math.sqrt(a2)
    worst_j, worst = 2, 0.0
    ok = True
    for j, c in enumerate(t.coeffs, start=2):
        if abs(c) > (2.0 * a2) ** (j / 2.0) + slack * comb(d, j) * (2.0 * rho) ** j:
            ok = False
        lhs = abs(c) ** (1.0 / j)
        ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
        if ratio > worst:
            worst_j, worst = j, ratio
    return DominanceCheck(ok, worst_j, worst)


def normalize(t: TschirnForm, threshold: float = 1e-14) -> NormalizedPoly:
    """Rescale to a~_2 = -1; output roots equal input roots divided by ``scale``."""
    if t.degree < 2 or abs(t.a2) <= threshold:
        raise DegenerateError("a~_2 vanishes: the polynomial is numerically Z^d")
    scale = math.sqrt(abs(t.a2))
    rest = tuple(c / scale ** j for j, c in enumerate(t.coeffs[1:], start=3))
    return NormalizedPoly((-1.0, *rest), scale)


def split(a, tol: float = 0.1) -> SplitPair | None:
    """Split P_a at the leftmost largest root gap; None when no gap exceeds the tolerance."""
    a = as_poly(a)
    lam = ordered_roots(a).roots
    if len(lam) < 2:
        return None
    k = split_index(lam, tol)
    if k is None:
        return None
    return SplitPair(vieta(lam[:k + 1]), vieta(lam[k + 1:]), lam[k + 1] - lam[k])


def split_index(lam, tol: float) -> int | None:
    """Index k of the leftmost largest gap lam[k+1] - lam[k], if it beats the tolerance."""
    if len(lam) < 2:
        return None
    gaps = [lam[i + 1] - lam[i] for i in range(len(lam) - 1)]
    spread = lam[-1] - lam[0]
    g = max(gaps)
    if g <= tol * (1.0 + spread):
        return None
    tie = 1e-12 * (1.0 + spread)
    return next(i for i, v in enumerate(gaps) if v >= g - tie)


def cluster_ranges(lam, tol: float = 0.1, start: int = 0) -> list[tuple[int, int]]:
    """Index ranges (inclusive) of the leaves of the recursive split of sorted roots."""
    k = split_index(lam, tol)
    if k is None:
        return [(start, start + len(lam) - 1)]
    return (cluster_ranges(lam[:k + 1], tol, start)
            + cluster_ranges(lam[k + 1:], tol, start + k + 1))


def full_split(a, tol: float = 0.1) -> list[PolyCoeffs]:
    """Recursive :func:`split` until no factor has a gap; factors left to right."""
    pair = split(a, tol)
    if pair is None:
        return [as_poly(a)]
    return full_split(pair.left, tol) + full_split(pair.right, tol)


def check_b2_bound(a, pair: SplitPair) -> B2Check:
    """|b~_2| <= 4 |a~_2| for both factors of a splitting (degree-1 factors are vacuous)."""
    a2 = abs(tschirnhausen(a).a2)
    ok, worst = True, 0.0
    for f in (pair.left, pair.right):
        if f.degree < 2:
            continue
        b2 = abs(tschirnhausen(f).a2)
        if b2 > 4.0 * a2 + 1e-12:
            ok = False
        worst = max(worst, b2 / a2 if a2 > 0 else math.inf)
    return B2Check(ok, worst)


FIXED_SHIFT_FRACTION = 1e-2


def shift_signs_ok(lam: np.ndarray, shifts: np.ndarray, s: float) -> np.ndarray:
    """Row-wise check that every root moves against the sign of s.

    A d-fold root of P_a stays a (simple) root of the output, so at such rows
    exactly one shift may vanish.  That root sits in an output cluster of width
    ~|s| and is found only to a small fraction of |s|, hence the allowance
    FIXED_SHIFT_FRACTION * |s| for it.
    """
    lam = np.atleast_2d(lam)
    shifts = np.atleast_2d(shifts)
    if s == 0:
        return np.ones(lam.shape[0], dtype=bool)
    tol = 1e-9 * np.maximum(1.0, np.max(np.abs(lam), axis=1))
    pos = math.copysign(1.0, s) * shifts > 0
    fixed = lam[:, -1] - lam[:, 0] <= tol
    zero = np.abs(shifts) <= np.maximum(tol, FIXED_SHIFT_FRACTION * abs(s))[:, None]
    relaxed = fixed & np.all(pos | zero, axis=1) & (np.sum(zero & ~pos, axis=1) <= 1)
    return np.all(pos, axis=1) | relaxed


def nuij_matrix(d: int, s: float) -> np.ndarray:
    """Linear map full coeffs of P -> full coeffs of (1 + s d/dZ)^{d-1} P, degree d."""
    m = np.zeros((d + 1, d + 1))
    for col in range(d + 1):
        e = [0.0] * (d + 1)
        e[col] = 1.0
        m[:, col] = _nuij_full(e, s)
    return m


def _nuij_full(p: list[float], s: float) -> list[float]:
    d = len(p) - 1
    out = [0.0] * (d + 1)
    q = list(p)
    for k in range(d):
        w = comb(d - 1, k) * s ** k
        off = d + 1 - len(q)
        for i, c in enumerate(q):
            out[off + i] += w * c
        if len(q) == 1:
            break
        q = _deriv(q)
    return out


def nuij(a, s: float) -> tuple[PolyCoeffs, NuijReport]:
    """Apply (1 + s d/dZ)^{d-1} to P_a and report root separation and shifts."""
    a = as_poly(a)
    if not is_hyperbolic(a):
        raise HyperbolicityError("nuij needs a hyperbolic input")
    d = a.degree
    out = PolyCoeffs(tuple(_nuij_full(a.full(), s)[1:]))
    try:
        lam_s = ordered_roots(out).roots
    except HyperbolicityError as exc:
        raise InternalError(f"Nuij output lost hyperbolicity: {exc}") from exc
    lam = ordered_roots(a).roots
    gaps = [lam_s[i + 1] - lam_s[i] for i in range(d - 1)]
    min_gap = min(gaps) if gaps else math.inf
    shifts = [x - y for x, y in zip(lam, lam_s)]
    max_shift = max(abs(v) for v in shifts)
    sign_ok = bool(shift_signs_ok(np.array([lam]), np.array([shifts]), s)[0])
    return out, NuijReport(float(s), min_gap, max_shift, sign_ok)
