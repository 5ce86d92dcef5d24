"""Monic real polynomials, hyperbolicity testing and the ordered root map.

A coefficient vector ``a = (a_1, ..., a_d)`` stands for the monic polynomial
``P_a(Z) = Z^d + a_1 Z^{d-1} + ... + a_d``.  Two root solvers live here:

* :func:`ordered_roots` handles one polynomial at a time.  Distinct roots are
  isolated with Sturm sequences on the square-free factors produced by a
  numerical gcd cascade, refined by bisection and polished with Newton.
* :func:`roots_batch` handles many polynomials at once (one per grid node of a
  sampled curve).  It uses the interlacing of the roots of a hyperbolic
  polynomial with those of its derivative, so every bracket holds exactly one
  root and plain vectorized bisection suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .errors import HyperbolicityError, ToleranceError

GCD_RTOL = 1e-10


@dataclass(frozen=True)
class PolyCoeffs:
    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if len(c) < 1:
            raise ValueError("a monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full(self) -> list[float]:
        """Coefficients highest degree first, including the leading 1."""
        return [1.0, *self.coeffs]

    def __call__(self, z: float) -> float:
        return evaluate(self, z)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]


@dataclass(frozen=True)
class RootVector:
    roots: tuple[float, ...]

    def __post_init__(self):
        r = tuple(float(v) for v in self.roots)
        if any(r[i] > r[i + 1] for i in range(len(r) - 1)):
            raise ValueError("roots must be increasingly ordered")
        object.__setattr__(self, "roots", r)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.roots)


@dataclass(frozen=True)
class HyperbolicityReport:
    ok: bool
    distinct: int
    defect: int
    gcd_tol: float = GCD_RTOL
    backward_error: float = float("nan")

    def __bool__(self):
        return self.ok


def as_poly(a) -> PolyCoeffs:
    return a if isinstance(a, PolyCoeffs) else PolyCoeffs(tuple(a))


# ---------------------------------------------------------------------------
# dense coefficient-list helpers (highest degree first, not necessarily monic)


def _horner(p: Sequence[float], x: float) -> float:
    v = 0.0
    for c in p:
        v = v * x + c
    return v


def _deriv(p: Sequence[float]) -> list[float]:
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def _nth_deriv(p: Sequence[float], k: int) -> list[float]:
    q = list(p)
    for _ in range(k):
        q = _deriv(q)
    return q


def _scale_max(p: Sequence[float]) -> list[float]:
    m = max(abs(c) for c in p)
    return [c / m for c in p] if m > 0 else list(p)


def _monic(p: Sequence[float]) -> list[float]:
    return [c / p[0] for c in p]


def _polydiv(u: Sequence[float], v: Sequence[float]) -> tuple[list[float], list[float]]:
    u = list(u)
    nv = len(v)
    if len(u) < nv:
        return [0.0], u
    q = []
    for i in range(len(u) - nv + 1):
        f = u[i] / v[0]
        q.append(f)
        for j in range(1, nv):
            u[i + j] -= f * v[j]
    return q, u[len(u) - nv + 1:]


def _strip(r: Sequence[float], tol: float) -> list[float]:
    i = 0
    while i < len(r) and abs(r[i]) <= tol:
        i += 1
    return list(r[i:])


def _gcd(u: Sequence[float], v: Sequence[float], rtol: float = GCD_RTOL) -> list[float]:
    """Monic numerical gcd; remainders below ``rtol`` (relative) count as zero."""
    u, v = _scale_max(u), _scale_max(v)
    while len(v) > 1:
        _, r = _polydiv(u, v)
        r = _strip(r, rtol)
        if not r:
            return _monic(v)
        u, v = v, _scale_max(r)
    return [1.0]


def _root_scale(coeffs: Sequence[float]) -> float:
    return max((abs(c) ** (1.0 / (j + 1)) for j, c in enumerate(coeffs)), default=0.0)


def _rescaled(coeffs: Sequence[float], rho: float) -> list[float]:
    """Coefficients of rho^{-d} P(rho W), leading 1 included."""
    out = [1.0]
    for j, c in enumerate(coeffs):
        # repeated division keeps tiny scales from underflowing in rho ** j
        for _ in range(j + 1):
            c /= rho
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# basic algebra


def vieta(roots: Sequence[float]) -> PolyCoeffs:
    """Coefficients of prod (Z - r) by iterated multiplication with monic factors."""
    roots = [float(r) for r in roots]
    if not roots:
        raise ValueError("need at least one root")
    if not all(math.isfinite(r) for r in roots):
        raise ValueError("roots must be finite")
    p = [1.0]
    for r in roots:
        p = [a - r * b for a, b in zip(p + [0.0], [0.0] + p)]
    return PolyCoeffs(tuple(p[1:]))


def vieta_batch(roots: np.ndarray) -> np.ndarray:
    """Row-wise :func:`vieta` for an ``(M, d)`` array, returns ``(M, d)``."""
    roots = np.asarray(roots, dtype=float)
    m, d = roots.shape
    p = np.zeros((m, d + 1))
    p[:, 0] = 1.0
    for k in range(d):
        r = roots[:, k:k + 1]
        p[:, 1:k + 2] = p[:, 1:k + 2] - r * p[:, 0:k + 1]
    return p[:, 1:]


def evaluate(a, z: float) -> float:
    return _horner(as_poly(a).full(), z)


def derivative(a) -> tuple[PolyCoeffs, float]:
    """P_a' = d * (monic polynomial); returns that monic polynomial and d."""
    a = as_poly(a)
    d = a.degree
    if d < 2:
        raise ValueError("derivative of a linear polynomial is a constant")
    return PolyCoeffs(tuple((d - j) / d * c for j, c in enumerate(a.coeffs[:-1], start=1))), float(d)


def cauchy_bound(a) -> float:
    return 1.0 + max(abs(c) for c in as_poly(a).coeffs)


def translate(a, c: float) -> PolyCoeffs:
    """Coefficients of P_a(Z - c) by repeated synthetic division; roots move by +c."""
    p = as_poly(a).full()
    t = -float(c)
    n = len(p) - 1
    for i in range(n):
        for j in range(1, n - i + 1):
            p[j] += t * p[j - 1]
    return PolyCoeffs(tuple(p[1:]))


# ---------------------------------------------------------------------------
# Sturm machinery


@dataclass(frozen=True)
class SturmChain:
    chain: tuple[tuple[float, ...], ...]
    cauchy_bound: float

    def variations(self, x: float) -> int:
        signs = []
        for p in self.chain:
            v = _horner(p, x)
            if v != 0.0:
                signs.append(v > 0)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def count(self, lo: float, hi: float) -> int:
        """Distinct real roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)

    def distinct_real_roots(self) -> int:
        b = self.cauchy_bound
        return self.count(-b, b)


def _chain(p: Sequence[float], rtol: float) -> list[list[float]]:
    chain = [_scale_max(p)]
    if len(p) > 1:
        chain.append(_scale_max(_deriv(p)))
    while len(chain[-1]) > 1:
        _, r = _polydiv(chain[-2], chain[-1])
        r = _strip(r, rtol)
        if not r:
            break
        chain.append(_scale_max([-c for c in r]))
    return chain


def sturm_chain(a, rtol: float = GCD_RTOL) -> SturmChain:
    """Sturm sequence of the numerically square-free part of P_a."""
    a = as_poly(a)
    p = a.full()
    sqf = _square_free_part(p, rtol)
    return SturmChain(tuple(tuple(q) for q in _chain(sqf, rtol)), cauchy_bound(a))


def _square_free_part(p: Sequence[float], rtol: float) -> list[float]:
    if len(p) <= 2:
        return list(p)
    g = _gcd(p, _deriv(p), rtol)
    q, _ = _polydiv(_monic(p), g)
    return q


def _gcd_cascade(p: Sequence[float], rtol: float) -> list[tuple[int, list[float]]]:
    """Split monic p into factors f_k whose roots have multiplicity exactly k."""
    g = [_monic(p)]
    while len(g[-1]) > 1:
        g.append(_gcd(g[-1], _deriv(g[-1]), rtol))
    s = [_polydiv(g[k - 1], g[k])[0] for k in range(1, len(g))]
    s.append([1.0])
    out = []
    for k in range(1, len(s)):
        f = _polydiv(s[k - 1], s[k])[0]
        if len(f) > 1:
            out.append((k, _monic(f)))
    return out


def _sturm_count(chain, lo, hi):
    def var(x):
        prev = None
        n = 0
        for q in chain:
            v = _horner(q, x)
            if v != 0.0:
                s = v > 0
                if prev is not None and s != prev:
                    n += 1
                prev = s
        return n

    return var(lo) - var(hi), var


def _isolate(f: list[float], bound: float, rtol: float = GCD_RTOL) -> list[tuple[float, float]]:
    chain = _chain(f, rtol)
    _, var = _sturm_count(chain, -bound, bound)
    out = []
    stack = [(-bound, bound, var(-bound), var(bound))]
    min_width = 1e-14 * bound
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n <= 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        if hi - lo < min_width:
            raise ToleranceError(f"cannot separate {n} roots in [{lo}, {hi}]")
        mid = 0.5 * (lo + hi)
        if _horner(f, mid) == 0.0:
            # keep split points off the roots so each root sits inside (lo, hi)
            mid = lo + (hi - lo) * 0.5078125
        vm = var(mid)
        stack.append((mid, hi, vm, vhi))
        stack.append((lo, mid, vlo, vm))
    out.sort()
    return out


def _bisect(f: list[float], lo: float, hi: float, rtol: float = GCD_RTOL) -> tuple[float, float]:
    flo, fhi = _horner(f, lo), _horner(f, hi)
    if fhi == 0.0:
        return hi, hi
    if flo == 0.0:
        return lo, lo
    if (flo > 0) == (fhi > 0):
        # no visible sign change: fall back to Sturm-count bisection
        chain = _chain(f, rtol)
        _, var = _sturm_count(chain, lo, hi)
        vhi = var(hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if var(mid) - vhi >= 1:
                lo = mid
            else:
                hi = mid
        return lo, hi
    slo = flo > 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = _horner(f, mid)
        if fm == 0.0:
            return mid, mid
        if (fm > 0) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _polish(p: Sequence[float], r: float, lo: float, hi: float, steps: int = 3) -> float:
    dp = _deriv(p)
    best, fbest = r, abs(_horner(p, r))
    x = r
    for _ in range(steps):
        fx, dfx = _horner(p, x), _horner(dp, x)
        if fx == 0.0 or dfx == 0.0:
            break
        x = x - fx / dfx
        if not (lo <= x <= hi):
            break
        fx = abs(_horner(p, x))
        if fx < fbest:
            best, fbest = x, fx
        else:
            break
    return best


# Escalation ladder for the gcd threshold.  Rounding splits a k-fold root into
# a complex cluster of radius ~eps^(1/k), so a single threshold cannot both keep
# close simple roots apart and recognize high multiplicities.
_GCD_LADDER = (1e-9, 1e-8, 1e-7)
# Finer thresholds tried by ordered_roots when a merged cluster fails the
# residual test, i.e. simple roots closer than ~sqrt(gcd_tol) times the scale.
_GCD_FINE = (1e-12, 1e-14)


def _factor_at(p: list[float], d: int, tol: float):
    """Cascade factors and Sturm counts at one threshold; None if degrees do not add up."""
    factors = _gcd_cascade(p, tol)
    if sum(k * (len(f) - 1) for k, f in factors) != d:
        return None
    counts = []
    for k, f in factors:
        b = 1.0 + max(abs(c) for c in f[1:])
        counts.append(_sturm_count(_chain(f, tol), -b, b)[0])
    return factors, counts, tol


def _complete(result, d: int) -> bool:
    factors, counts, _ = result
    return sum(k * n for (k, _), n in zip(factors, counts)) == d


def _factor(p: list[float], d: int, gcd_tol: float):
    """Cascade factors and real-root counts, escalating the gcd threshold."""
    first = None
    for tol in (gcd_tol, *(t for t in _GCD_LADDER if t > gcd_tol)):
        result = _factor_at(p, d, tol)
        if result is None:
            continue
        if _complete(result, d):
            return result, True
        if first is None:
            first = result
    return first, False


# Largest weighted backward error |vieta(r)_j - a_j| / (C(d,j) (2 rho)^j) at
# which a real root vector still certifies P_a as numerically hyperbolic.
BACKWARD_TOL = 1e-10
_CLUSTER_WIDTHS = (1e-8, 1e-6, 1e-4, 1e-3, 1e-2)


def backward_error(a, roots: Sequence[float]) -> float:
    """Weighted coefficient distance between P_a and the polynomial with these roots."""
    a = as_poly(a)
    d = a.degree
    rho = _root_scale(a.coeffs)
    if rho == 0.0:
        return float(max(abs(r) for r in roots))
    back = vieta([r / rho for r in roots]).coeffs
    p = _rescaled(a.coeffs, rho)
    return max(abs(b - c) / (comb(d, j) * 2.0 ** j)
               for j, (b, c) in enumerate(zip(back, p[1:]), start=1))


def _merge_clusters(p: list[float], r: list[float], width: float) -> list[float]:
    """Replace each run of roots with gaps <= width by an m-fold root of P^(m-1)."""
    out: list[float] = []
    i = 0
    while i < len(r):
        j = i
        while j + 1 < len(r) and r[j + 1] - r[j] <= width:
            j += 1
        m = j - i + 1
        if m == 1:
            out.append(r[i])
        else:
            centre = sum(r[i:j + 1]) / m
            lo, hi = r[i] - width, r[j] + width
            out.extend([_polish(_nth_deriv(p, m - 1), centre, lo, hi, steps=8)] * m)
        i = j + 1
    return out


def _candidates(a: PolyCoeffs, p: list[float], rho: float, gcd_tol: float, tol: float):
    """Root vectors from every gcd threshold plus the interlacing solver and its cluster merges."""
    d = a.degree
    for t in sorted({gcd_tol, *_GCD_FINE, *_GCD_LADDER}):
        res = _factor_at(p, d, t)
        if res is not None and _complete(res, d):
            try:
                yield _roots_from(a, p, rho, res, tol)
            except ToleranceError:
                pass
    interlaced = sorted(_interlace_roots(np.array([p[1:]]))[0].tolist())
    # companion eigenvalues are backward stable; projecting a near-real pair
    # onto the axis moves the coefficients by the square of its imaginary part
    companion = sorted(np.roots(p).real.tolist())
    for base in (interlaced, companion):
        yield [r * rho for r in base]
        for w in _CLUSTER_WIDTHS:
            yield sorted(r * rho for r in _merge_clusters(p, base, w))


def _refine(p: list[float], r: list[float], iters: int = 60) -> list[float]:
    """Damped Gauss-Newton on the weighted Vieta residual of a rescaled monic p.

    The Vieta map is singular at repeated roots, so the Levenberg damping keeps
    steps bounded inside clusters.
    """
    d = len(r)
    w = np.array([comb(d, j) * 2.0 ** j for j in range(1, d + 1)])
    target = np.asarray(p[1:], dtype=float)
    x = np.asarray(r, dtype=float)

    def resid(x):
        return (vieta_batch(x[None, :])[0] - target) / w

    f = resid(x)
    mu = 1e-3
    for _ in range(iters):
        cost = float(np.max(np.abs(f)))
        if cost <= _EPS:
            break
        jac = np.empty((d, d))
        for i in range(d):
            q = np.concatenate([[1.0], vieta_batch(np.delete(x, i)[None, :])[0]]) if d > 1 else np.ones(1)
            jac[:, i] = -q / w
        while mu < 1e12:
            lhs = np.vstack([jac, math.sqrt(mu) * np.eye(d)])
            step = np.linalg.lstsq(lhs, np.concatenate([-f, np.zeros(d)]), rcond=None)[0]
            trial = x + step
            ft = resid(trial)
            if float(np.max(np.abs(ft))) < cost:
                x, f, mu = trial, ft, max(mu / 10.0, 1e-15)
                break
            mu *= 10.0
        else:
            break
    return sorted(x.tolist())


def _best_roots(a: PolyCoeffs, p: list[float], rho: float, gcd_tol: float, tol: float):
    scored = sorted({tuple(c): backward_error(a, c)
                     for c in _candidates(a, p, rho, gcd_tol, tol)}.items(), key=lambda t: t[1])
    if not scored:
        return None, math.inf
    best, err = list(scored[0][0]), scored[0][1]
    # the least-error candidate can sit in a poor basin, so every start is polished
    for cand, _ in scored:
        if err <= 64 * _EPS:
            break
        polished = [v * rho for v in _refine(p, [v / rho for v in cand])]
        e = backward_error(a, polished)
        if e < err:
            best, err = polished, e
    return best, err


def is_hyperbolic(a, gcd_tol: float = GCD_RTOL) -> HyperbolicityReport:
    """Count real roots with multiplicity via the gcd cascade and Sturm chains.

    When no threshold gives a complete count (tight clusters whose rounding left
    the real axis), a real root vector within BACKWARD_TOL still certifies the
    polynomial as numerically hyperbolic.
    """
    a = as_poly(a)
    if not all(math.isfinite(c) for c in a.coeffs):
        raise ValueError("coefficients must be finite")
    d = a.degree
    rho = _root_scale(a.coeffs)
    if rho == 0.0:
        return HyperbolicityReport(True, 1, 0, gcd_tol, 0.0)
    p = _rescaled(a.coeffs, rho)
    result, ok = _factor(p, d, gcd_tol)
    if ok:
        factors, counts, tol = result
        return HyperbolicityReport(True, sum(counts), 0, tol)
    roots, err = _best_roots(a, p, rho, gcd_tol, 1e-12)
    if result is None:
        distinct, defect, used = 0, d, float("nan")
    else:
        factors, counts, used = result
        distinct = sum(counts)
        defect = d - sum(k * n for (k, _), n in zip(factors, counts))
    if err <= BACKWARD_TOL:
        return HyperbolicityReport(True, len(set(roots)), 0, used, err)
    return HyperbolicityReport(False, distinct, defect, used, err)


def ordered_roots(a, tol: float = 1e-12, gcd_tol: float = GCD_RTOL) -> RootVector:
    """All d real roots of a hyperbolic P_a with multiplicity, increasingly sorted.

    The Sturm/gcd factorization at ``gcd_tol`` is tried first.  If its roots do
    not reproduce the coefficients to round-off, every other threshold and the
    interlacing solver are tried and the root vector of least backward error wins.
    """
    a = as_poly(a)
    if not all(math.isfinite(c) for c in a.coeffs):
        raise ValueError("coefficients must be finite")
    d = a.degree
    rho = _root_scale(a.coeffs)
    if rho == 0.0:
        return RootVector((0.0,) * d)
    p = _rescaled(a.coeffs, rho)
    scale = max(1.0, cauchy_bound(a)) ** d
    result, ok = _factor(p, d, gcd_tol)
    roots, err = None, math.inf
    if ok:
        try:
            roots = _roots_from(a, p, rho, result, tol)
            err = backward_error(a, roots)
        except ToleranceError:
            pass
    if err > 64 * _EPS:
        cand, cerr = _best_roots(a, p, rho, gcd_tol, tol)
        if cerr < err:
            roots, err = cand, cerr
    if roots is None or err > BACKWARD_TOL:
        rep = is_hyperbolic(a, gcd_tol)
        raise HyperbolicityError(
            f"P_a is not hyperbolic: {rep.distinct} distinct real roots, defect {rep.defect}, "
            f"backward error {err:.3g}"
        )
    bad = [r for r in roots if abs(evaluate(a, r)) > tol * scale]
    if bad:
        raise ToleranceError(f"residual |P({bad[0]})| = {abs(evaluate(a, bad[0]))} exceeds tolerance")
    return RootVector(tuple(roots))


_EPS = 2.220446049250313e-16


def _roots_from(a: PolyCoeffs, p: list[float], rho: float, result, tol: float) -> list[float]:
    factors, _, used = result
    d = a.degree
    roots: list[float] = []
    for k, f in factors:
        b = 1.0 + max(abs(c) for c in f[1:])
        target = _nth_deriv(p, k - 1)
        for lo, hi in _isolate(f, b, used):
            blo, bhi = _bisect(f, lo, hi, used)
            if (bhi - blo) * rho > tol * max(1.0, rho):
                raise ToleranceError(f"bisection stalled at width {(bhi - blo) * rho}")
            r = _polish(target, 0.5 * (blo + bhi), lo, hi)
            roots.extend([r * rho] * k)
    if len(roots) != d:
        raise ToleranceError(f"isolated {len(roots)} of {d} roots")
    roots.sort()
    return roots


# ---------------------------------------------------------------------------
# vectorized solver for sampled curves


def _interlace_roots(b: np.ndarray) -> np.ndarray:
    """Sorted real roots of rows of monic coefficients, all |b_j| <= 1 roughly."""
    m, d = b.shape
    if d == 1:
        return -b[:, :1].copy()
    bound = 1.0 + np.max(np.abs(b), axis=1)
    bp = b[:, :-1] * ((d - np.arange(1, d)) / d)
    mu = _interlace_roots(bp)
    lo = np.concatenate([-bound[:, None], mu], axis=1)
    hi = np.concatenate([mu, bound[:, None]], axis=1)

    def peval(z):
        v = np.ones_like(z)
        for j in range(d):
            v = v * z + b[:, j:j + 1]
        return v

    flo, fhi = peval(lo), peval(hi)
    change = np.sign(flo) * np.sign(fhi) < 0
    slo = np.sign(flo)
    a, c = lo.copy(), hi.copy()
    for _ in range(64):
        mid = 0.5 * (a + c)
        same = np.sign(peval(mid)) == slo
        a = np.where(change & same, mid, a)
        c = np.where(change & ~same, mid, c)
    r = 0.5 * (a + c)
    # monotone on each bracket: without a sign change the root is the
    # endpoint with the smaller |P|
    edge = np.where(np.abs(flo) <= np.abs(fhi), lo, hi)
    r = np.where(change, r, edge)
    return np.sort(r, axis=1)


def roots_batch(coeffs: np.ndarray, check: bool = True, tol: float = 1e-8,
                x: np.ndarray | None = None) -> np.ndarray:
    """Ordered roots of each row of an ``(M, d)`` coefficient array.

    With ``check`` the roots are pushed back through Vieta and compared to the
    input; a backward error above ``tol`` (relative, per coefficient) raises
    :class:`HyperbolicityError` naming the first offending node.
    """
    a = np.atleast_2d(np.asarray(coeffs, dtype=float))
    if not np.all(np.isfinite(a)):
        raise ValueError("coefficients must be finite")
    m, d = a.shape
    j = np.arange(1, d + 1)
    rho = np.max(np.abs(a) ** (1.0 / j), axis=1)
    safe = np.where(rho > 0, rho, 1.0)
    b = a.copy()
    for k in range(d):
        b[:, k:] /= safe[:, None]
    roots = _interlace_roots(b) * safe[:, None]
    roots[rho == 0] = 0.0
    if check:
        back = vieta_batch(roots / safe[:, None])
        allowed = tol * np.array([comb(d, k) * 2.0 ** k for k in j], dtype=float)
        bad = np.any(np.abs(back - b) > allowed, axis=1)
        if np.any(bad):
            i = int(np.argmax(bad))
            where = f" at x={x[i]:.17g}" if x is not None else ""
            raise HyperbolicityError(
                f"node {i}{where}: polynomial {a[i].tolist()} is not hyperbolic",
                node=i, x=None if x is None else float(x[i]),
            )
    return roots


def translate_batch(coeffs: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Row-wise :func:`translate`: coefficients of P_{a_i}(Z - c_i)."""
    a = np.atleast_2d(np.asarray(coeffs, dtype=float))
    m, d = a.shape
    p = np.concatenate([np.ones((m, 1)), a], axis=1)
    t = -np.broadcast_to(np.asarray(c, dtype=float), (m,))
    for i in range(d):
        for j in range(1, d - i + 1):
            p[:, j] = p[:, j] + t * p[:, j - 1]
    return p[:, 1:]
