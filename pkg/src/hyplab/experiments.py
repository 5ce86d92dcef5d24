"""Family specifications, convergence experiments and CSV output."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .curvelab import (
    IntervalNest,
    SampledCurve,
    bronshtein_bound,
    ck_norm,
    dlq_norm,
    fd_derivative,
    holder_seminorm,
    lipschitz,
    lq_norm,
    node_range,
    sup_norm,
    w1q_norm,
)
from .errors import HyperbolicityError, SpecError
from .exprdsl import EvalError, Expr, ParseError, eval_expr, parse
from .polycore import roots_batch, vieta_batch
from .rootgeom import SampledField, graph_area, zero_set_area
from .tschirnsplit import nuij_matrix, shift_signs_ok
from .tuplemetric import metric_speed

MODES = ("coefficients", "roots")
SCALAR_KEYS = ("degree", "interval", "inner", "outer", "grid", "ns", "qs", "gammas", "mode")


@dataclass(frozen=True)
class FamilySpec:
    degree: int
    coeffs: tuple[Expr | None, ...]
    limit: tuple[Expr | None, ...] | None
    interval: tuple[float, float]
    inner: tuple[float, float]
    outer: tuple[float, float]
    grid: int = 8192
    ns: tuple[float, ...] = (1.0,)
    qs: tuple[float, ...] = (1.0,)
    gammas: tuple[float, ...] = ()
    mode: str = "coefficients"
    source: str | None = field(default=None, compare=False)

    @property
    def nest(self) -> IntervalNest:
        return IntervalNest(self.inner, self.outer)

    def validate(self) -> "FamilySpec":
        d = self.degree
        err = lambda msg, f: SpecError(msg, field=f, path=self.source)
        if d < 1:
            raise err("degree must be at least 1", "degree")
        if self.mode not in MODES:
            raise err(f"mode must be one of {MODES}", "mode")
        lo, hi = self.interval
        (a0, b0), (a1, b1) = self.inner, self.outer
        if not lo < hi:
            raise err("interval must be nonempty", "interval")
        if not (a0 < b0 and a1 < b1):
            raise err("inner and outer must be nonempty", "inner")
        if not (a1 < a0 and b0 < b1):
            raise err(f"inner {self.inner} is not compactly inside outer {self.outer}", "inner")
        if a1 < lo or b1 > hi:
            raise err(f"outer {self.outer} is not inside interval {self.interval}", "outer")
        if self.grid < 2 * (d + 1):
            raise err(f"grid must be at least 2(d+1) = {2 * (d + 1)}", "grid")
        if not self.ns or any(not (n >= 1) for n in self.ns):
            raise err("every n must be at least 1", "ns")
        if any(not 1 <= q < math.inf for q in self.qs):
            raise err("every q must lie in [1, inf)", "qs")
        if any(not 0 < g <= 1 for g in self.gammas):
            raise err("every gamma must lie in (0, 1]", "gammas")
        if len(self.coeffs) != d or (self.limit is not None and len(self.limit) != d):
            raise err("coefficient list does not match the degree", "degree")
        return self


# -- loading --------------------------------------------------------------------


def _floats(text: str, key: str, line: int, path) -> tuple[float, ...]:
    out: list[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ".." in item:
                a, b = (int(s) for s in item.split(".."))
                out.extend(float(v) for v in range(a, b + 1))
            else:
                out.append(float(item))
        except ValueError:
            raise SpecError(f"bad value {item!r} for {key}", field=key, line=line, path=path) from None
    return tuple(out)


def _pair(text, key, line, path) -> tuple[float, float]:
    v = _floats(text, key, line, path)
    if len(v) != 2:
        raise SpecError(f"{key} needs two numbers lo,hi", field=key, line=line, path=path)
    return v[0], v[1]


def parse_spec(text: str, path: str | None = None) -> FamilySpec:
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError("expected 'key = value'", line=lineno, path=path)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("root.", "coeff.")
        if key in raw:
            raise SpecError(f"duplicate key {key!r}", field=key, line=lineno, path=path)
        raw[key] = (value, lineno)

    def get(key, conv, default=None):
        if key not in raw:
            if default is None:
                raise SpecError(f"missing key {key!r}", field=key, path=path)
            return default
        value, lineno = raw[key]
        return conv(value, key, lineno, path)

    def as_int(v, key, line, p):
        try:
            return int(v)
        except ValueError:
            raise SpecError(f"{key} must be an integer", field=key, line=line, path=p) from None

    d = get("degree", as_int)
    exprs: dict[str, dict[int, Expr]] = {"coeff": {}, "limit.coeff": {}}
    for key, (value, lineno) in raw.items():
        if key in SCALAR_KEYS:
            continue
        prefix, _, idx = key.rpartition(".")
        if prefix not in exprs or not idx.isdigit() or not 1 <= int(idx) <= d:
            raise SpecError(f"unknown key {key!r}", field=key, line=lineno, path=path)
        try:
            exprs[prefix][int(idx)] = parse(value)
        except ParseError as exc:
            raise SpecError(f"{key}: {exc}", field=key, line=lineno, path=path) from exc
    if not exprs["coeff"] and not exprs["limit.coeff"]:
        raise SpecError("no coeff.j expressions given", field="coeff", path=path)
    coeffs = tuple(exprs["coeff"].get(j) for j in range(1, d + 1))
    limit = tuple(exprs["limit.coeff"].get(j) for j in range(1, d + 1)) if exprs["limit.coeff"] else None
    interval = get("interval", _pair)
    mode = raw.get("mode", ("coefficients", 0))[0]
    spec = FamilySpec(
        degree=d,
        coeffs=coeffs,
        limit=limit,
        interval=interval,
        inner=get("inner", _pair),
        outer=get("outer", _pair, interval),
        grid=get("grid", as_int, 8192),
        ns=get("ns", _floats, (1.0,)),
        qs=get("qs", _floats, (1.0,)),
        gammas=get("gammas", _floats, ()),
        mode=mode,
        source=path,
    )
    return spec.validate()


def load_spec(path) -> FamilySpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc}", path=str(path)) from exc
    return parse_spec(text, str(path))


# -- sampling -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SampledFamily:
    coeffs: SampledCurve
    roots: SampledCurve


def _eval_column(e: Expr | None, x: np.ndarray, n: float) -> np.ndarray:
    if e is None:
        return np.zeros_like(x)
    return np.broadcast_to(eval_expr(e, x, n), x.shape).astype(float)


def sample_family(spec: FamilySpec, n: float, grid: int | None = None, limit: bool = False) -> SampledFamily:
    """Evaluate a_n (or the limit a when ``limit``) on the grid and order its roots."""
    exprs = spec.limit if limit else spec.coeffs
    if exprs is None or all(e is None for e in exprs):
        which = "limit.coeff" if limit else "coeff"
        raise SpecError(f"spec has no {which}.j expressions", field=which, path=spec.source)
    N = grid or spec.grid
    lo, hi = spec.interval
    x = np.linspace(lo, hi, N + 1)
    nv = math.inf if limit else float(n)
    try:
        cols = np.stack([_eval_column(e, x, nv) for e in exprs], axis=1)
    except EvalError as exc:
        raise SpecError(f"n={n}: {exc}", path=spec.source) from exc
    tag = "limit" if limit else f"n={_fmt(n)}"
    if spec.mode == "roots":
        lam = np.sort(cols, axis=1)
        a = vieta_batch(lam)
    else:
        a = cols
        try:
            lam = roots_batch(a, x=x)
        except HyperbolicityError as exc:
            raise HyperbolicityError(f"{tag}: {exc}", node=exc.node, x=exc.x) from exc
    return SampledFamily(SampledCurve(lo, hi, a, "coefficients"),
                         SampledCurve(lo, hi, lam, "roots"))


# -- results --------------------------------------------------------------------


@dataclass(frozen=True)
class Row:
    n: float
    metric: str
    param: float | None
    interval: str
    value: float

    def key(self):
        return (self.metric, self.n, -math.inf if self.param is None else self.param, self.interval)


@dataclass(frozen=True)
class ExperimentResult:
    rows: tuple[Row, ...]

    @classmethod
    def of(cls, rows: Iterable[Row]) -> "ExperimentResult":
        rows = tuple(sorted(rows, key=Row.key))
        bad = [r for r in rows if not math.isfinite(r.value)]
        if bad:
            raise ArithmeticError(f"non-finite value in row {bad[0]}")
        return cls(rows)

    def column(self, metric: str, param: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        sel = [r for r in self.rows if r.metric == metric and (param is None or r.param == param)]
        return np.array([r.n for r in sel]), np.array([r.value for r in sel])

    def metrics(self) -> list[str]:
        return sorted({r.metric for r in self.rows})


def _fmt(v: float) -> str:
    if float(v).is_integer() and abs(v) < 2 ** 53:
        return str(int(v))
    return format(v, ".17g")


def emit_csv(result: ExperimentResult, path=None) -> str:
    """Write the rows as CSV (17 significant digits, LF endings); returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "metric", "param", "interval", "value"])
    for r in result.rows:
        w.writerow([_fmt(r.n), r.metric, "" if r.param is None else format(r.param, ".17g"),
                    r.interval, format(r.value, ".17g")])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


# -- convergence -----------------------------------------------------------------


def _per_root(c: SampledCurve) -> list[tuple[str, SampledCurve]]:
    """The whole vector curve followed by each ordered root as a scalar curve."""
    if c.dim == 1:
        return [("", c.component(0))]
    return [("", c)] + [(f"[{j + 1}]", c.component(j)) for j in range(c.dim)]


def convergence_rows(spec: FamilySpec, n: float, grid: int | None = None, seed: int = 0,
                     limit_family: SampledFamily | None = None) -> list[Row]:
    lim = limit_family or sample_family(spec, n, grid, limit=True)
    fam = sample_family(spec, n, grid)
    I0 = spec.inner
    diff = fam.roots - lim.roots
    rows: list[Row] = []
    add = lambda metric, param, interval, value: rows.append(Row(float(n), metric, param, interval, float(value)))
    gammas = sorted(set(spec.gammas) | {1.0})
    for suffix, g in _per_root(diff):
        add("linf_diff" + suffix, None, "I0", sup_norm(g, I0))
        for q in spec.qs:
            lq, dlq = lq_norm(g, q, I0), dlq_norm(g, q, I0)
            add("lq_diff" + suffix, q, "I0", lq)
            add("dlq_diff" + suffix, q, "I0", dlq)
            add("w1q_diff" + suffix, q, "I0", lq + dlq)
        for gamma in gammas:
            add("holder_diff" + suffix, gamma, "I0", holder_seminorm(g, gamma, I0, seed=seed))
    for j in range(fam.roots.dim):
        add(f"root_lip[{j + 1}]", None, "I0", lipschitz(fam.roots.component(j), I0))
    qset = sorted(set(spec.qs))
    sp_n = metric_speed(fam.roots, I0, qset)
    sp = metric_speed(lim.roots, I0, qset)
    speed_gap = sp_n.speed.like(sp_n.speed.values - sp.speed.values)
    for q in qset:
        add("energy", q, "I0", sp_n.energy[q])
        add("energy_diff", q, "I0", abs(sp_n.energy[q] - sp.energy[q]))
        add("speed_lq_diff", q, "I0", lq_norm(speed_gap, q, I0))
    sl = node_range(fam.roots, I0)
    f_n = SampledField(((fam.roots.x[sl][0], fam.roots.x[sl][-1]),), fam.roots.values[sl])
    f_lim = SampledField(f_n.box, lim.roots.values[sl])
    for j in range(f_n.d):
        area = graph_area(f_n, j)
        add(f"graph_area[{j + 1}]", None, "I0", area)
        add(f"graph_area_diff[{j + 1}]", None, "I0", area - graph_area(f_lim, j))
    add("bronshtein", None, "I1", bronshtein_bound(fam.coeffs, spec.nest))
    return rows


def _convergence_task(args):
    spec, n, grid, seed = args
    return convergence_rows(spec, n, grid, seed)


def run_convergence(spec: FamilySpec, grid: int | None = None, seed: int = 0,
                    parallel: int = 1) -> ExperimentResult:
    """Difference norms of lambda(a_n) - lambda(a) on I0 for each n of the spec."""
    if spec.limit is None:
        raise SpecError("run needs limit.coeff.j expressions", field="limit.coeff", path=spec.source)
    if grid is not None:
        spec = replace(spec, grid=grid).validate()
    if parallel > 1 and len(spec.ns) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(_convergence_task, [(spec, n, None, seed) for n in spec.ns]))
    else:
        lim = sample_family(spec, 1.0, limit=True)
        chunks = [convergence_rows(spec, n, None, seed, lim) for n in spec.ns]
    return ExperimentResult.of(r for chunk in chunks for r in chunk)


# -- Nuij approximation --------------------------------------------------------------


def apply_nuij(a: SampledCurve, s: float) -> SampledCurve:
    """Nodewise (1 + s d/dZ)^{d-1} on a coefficient curve."""
    v = a.values
    d = v.shape[1]
    full = np.concatenate([np.ones((v.shape[0], 1)), v], axis=1)
    out = full @ nuij_matrix(d, s).T
    return a.like(out[:, 1:], "coefficients")


def nuij_rows(spec: FamilySpec, s: float, base: SampledFamily) -> list[Row]:
    I0 = spec.inner
    d = spec.degree
    a_s = apply_nuij(base.coeffs, s)
    x = a_s.x
    try:
        lam_s = a_s.like(roots_batch(a_s.values, x=x), "roots")
    except HyperbolicityError as exc:
        raise HyperbolicityError(f"s={s}: {exc}", node=exc.node, x=exc.x) from exc
    rows: list[Row] = []
    add = lambda metric, param, interval, value: rows.append(Row(float(s), metric, param, interval, float(value)))
    add("coeff_cd_diff", float(d), "I0", ck_norm(a_s - base.coeffs, d, I0))
    sl = node_range(lam_s, I0)
    v = lam_s.values[sl]
    gap = float(np.min(np.diff(v, axis=1))) if d > 1 else math.inf
    if d > 1:
        add("min_gap", None, "I0", gap)
        if s != 0:
            add("min_gap_ratio", None, "I0", gap / abs(s))
    shifts = base.roots.values[sl] - v
    add("max_shift", None, "I0", np.max(np.abs(shifts)))
    if s != 0:
        sign_ok = bool(np.all(shift_signs_ok(base.roots.values[sl], shifts, s)))
        add("shift_sign_ok", None, "I0", 1.0 if sign_ok else 0.0)
    add("root_d2_max", None, "I0", sup_norm(fd_derivative(lam_s, 2), I0))
    diff = lam_s - base.roots
    for q in spec.qs:
        add("w1q_diff", q, "I0", w1q_norm(diff, q, I0))
    box = ((x[sl][0], x[sl][-1]),)
    add("zero_set_area", None, "I0", zero_set_area(SampledField(box, v)))
    add("zero_set_area_limit", None, "I0", zero_set_area(SampledField(box, base.roots.values[sl])))
    return rows


def run_nuij(spec: FamilySpec, s_list: Sequence[float], grid: int | None = None) -> ExperimentResult:
    """Apply the Nuij operator to the limit family for each s and check its properties."""
    if grid is not None:
        spec = replace(spec, grid=grid).validate()
    base = sample_family(spec, math.inf, limit=spec.limit is not None)
    return ExperimentResult.of(r for s in s_list for r in nuij_rows(spec, float(s), base))


__all__ = [
    "FamilySpec", "SampledFamily", "Row", "ExperimentResult", "parse_spec", "load_spec",
    "sample_family", "emit_csv", "convergence_rows", "run_convergence", "apply_nuij",
    "nuij_rows", "run_nuij",
]
