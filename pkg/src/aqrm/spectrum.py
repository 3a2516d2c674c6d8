"""Eigenvalue assembly: quasi-exact (Juddian) points from exact polynomial
roots, non-polynomial exceptional points from T-function zero scans, the
regular spectrum from zeros of the regularized G-function, classification with
multiplicities, positive-root counting, and coupling sweeps that produce
spectral-curve tables."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .poly import constraint_poly
from .roots import count_real_roots, isolate_real_roots, refine_root
from .series import (
    DEFAULT_CONFIG,
    ModelParams,
    SeriesConfig,
    log_term_coefficient,
    regularized_g,
    t_function,
)

KIND_REGULAR = "regular"
KIND_JUDDIAN = "juddian"
KIND_NON_JUDDIAN = "non-juddian-exceptional"

_RATIONAL_EPS_CAP = 10 ** 4      # largest denominator recognized as exact bias
_HALF_INT_TOL = 1e-9


@dataclass
class EigenvalueRecord:
    x: float                     # lambda + g^2
    lam: float
    kind: str
    multiplicity: int = 1
    level_N: int | None = None
    branch: str | None = None    # "plus_eps" or "minus_eps" for exceptional kinds


@dataclass(frozen=True)
class SweepConfig:
    g_grid: tuple[float, ...]
    x_max: float = 6.0
    scan_step: float = 1e-2
    refine_tol: float = 1e-10

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.g_grid, self.g_grid[1:])):
            raise ValueError("g_grid must be strictly increasing")


def exact_bias(eps: float) -> Fraction | None:
    """The bias as an exact rational when it is one (all closed-form Juddian
    machinery needs this); None for irrational-looking values."""
    if isinstance(eps, Fraction):
        return eps
    cand = Fraction(eps).limit_denominator(_RATIONAL_EPS_CAP)
    return cand if abs(float(cand) - eps) < 1e-12 else None


def is_half_integer(eps: float) -> bool:
    return abs(2.0 * eps - round(2.0 * eps)) < _HALF_INT_TOL


# ---------------------------------------------------------------------------
# Juddian (quasi-exact) points
# ---------------------------------------------------------------------------

def juddian_roots(N: int, eps, delta,
                  tol: Fraction = Fraction(1, 2 ** 48)) -> list[tuple[float, int]]:
    """All couplings g > 0 with P_N^(N,eps)((2g)^2, delta^2) = 0, by exact
    root isolation in x = (2g)^2; multiplicity 2 exactly when 2 eps is an
    integer (degenerate crossing), else 1."""
    if N == 0:
        return []
    eps = Fraction(eps)
    y = Fraction(delta) ** 2
    p = constraint_poly(N, eps, N).subs_y(y)
    mult = 2 if (2 * eps).denominator == 1 else 1
    out = []
    for iv in isolate_real_roots(p):
        if iv.hi <= 0:
            continue
        r = refine_root(p, iv, tol)
        if r > 0:
            out.append((math.sqrt(float(r)) / 2.0, mult))
    out.sort()
    return out


def count_positive_roots(N: int, eps, y) -> int:
    """Exact number of distinct positive roots in x of P_N^(N,eps)(x, y)."""
    p = constraint_poly(N, Fraction(eps), N).subs_y(Fraction(y))
    return count_real_roots(p, lo=Fraction(0), hi=None)


# ---------------------------------------------------------------------------
# non-Juddian exceptional points: zeros of the T-function over g
# ---------------------------------------------------------------------------

def non_juddian_roots(N: int, delta: float, eps: float, sign: str,
                      g_lo: float, g_hi: float, scan_step: float = 0.01,
                      refine_tol: float = 1e-10,
                      cfg: SeriesConfig = DEFAULT_CONFIG) -> list[float]:
    """Zeros of the T-function in (g_lo, g_hi) by sign-change scan plus
    bisection; these admit the exceptional eigenvalue N +/- eps - g^2 with a
    non-polynomial eigensolution, and never coincide with Juddian couplings."""
    def tval(g):
        return t_function(N, ModelParams(g, delta, eps), sign, cfg)

    out = []
    g_prev = g_lo
    f_prev = tval(g_prev)
    steps = max(2, int(round((g_hi - g_lo) / scan_step)))
    for i in range(1, steps + 1):
        g_cur = g_lo + (g_hi - g_lo) * i / steps
        f_cur = tval(g_cur)
        if f_prev == 0.0:
            out.append(g_prev)
        elif f_prev * f_cur < 0.0:
            a, b, fa = g_prev, g_cur, f_prev
            while b - a > refine_tol:
                mid = 0.5 * (a + b)
                fm = tval(mid)
                if fm == 0.0:
                    a = b = mid
                    break
                if (fm > 0.0) == (fa > 0.0):
                    a, fa = mid, fm
                else:
                    b = mid
            out.append(0.5 * (a + b))
        g_prev, f_prev = g_cur, f_cur
    return out


# ---------------------------------------------------------------------------
# spectrum from zeros of the regularized G-function
# ---------------------------------------------------------------------------

_DIP_SUBDIV = 16
_DIP_DEPTH = 4


def _scan_zeros(params: ModelParams, lo: float, hi: float, step: float,
                tol: float, cfg: SeriesConfig) -> list[float]:
    """Zeros of the regularized G-function on [lo, hi] by sign-change
    bracketing, with recursive local refinement wherever |f| dips without a
    sign change: strong-coupling quasi-doublets sit closer than any fixed
    grid, and a dip is the footprint of such an even pair."""
    def f(x):
        return regularized_g(x, params, cfg)

    zeros: list[float] = []

    def bisect(a, b, fa):
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = f(mid)
            if fm == 0.0:
                return mid
            if (fm > 0.0) == (fa > 0.0):
                a, fa = mid, fm
            else:
                b = mid
        return 0.5 * (a + b)

    def scan(a, b, steps, depth):
        xs = [a + (b - a) * i / steps for i in range(steps + 1)]
        vs = [f(x) for x in xs]
        for i in range(steps):
            if vs[i] == 0.0:
                zeros.append(xs[i])
            elif vs[i] * vs[i + 1] < 0.0:
                zeros.append(bisect(xs[i], xs[i + 1], vs[i]))
        if vs[-1] == 0.0:
            zeros.append(xs[-1])
        if depth == 0:
            return
        last = -2
        for i in range(1, steps):
            same_sign = vs[i] != 0.0 and vs[i - 1] * vs[i] > 0.0 and vs[i] * vs[i + 1] > 0.0
            if same_sign and abs(vs[i]) < abs(vs[i - 1]) and abs(vs[i]) < abs(vs[i + 1]):
                if i == last + 1:
                    continue    # overlapping dip window already refined
                scan(xs[i - 1], xs[i + 1], _DIP_SUBDIV, depth - 1)
                last = i

    scan(lo, hi, max(2, int(math.ceil((hi - lo) / step))), _DIP_DEPTH)
    zeros.sort()
    out = []
    for z in zeros:
        if not out or z - out[-1] > max(4.0 * tol, 1e-12):
            out.append(z)
    return out


def _t_zero_here(N: int, params: ModelParams, sign: str,
                 cfg: SeriesConfig, rel_tol: float = 1e-6) -> bool:
    """Does the T-function vanish at this coupling, up to slope normalization?"""
    t0 = t_function(N, params, sign, cfg)
    h = min(1e-4 * max(1.0, params.g), params.g / 2)
    tp = t_function(N, ModelParams(params.g + h, params.delta, params.eps), sign, cfg)
    tm = t_function(N, ModelParams(params.g - h, params.delta, params.eps), sign, cfg)
    slope = (tp - tm) / (2.0 * h)
    scale = abs(slope) * max(1.0, params.g) + 1e-12
    return abs(t0) <= rel_tol * scale


def _juddian_here(N: int, params: ModelParams, branch_eps: float,
                  rel_tol: float = 1e-7) -> bool:
    """Is this coupling a root of the level-N constraint polynomial? Exact
    when the bias is rational, slope-normalized numeric fallback otherwise."""
    frac = exact_bias(branch_eps)
    if frac is not None:
        for gj, _ in juddian_roots(N, frac, Fraction(params.delta), Fraction(1, 2 ** 52)):
            if abs(gj - params.g) <= rel_tol * max(1.0, params.g):
                return True
        return False
    warnings.warn("irrational bias: quasi-exact detection falls back to "
                  "float root proximity and may be ill-conditioned",
                  RuntimeWarning, stacklevel=2)
    local = ModelParams(params.g, params.delta, branch_eps)
    v0 = log_term_coefficient(N, local)
    h = min(1e-4 * max(1.0, params.g), params.g / 2)
    vp = log_term_coefficient(N, ModelParams(params.g + h, params.delta, branch_eps))
    vm = log_term_coefficient(N, ModelParams(params.g - h, params.delta, branch_eps))
    slope = (vp - vm) / (2.0 * h)
    return abs(v0) <= rel_tol * (abs(slope) * max(1.0, params.g) + 1e-12)


def exceptional_records(params: ModelParams, x_lo: float, x_max: float,
                        cfg: SeriesConfig = DEFAULT_CONFIG) -> list[EigenvalueRecord]:
    """Exceptional eigenvalues x = N +/- eps in [x_lo, x_max]: Juddian points
    (multiplicity 2 at half-integer bias) and non-Juddian T-function zeros."""
    eps = params.eps
    half = is_half_integer(eps)
    g2 = params.g ** 2
    out = []
    seen: set[int] = set()
    for branch, sign, e in (("plus_eps", "plus", eps), ("minus_eps", "minus", -eps)):
        n = 0
        while n + e <= x_max + 1e-12:
            x0 = n + e
            key = round(x0 * 2 ** 30)
            if x0 >= x_lo and key not in seen:
                jud = _juddian_here(n, params, e)
                njud = False if jud else _t_zero_here(n, params, sign, cfg)
                if jud or njud:
                    seen.add(key)
                    mult = 2 if (jud and half) else 1
                    out.append(EigenvalueRecord(
                        x=x0, lam=x0 - g2,
                        kind=KIND_JUDDIAN if jud else KIND_NON_JUDDIAN,
                        multiplicity=mult, level_N=n, branch=branch))
            n += 1
    out.sort(key=lambda r: r.x)
    return out


def regular_spectrum(params: ModelParams, x_range: tuple[float, float],
                     scan_step: float = 1e-2, refine_tol: float = 1e-10,
                     cfg: SeriesConfig = DEFAULT_CONFIG) -> list[EigenvalueRecord]:
    """Regular eigenvalues in the window: zeros of the regularized G-function
    that do not sit on an exceptional point x = n +/- eps."""
    lo, hi = x_range
    zeros = _scan_zeros(params, lo, hi, scan_step, refine_tol, cfg)
    g2 = params.g ** 2
    window = 10.0 * scan_step
    out = []
    for x in zeros:
        near = None
        for e in (params.eps, -params.eps):
            n = round(x - e)
            if n >= 0 and abs(x - (n + e)) <= window:
                near = (n, e)
                break
        if near is not None and abs(x - (near[0] + near[1])) <= 1e3 * refine_tol * max(1.0, abs(x)):
            continue    # the zero is the exceptional point itself
        out.append(EigenvalueRecord(x=x, lam=x - g2, kind=KIND_REGULAR))
    return out


def full_spectrum(params: ModelParams, x_max: float,
                  scan_step: float = 1e-2, refine_tol: float = 1e-10,
                  cfg: SeriesConfig = DEFAULT_CONFIG,
                  x_lo: float | None = None) -> list[EigenvalueRecord]:
    """Merged, sorted eigenvalue records up to x = x_max: regular zeros plus
    classified exceptional points. Degenerate points appear once with
    multiplicity 2; they occur only for half-integer bias and are Juddian.

    Regular zeros are found by sign-change bracketing, so a pair of regular
    eigenvalues closer than scan_step (a tight avoided crossing) needs a
    correspondingly smaller scan_step to be resolved."""
    if x_lo is None:
        x_lo = -(params.delta + abs(params.eps) + 1.5)
    exc = exceptional_records(params, x_lo, x_max, cfg)
    reg = regular_spectrum(params, (x_lo, x_max), scan_step, refine_tol, cfg)
    # drop regular zeros that bisection landed on top of an exceptional record
    out = list(exc)
    for r in reg:
        if all(abs(r.x - e.x) > 1e3 * refine_tol * max(1.0, abs(r.x)) for e in exc):
            out.append(r)
    out.sort(key=lambda r: r.x)
    return out


def expand_multiplicities(records: list[EigenvalueRecord]) -> list[float]:
    """Sorted eigenvalue list with each record repeated per its multiplicity."""
    out = []
    for r in records:
        out.extend([r.lam] * r.multiplicity)
    return sorted(out)


# ---------------------------------------------------------------------------
# coupling sweeps
# ---------------------------------------------------------------------------

def spectral_sweep(delta: float, eps: float, sweep: SweepConfig,
                   n_levels: int, cfg: SeriesConfig = DEFAULT_CONFIG) -> list[dict]:
    """Rows (g, index, lambda, x, kind, multiplicity, level_N, branch) for the
    lowest n_levels eigenvalues at every grid coupling; grid points are
    independent and assembled in deterministic grid order."""
    rows = []
    for g in sweep.g_grid:
        params = ModelParams(g, delta, eps)
        x_hi = g * g + max(sweep.x_max, n_levels + 2.0)
        recs = full_spectrum(params, x_hi, sweep.scan_step, sweep.refine_tol, cfg)
        flat: list[EigenvalueRecord] = []
        for r in recs:
            flat.extend([r] * r.multiplicity)
        flat.sort(key=lambda r: r.lam)
        for i, r in enumerate(flat[:n_levels]):
            rows.append({"g": g, "index": i, "lambda": r.lam, "x": r.x,
                         "kind": r.kind, "multiplicity": r.multiplicity,
                         "level_N": r.level_N, "branch": r.branch})
    return rows


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

CSV_HEADER = "g,index,lambda,x,kind,multiplicity,level_N,branch"


def fmt_float(v: float) -> str:
    return format(float(v), ".17g")


def records_to_rows(records: list[EigenvalueRecord], g: float) -> list[dict]:
    return [{"g": g, "index": i, "lambda": r.lam, "x": r.x, "kind": r.kind,
             "multiplicity": r.multiplicity, "level_N": r.level_N,
             "branch": r.branch}
            for i, r in enumerate(records)]


def rows_to_csv(rows: list[dict]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            fmt_float(r["g"]), str(r["index"]), fmt_float(r["lambda"]),
            fmt_float(r["x"]), r["kind"], str(r["multiplicity"]),
            "" if r["level_N"] is None else str(r["level_N"]),
            "" if r["branch"] is None else r["branch"],
        ]))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"
