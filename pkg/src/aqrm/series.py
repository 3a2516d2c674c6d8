"""Series-defined analytic machinery: the K-coefficient recurrences behind the
G-function, Frobenius solutions at the model's regular singular points, the
constraint T-functions for exceptional eigenvalues, pole expansions of the
G-function (residues, double-pole coefficients, regularized sums), and the
gamma-regularized function whose zeros give the complete spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from .poly import a_value, constraint_value

Sign = Literal["plus", "minus"]

POLE_GUARD = 1e-8          # reject direct series evaluation closer than this to a pole
REMOVABLE_WINDOW = 1e-3    # widest switch to the local expansion (shrunk near close poles)
_HALF_INT_TOL = 1e-9


class PoleEncountered(ArithmeticError):
    """A series coefficient hit a pole of its recurrence at index n."""

    def __init__(self, n: int, where: float):
        super().__init__(f"recurrence pole at n={n} (x - n +/- eps = {where:.3e})")
        self.n = n


class NonConvergent(ArithmeticError):
    """Tail criterion not met within the configured number of terms."""


class WrongPoleOrder(ValueError):
    """A simple-pole formula was requested in the double-pole regime or vice versa."""


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters: coupling g > 0, level splitting delta > 0, bias eps."""

    g: float
    delta: float
    eps: float = 0.0

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError("g must be positive")
        if not self.delta > 0:
            raise ValueError("delta must be positive")


@dataclass(frozen=True)
class SeriesConfig:
    tol: float = 1e-14
    max_terms: int = 2000
    consecutive_small: int = 8

    def __post_init__(self):
        if self.max_terms < 32:
            raise ValueError("max_terms must be at least 32")


DEFAULT_CONFIG = SeriesConfig()


@dataclass
class SeriesState:
    coeffs: list[float]
    sum_R: float
    sum_Rbar: float
    truncation_order: int
    converged: bool


@dataclass
class FrobeniusSolution:
    kind: str
    N: int
    coeffs: list[float]
    value_at_half: float


def _C(n: int) -> float:
    """1 / (n! (n+1)!)."""
    return 1.0 / (math.factorial(n) * math.factorial(n + 1))


# ---------------------------------------------------------------------------
# reciprocal gamma: Lanczos scalar path
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = (0.99999999999980993, 676.5203681218851, -1259.1392167224028,
            771.32342877765313, -176.61502916214059, 12.507343278686905,
            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7)


def _gamma_lanczos(z: float) -> float:
    """Gamma(z) for z >= 0.5."""
    w = z - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * math.exp(-t) * acc


def reciprocal_gamma(z: float) -> float:
    """1/Gamma(z); exactly 0 at nonpositive integers, by branch."""
    if z == math.floor(z) and z <= 0.0:
        return 0.0
    if z >= 0.5:
        return 1.0 / _gamma_lanczos(z)
    # reflection: 1/Gamma(z) = Gamma(1-z) sin(pi z) / pi, with the sine
    # evaluated through its nearest-integer reduction for accuracy
    n = round(z)
    s = math.sin(math.pi * (z - n)) * (1.0 if n % 2 == 0 else -1.0)
    return _gamma_lanczos(1.0 - z) * s / math.pi


# ---------------------------------------------------------------------------
# Taylor jets (finite truncation order) and a jet-valued reciprocal gamma
# ---------------------------------------------------------------------------

_JET_ORDER = 5  # Taylor orders 0..5 carried through the gamma factors


def _tmul(a: list[float], b: list[float]) -> list[float]:
    n = len(a)
    out = [0.0] * n
    for i, x in enumerate(a):
        if x == 0.0:
            continue
        for j in range(n - i):
            out[i + j] += x * b[j]
    return out


def _zeta(k: int, M: int = 128) -> float:
    """zeta(k) for integer k >= 2 by Euler-Maclaurin."""
    s = sum(n ** (-float(k)) for n in range(1, M))
    m = float(M)
    s += m ** (1.0 - k) / (k - 1.0) + 0.5 * m ** (-float(k))
    s += k / 12.0 * m ** (-k - 1.0)
    s -= k * (k + 1) * (k + 2) / 720.0 * m ** (-k - 3.0)
    s += k * (k + 1) * (k + 2) * (k + 3) * (k + 4) / 30240.0 * m ** (-k - 5.0)
    return s


_EULER_GAMMA = 0.5772156649015328606


def _recip_gamma_series(n_terms: int = 64) -> list[float]:
    """Taylor coefficients of 1/Gamma(1+t) at t = 0 via exponentiating the
    classical log series (radius 1; used only with |t| <= 1/2)."""
    s = [0.0] * n_terms
    s[1] = _EULER_GAMMA
    for k in range(2, n_terms):
        s[k] = (-1.0) ** (k + 1) * _zeta(k) / k
    e = [0.0] * n_terms
    e[0] = 1.0
    for n in range(1, n_terms):
        e[n] = sum(k * s[k] * e[n - k] for k in range(1, n + 1)) / n
    return e


_RG_SERIES = _recip_gamma_series()


def recip_gamma_taylor(z0: float, slope: float = 1.0,
                       order: int = _JET_ORDER) -> list[float]:
    """Taylor coefficients in u of 1/Gamma(z0 + slope*u), orders 0..order.

    The argument is shifted by the functional equation to 1 + t with
    |t| <= 1/2; zeros at nonpositive integers come out exact because they
    arise from multiplication by a linear factor with exact zero constant.
    """
    n = order + 1
    m = math.floor(z0 + 0.5) - 1          # z0 - m lies in [0.5, 1.5)
    t0 = (z0 - m) - 1.0
    tjet = [t0, slope] + [0.0] * (n - 2)
    base = [0.0] * n
    for c in reversed(_RG_SERIES):
        base = _tmul(base, tjet)
        base[0] += c
    if m >= 1:
        # 1/Gamma(z) = (1/Gamma(z-m)) / prod_{j=1..m} (z-j)
        denom = [1.0] + [0.0] * (n - 1)
        for j in range(1, m + 1):
            denom = _tmul(denom, [z0 - j, slope] + [0.0] * (n - 2))
        inv = [0.0] * n
        inv[0] = 1.0 / denom[0]
        for k in range(1, n):
            inv[k] = -sum(denom[i] * inv[k - i] for i in range(1, k + 1)) / denom[0]
        base = _tmul(base, inv)
    elif m <= -1:
        # 1/Gamma(z) = prod_{j=0..-m-1} (z+j) * (1/Gamma(z - m))
        for j in range(0, -m):
            base = _tmul(base, [z0 + j, slope] + [0.0] * (n - 2))
    return base


# ---------------------------------------------------------------------------
# Laurent jets: truncated expansions sum c_k u^k for k in [-2, _JET_ORDER-2]
# ---------------------------------------------------------------------------

_L_LO = -2
_L_LEN = _JET_ORDER + 3    # orders -2 .. _JET_ORDER


class _LJet:
    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = [0.0] * _L_LEN if c is None else c

    @staticmethod
    def const(v: float) -> "_LJet":
        j = _LJet()
        j.c[-_L_LO] = v
        return j

    @staticmethod
    def pole(v: float) -> "_LJet":
        """v / u."""
        j = _LJet()
        j.c[-_L_LO - 1] = v
        return j

    @staticmethod
    def inv_linear(d: float) -> "_LJet":
        """1 / (d + u) for d != 0."""
        j = _LJet()
        acc = 1.0 / d
        for k in range(_L_LEN + _L_LO):
            j.c[k - _L_LO] = acc
            acc *= -1.0 / d
        return j

    def order(self, k: int) -> float:
        i = k - _L_LO
        return self.c[i] if 0 <= i < _L_LEN else 0.0

    def add(self, other: "_LJet") -> "_LJet":
        return _LJet([a + b for a, b in zip(self.c, other.c)])

    def sub(self, other: "_LJet") -> "_LJet":
        return _LJet([a - b for a, b in zip(self.c, other.c)])

    def scale(self, v: float) -> "_LJet":
        return _LJet([a * v for a in self.c])

    def mul(self, other: "_LJet") -> "_LJet":
        out = [0.0] * _L_LEN
        for i, a in enumerate(self.c):
            if a == 0.0:
                continue
            for j, b in enumerate(other.c):
                if b == 0.0:
                    continue
                k = i + j + _L_LO   # order (i+_L_LO) + (j+_L_LO) stored at i+j+_L_LO
                if 0 <= k < _L_LEN:
                    out[k] += a * b
        return _LJet(out)

    def maxabs(self) -> float:
        return max(abs(v) for v in self.c)


# ---------------------------------------------------------------------------
# K-coefficient series of the G-function
# ---------------------------------------------------------------------------

def _f_coeff(n: int, x: float, p: ModelParams, s: float) -> float:
    """f_n = 2g + (n - x + s + Delta^2/(x - n + s)) / (2g) with s = +eps or -eps."""
    d = x - n + s
    return 2.0 * p.g + (n - x + s + p.delta * p.delta / d) / (2.0 * p.g)


def k_sequence(x: float, params: ModelParams, sign: Sign, n_max: int) -> list[float]:
    """Raw coefficients K_0..K_{n_max} of the chosen branch; raises
    PoleEncountered if the recurrence passes through a pole."""
    s = params.eps if sign == "plus" else -params.eps
    out = [1.0]
    prev2 = 0.0
    for n in range(1, n_max + 1):
        d = x - (n - 1) + s
        if abs(d) < POLE_GUARD:
            raise PoleEncountered(n - 1, d)
        cur = (_f_coeff(n - 1, x, params, s) * out[-1] - prev2) / n
        prev2 = out[-1]
        out.append(cur)
    return out


def k_coefficients(x: float, params: ModelParams, sign: Sign,
                   cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesState:
    """Coefficients K_n and the partial sums R = sum K_n g^n and
    Rbar = sum K_n g^n / (x - n +/- eps), adaptively truncated."""
    s = params.eps if sign == "plus" else -params.eps
    g = params.g
    coeffs = [1.0]
    d0 = x + s
    if abs(d0) < POLE_GUARD:
        raise PoleEncountered(0, d0)
    R = 1.0
    Rbar = 1.0 / d0
    prev2 = 0.0
    gn = 1.0
    streak = 0
    for n in range(1, cfg.max_terms + 1):
        d = x - n + s
        if abs(d) < POLE_GUARD:
            raise PoleEncountered(n, d)
        cur = (_f_coeff(n - 1, x, params, s) * coeffs[-1] - prev2) / n
        prev2 = coeffs[-1]
        coeffs.append(cur)
        gn *= g
        tR = cur * gn
        tRbar = tR / d
        R += tR
        Rbar += tRbar
        if abs(tR) <= cfg.tol * (1.0 + abs(R)) and abs(tRbar) <= cfg.tol * (1.0 + abs(Rbar)):
            streak += 1
            if streak >= cfg.consecutive_small:
                return SeriesState(coeffs, R, Rbar, n, True)
        else:
            streak = 0
    return SeriesState(coeffs, R, Rbar, cfg.max_terms, False)


def g_function(x: float, params: ModelParams,
               cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """G(x) = Delta^2 Rbar+ Rbar- - R+ R-; zeros give regular eigenvalues
    lambda = x - g^2."""
    sp = k_coefficients(x, params, "plus", cfg)
    sm = k_coefficients(x, params, "minus", cfg)
    if not (sp.converged and sm.converged):
        raise NonConvergent(f"G-function series not converged at x={x}")
    return params.delta ** 2 * sp.sum_Rbar * sm.sum_Rbar - sp.sum_R * sm.sum_R


def log_term_coefficient(N: int, params: ModelParams) -> float:
    """The obstruction multiplying the logarithmic branch of the smaller-exponent
    local solution at level N; it equals P_N((2g)^2, Delta^2) / (N!)^2 and its
    vanishing is the quasi-exact (Juddian) condition."""
    g2, d2 = 4.0 * params.g * params.g, params.delta * params.delta
    k0, k1 = 0.0, 1.0
    for n in range(1, N + 1):
        k2 = ((g2 + d2 / (N - n + 1) + n - 1 - N - 2.0 * params.eps) * k1 - g2 * k0) / n
        k0, k1 = k1, k2
    return k1


# ---------------------------------------------------------------------------
# Frobenius solutions and constraint T-functions
# ---------------------------------------------------------------------------

def _phi1_tail(N: int, params: ModelParams, eps: float,
               cfg: SeriesConfig) -> tuple[dict[int, float], int]:
    """Largest-exponent coefficients at the near singular point: zero through
    index N, equal to 1 at N+1, then the three-term recurrence."""
    g2 = 4.0 * params.g * params.g
    d2 = params.delta * params.delta
    kb = {N: 0.0, N + 1: 1.0}
    n = N + 1
    half_n = 0.5 ** (N + 1)
    ssum = half_n
    streak = 0
    while n - N < cfg.max_terms:
        kb[n + 1] = ((n - N + g2 - 2.0 * eps + d2 / (N - n)) * kb[n]
                     - g2 * kb.get(n - 1, 0.0)) / (n + 1)
        n += 1
        half_n *= 0.5
        term = kb[n] * half_n
        ssum += term
        if abs(term) <= cfg.tol * (1.0 + abs(ssum)):
            streak += 1
            if streak >= cfg.consecutive_small:
                return kb, n
        else:
            streak = 0
    raise NonConvergent(f"phi1 series not converged (N={N}, eps={eps})")


def _phi2_tail(N: int, params: ModelParams, eps: float,
               cfg: SeriesConfig) -> tuple[dict[int, float], int, int | None]:
    """Coefficients of the far-point Frobenius solution; when N + 2 eps is a
    nonnegative integer L the initial conditions shift to start at L+1."""
    g2 = 4.0 * params.g * params.g
    d2 = params.delta * params.delta
    ne = N + 2.0 * eps
    L = round(ne)
    shifted = abs(ne - L) < _HALF_INT_TOL and L >= 0
    if shifted:
        kb = {L: 0.0, L + 1: 1.0}
        start = L + 1
    else:
        kb = {-1: 0.0, 0: 1.0}
        start = 0
        L = None
    n = start
    half_n = 0.5 ** start
    ssum = half_n
    streak = 0
    while n - start < cfg.max_terms:
        kb[n + 1] = ((n - N + g2 + d2 / (ne - n)) * kb[n] - g2 * kb[n - 1]) / (n + 1)
        n += 1
        half_n *= 0.5
        term = kb[n] * half_n
        ssum += term
        if abs(term) <= cfg.tol * (1.0 + abs(ssum)):
            streak += 1
            if streak >= cfg.consecutive_small:
                return kb, n, L
        else:
            streak = 0
    raise NonConvergent(f"phi2 series not converged (N={N}, eps={eps})")


def _pieces_minus(N: int, params: ModelParams, eps: float, cfg: SeriesConfig):
    """(R^(N,-), Rbar^(N,-)) = (phi_{1,-}, phi_{1,+}) evaluated at 1/2."""
    kb, n_max = _phi1_tail(N, params, eps, cfg)
    R = 0.0
    Rbar = (N + 1) / params.delta * 0.5 ** N
    for n in range(N + 1, n_max + 1):
        t = kb[n] * 0.5 ** n
        R += t
        Rbar -= params.delta * t / (n - N)
    return R, Rbar, kb, n_max


def _pieces_plus(N: int, params: ModelParams, eps: float, cfg: SeriesConfig):
    """(R^(N,+), Rbar^(N,+)) = (phi_{2,-}, phi_{2,+}) evaluated at 1/2."""
    kb, n_max, L = _phi2_tail(N, params, eps, cfg)
    ne = N + 2.0 * eps
    R = 0.0
    if L is None:
        Rbar = 0.0
        for n in range(0, n_max + 1):
            t = kb[n] * 0.5 ** n
            R += t
            Rbar += params.delta * t / (ne - n)
    else:
        Rbar = (L + 1) / params.delta * 0.5 ** L
        for n in range(L + 1, n_max + 1):
            t = kb[n] * 0.5 ** n
            R += t
            Rbar -= params.delta * t / (n - L)
    return R, Rbar, kb, n_max, L


def frobenius_solution(kind: str, N: int, params: ModelParams,
                       cfg: SeriesConfig = DEFAULT_CONFIG) -> FrobeniusSolution:
    """One of the four local Frobenius solutions, as its series coefficients
    and its value at the matching point 1/2."""
    eps = params.eps
    if kind in ("phi1_minus", "phi1_plus"):
        kb, n_max = _phi1_tail(N, params, eps, cfg)
        coeffs = [0.0] * (n_max + 1)
        if kind == "phi1_minus":
            for n in range(N + 1, n_max + 1):
                coeffs[n] = kb[n]
        else:
            coeffs[N] = (N + 1) / params.delta
            for n in range(N + 1, n_max + 1):
                coeffs[n] = -params.delta * kb[n] / (n - N)
    elif kind in ("phi2_minus", "phi2_plus"):
        kb, n_max, L = _phi2_tail(N, params, eps, cfg)
        ne = N + 2.0 * eps
        coeffs = [0.0] * (n_max + 1)
        if L is None:
            for n in range(0, n_max + 1):
                coeffs[n] = kb[n] if kind == "phi2_minus" else params.delta * kb[n] / (ne - n)
        else:
            if kind == "phi2_minus":
                for n in range(L + 1, n_max + 1):
                    coeffs[n] = kb[n]
            else:
                coeffs[L] = (L + 1) / params.delta
                for n in range(L + 1, n_max + 1):
                    coeffs[n] = -params.delta * kb[n] / (n - L)
    else:
        raise ValueError(f"unknown Frobenius solution kind {kind!r}")
    value = sum(c * 0.5 ** n for n, c in enumerate(coeffs) if c)
    return FrobeniusSolution(kind, N, coeffs, value)


def t_function(N: int, params: ModelParams, sign: Sign = "plus",
               cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Constraint function whose zeros in (g, Delta) admit the exceptional
    eigenvalue lambda = N + eps - g^2 (sign="plus") or N - eps - g^2
    (sign="minus") with a non-polynomial eigensolution."""
    eps = params.eps if sign == "plus" else -params.eps
    Rm, Rbm, _, _ = _pieces_minus(N, params, eps, cfg)
    Rp, Rbp, _, _, _ = _pieces_plus(N, params, eps, cfg)
    return Rbp * Rbm - Rp * Rm


# ---------------------------------------------------------------------------
# Laurent expansion of the G-function at a candidate pole
# ---------------------------------------------------------------------------

@lru_cache(maxsize=512)
def _branch_jets(x0: float, params: ModelParams, sign: Sign,
                 cfg: SeriesConfig) -> tuple[_LJet, _LJet]:
    """Laurent jets at x = x0 of R and Rbar for one branch; the recurrence is
    propagated with the full local expansion, so residues and finite parts
    come out exact to working precision. Cached: bisection near a pole keeps
    asking for the same expansion center, and jets are only ever read."""
    s = params.eps if sign == "plus" else -params.eps
    g = params.g
    d2 = params.delta * params.delta
    two_g = 2.0 * params.g

    def inv_at(n: int) -> _LJet:
        d = x0 - n + s
        if abs(d) < _HALF_INT_TOL:
            return _LJet.pole(1.0)
        return _LJet.inv_linear(d)

    def f_jet(n: int) -> _LJet:
        base = _LJet()
        base.c[-_L_LO] = two_g + (n - x0 + s) / two_g
        base.c[-_L_LO + 1] = -1.0 / two_g
        return base.add(inv_at(n).scale(d2 / two_g))

    k_prev = _LJet.const(1.0)
    k_prev2 = _LJet()
    R = _LJet.const(1.0)
    Rbar = inv_at(0)
    gn = 1.0
    streak = 0
    for n in range(1, cfg.max_terms + 1):
        k_cur = (f_jet(n - 1).mul(k_prev).sub(k_prev2)).scale(1.0 / n)
        k_prev2, k_prev = k_prev, k_cur
        gn *= g
        term = k_cur.scale(gn)
        R = R.add(term)
        tbar = term.mul(inv_at(n))
        Rbar = Rbar.add(tbar)
        scale = 1.0 + R.maxabs() + Rbar.maxabs()
        if max(term.maxabs(), tbar.maxabs()) <= cfg.tol * scale:
            streak += 1
            if streak >= cfg.consecutive_small:
                return R, Rbar
        else:
            streak = 0
    raise NonConvergent(f"branch jets not converged at x0={x0}")


def g_laurent_jet(x0: float, params: ModelParams,
                  cfg: SeriesConfig = DEFAULT_CONFIG) -> _LJet:
    """Laurent jet of the G-function at x0 (orders -2 .. +3)."""
    Rp, Rbp = _branch_jets(x0, params, "plus", cfg)
    Rm, Rbm = _branch_jets(x0, params, "minus", cfg)
    return Rbp.mul(Rbm).scale(params.delta ** 2).sub(Rp.mul(Rm))


def _singular_candidates(x: float, params: ModelParams, window: float):
    """Candidate singular points n +/- eps within `window` of x, nearest first."""
    out = []
    for branch, e in (("plus_eps", params.eps), ("minus_eps", -params.eps)):
        n = round(x - e)
        if n >= 0 and abs(x - (n + e)) <= window:
            out.append((abs(x - (n + e)), n, branch))
    out.sort()
    return out


def _gamma_factor_taylor(x0: float, n: int, branch: str, eps: float) -> list[float]:
    """Taylor coefficients in u of 1/Gamma(eps-x) * 1/Gamma(-eps-x) at
    x = x0 + u, with integer-valued arguments passed exactly so the zero
    structure is exact."""
    two_eps = 2.0 * eps
    m2 = round(two_eps)
    half_int = abs(two_eps - m2) < _HALF_INT_TOL
    if branch == "plus_eps":
        z1 = float(-n)                                   # eps - x0
        z2 = float(-(n + m2)) if half_int else -two_eps - n
    else:
        z2 = float(-n)                                   # -eps - x0
        z1 = float(m2 - n) if half_int else two_eps - n
    f1 = recip_gamma_taylor(z1, -1.0)
    f2 = recip_gamma_taylor(z2, -1.0)
    return _tmul(f1, f2)


def _pole_spacing(eps: float) -> float:
    """Smallest gap between distinct singular points n +/- eps."""
    t = (2.0 * abs(eps)) % 1.0
    if t < _HALF_INT_TOL or 1.0 - t < _HALF_INT_TOL:
        return 1.0
    return min(t, 1.0 - t)


def regularized_g(x: float, params: ModelParams,
                  cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """G(x) / (Gamma(eps-x) Gamma(-eps-x)): entire-behaving, vanishing exactly
    at the full spectrum (x = lambda + g^2). Near the removable points
    x = n +/- eps the value comes from the local Laurent-Taylor product,
    never from a naive quotient (which cancels catastrophically when the
    double-pole coefficient is small)."""
    window = min(REMOVABLE_WINDOW, _pole_spacing(params.eps) / 4.0)
    cands = _singular_candidates(x, params, window)
    if not cands:
        return (g_function(x, params, cfg)
                * reciprocal_gamma(params.eps - x)
                * reciprocal_gamma(-params.eps - x))
    _, n, branch = cands[0]
    e = params.eps if branch == "plus_eps" else -params.eps
    x0 = n + e
    u = x - x0
    gj = g_laurent_jet(x0, params, cfg)
    h = _gamma_factor_taylor(x0, n, branch, params.eps)
    out = 0.0
    for k in range(0, _JET_ORDER + 1):
        ck = 0.0
        for i in range(_L_LO, k + 1):
            ck += gj.order(i) * (h[k - i] if k - i < len(h) else 0.0)
        out += ck * u ** k
    return out


# ---------------------------------------------------------------------------
# residues and pole coefficients
# ---------------------------------------------------------------------------

def _branch_singular(x0: float, eps: float, sign: Sign) -> bool:
    s = eps if sign == "plus" else -eps
    n = round(x0 + s)
    return n >= 0 and abs(x0 - n + s) < _HALF_INT_TOL


def residue_simple(N: int, params: ModelParams, sign: Sign = "plus",
                   cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Closed-form residue of G at the simple pole x = N + eps (sign="plus")
    or x = N - eps: 1/(N!(N+1)!) Delta^2 P_N((2g)^2, Delta^2) T_N."""
    e_eff = params.eps if sign == "plus" else -params.eps
    x0 = N + e_eff
    if _branch_singular(x0, params.eps, "plus") and _branch_singular(x0, params.eps, "minus"):
        raise WrongPoleOrder(f"x = {x0} is in the double-pole regime")
    pn = constraint_value(N, e_eff, N, 4.0 * params.g ** 2, params.delta ** 2)
    return _C(N) * params.delta ** 2 * pn * t_function(N, params, sign, cfg)


def residue_numeric(x0: float, params: ModelParams, order: int = 1,
                    h0: float = 1e-2, cfg: SeriesConfig = DEFAULT_CONFIG):
    """Laurent coefficients at x0 from one-sided limits with Richardson
    extrapolation over the step sequence h, h/2, h/4 (independent of the
    closed-form path). order=1 returns the residue; order=2 returns (A, B)."""
    def sym(h):
        gp = g_function(x0 + h, params, cfg)
        gm = g_function(x0 - h, params, cfg)
        if order == 1:
            return (h * gp - h * gm) / 2.0
        return ((h * h * gp + h * h * gm) / 2.0, (h * h * gp - h * h * gm) / (2.0 * h))

    hs = [h0, h0 / 2.0, h0 / 4.0]
    if order == 1:
        v = [sym(h) for h in hs]
        r1 = (4.0 * v[1] - v[0]) / 3.0
        r2 = (4.0 * v[2] - v[1]) / 3.0
        return (16.0 * r2 - r1) / 15.0
    pairs = [sym(h) for h in hs]
    out = []
    for idx in range(2):
        v = [p[idx] for p in pairs]
        r1 = (4.0 * v[1] - v[0]) / 3.0
        r2 = (4.0 * v[2] - v[1]) / 3.0
        out.append((16.0 * r2 - r1) / 15.0)
    return tuple(out)


def _require_half_integer(params: ModelParams, ell: int):
    if abs(params.eps - ell / 2.0) > _HALF_INT_TOL:
        raise ValueError(f"eps must equal ell/2 = {ell / 2.0}, got {params.eps}")


def q_functions(N: int, ell: int, params: ModelParams,
                cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[float, float, float, float]:
    """Finite parts at x = N + ell/2 of (R-, Rbar-, R+, Rbar+): the four sums
    with their pole term removed, Q = lim (R - Res/(x - x0)).

    Computed by running the defining recurrences as local Laurent expansions;
    carrying the expansion makes the modified pole step exact, including the
    derivative cross-terms that a scalar recurrence would drop.
    """
    _require_half_integer(params, ell)
    x0 = N + ell / 2.0
    Rm, Rbm = _branch_jets(x0, params, "minus", cfg)
    Rp, Rbp = _branch_jets(x0, params, "plus", cfg)
    return Rm.order(0), Rbm.order(0), Rp.order(0), Rbp.order(0)


def double_pole_coefficients(N: int, ell: int, params: ModelParams,
                             cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Laurent coefficients A/(x-x0)^2 + B/(x-x0) of G at x0 = N + ell/2 when
    eps = ell/2, in closed form.

    A = C(N) C(N+l) Delta^4 P_N P_{N+l} T_N  (the off-diagonal product of the
    two branch residues; it vanishes to first order at a zero of T).
    B combines the branch finite parts through the regularized sums.
    """
    _require_half_integer(params, ell)
    if ell < 0:
        raise ValueError("ell must be nonnegative here")
    g2 = 4.0 * params.g ** 2
    d2 = params.delta ** 2
    pn = constraint_value(N, ell / 2.0, N, g2, d2)
    pnl = constraint_value(N + ell, -ell / 2.0, N + ell, g2, d2)
    tval = t_function(N, params, "plus", cfg)
    A = _C(N) * _C(N + ell) * d2 * d2 * pn * pnl * tval

    qm, qbm, qp, qbp = q_functions(N, ell, params, cfg)
    e = ell / 2.0
    Rm, Rbm, _, _ = _pieces_minus(N, params, e, cfg)
    Rp, Rbp, _, _, _ = _pieces_plus(N, params, e, cfg)
    aval = a_value(N, ell, g2, d2)
    bracket = (Rbm * (params.delta * qbp) - Rm * qp) / _C(N + ell) \
        + aval * (Rbp * (params.delta * qbm) - Rp * qm) / _C(N)
    B = _C(N) * _C(N + ell) * d2 * pn * bracket
    return A, B


def b_function(N: int, ell: int, params: ModelParams,
               cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Regularized T-function N!(N+1)! (Rbar+ . Delta Qbar- minus R+ . Q-) at
    the point x = N + ell/2 with bias ell/2; defined for signed ell so the
    residue-vanishing combination B(N+l, -l) + A_N^l B(N, l) can be formed."""
    e = ell / 2.0
    local = ModelParams(params.g, params.delta, e)
    x0 = N + e
    Rm_jet, Rbm_jet = _branch_jets(x0, local, "minus", cfg)
    qm, qbm = Rm_jet.order(0), Rbm_jet.order(0)
    Rp, Rbp, _, _, _ = _pieces_plus(N, local, e, cfg)
    return (Rbp * (params.delta * qbm) - Rp * qm) / _C(N)


def b_residual(N: int, ell: int, params: ModelParams,
               cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Residual of the residue-vanishing relation at the double pole
    x = N + ell/2: B(N+l, -l) + A_N^l((2g)^2, Delta^2) B(N, l)."""
    _require_half_integer(params, ell)
    aval = a_value(N, ell, 4.0 * params.g ** 2, params.delta ** 2)
    return b_function(N + ell, -ell, params, cfg) + aval * b_function(N, ell, params, cfg)
