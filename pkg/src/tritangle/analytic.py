"""Closed-form mixture three-tangle, threshold root solvers, CKW quantities.

All horizontal-axis formulas take (p, n) with q = (1-p)/n substituted, except
one_tangle_min and concurrence_sum_sq which take general (p, q).
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .errors import BadParamsError, NoRootError

_SOLVER_XTOL = 1e-13
_ORDER_TOL = 1e-9
_SCAN_INTERVALS = 2048


class Region(Enum):
    ZERO = "ZERO"
    ALPHA_I = "ALPHA_I"
    ALPHA_II = "ALPHA_II"


@dataclass(frozen=True)
class Thresholds:
    """Per-n boundary points of the piecewise mixture tangle."""

    n: float
    p0: float
    p1: float
    p_star: float
    p_c: float

    def __post_init__(self):
        ok = (
            0.0 < self.p_c < self.p0 + _ORDER_TOL
            and self.p0 <= self.p1 + _ORDER_TOL
            and self.p1 <= self.p_star + _ORDER_TOL
            and self.p_star < 1.0
        )
        if not ok:
            raise BadParamsError(
                f"threshold ordering 0 < p_c < p0 <= p1 <= p_star < 1 violated: {self}"
            )

    def record(self):
        """Flat key=value lines at full double precision."""
        return "\n".join(
            [
                f"n={self.n:.17g}",
                f"p0={self.p0:.17g}",
                f"p1={self.p1:.17g}",
                f"p_star={self.p_star:.17g}",
                f"p_c={self.p_c:.17g}",
            ]
        )


@dataclass(frozen=True)
class PiecewiseTangle:
    region: Region
    value: float


def _check_n(n):
    if n < 1.0 - 1e-12:
        raise BadParamsError(f"n must be >= 1, got {n!r}")
    return float(n)


def _coeffs(n):
    """Shared coefficients of the region-I curve and its derivatives."""
    c_lin = 4.0 * math.sqrt(n - 1.0) / n
    c_quad = 4.0 * (n - 1.0) / (3.0 * n * n)
    c_root = 8.0 * math.sqrt(6.0 * n) * (1.0 + (n - 1.0) ** 1.5) / (9.0 * n * n)
    return c_lin, c_quad, c_root


def alpha_I(p, n):
    """Average member tangle of the symmetric ensemble at q = (1-p)/n."""
    n = _check_n(n)
    p = np.asarray(p, dtype=float)
    if np.any(p < -1e-12) or np.any(p > 1.0 + 1e-12):
        raise BadParamsError("p must lie in [0, 1]")
    p = np.clip(p, 0.0, 1.0)
    c_lin, c_quad, c_root = _coeffs(n)
    val = (
        p**2
        - c_lin * p * (1.0 - p)
        - c_quad * (1.0 - p) ** 2
        - c_root * np.sqrt(p * (1.0 - p) ** 3)
    )
    if val.ndim == 0:
        return float(val)
    return val


def alpha_I_dd(p, n):
    """Closed-form second derivative of alpha_I; singular at p in {0, 1}."""
    n = _check_n(n)
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise BadParamsError("alpha_I_dd requires 0 < p < 1")
    bracket = 9.0 * n * n + 36.0 * n * math.sqrt(n - 1.0) - 12.0 * (n - 1.0)
    c = math.sqrt(6.0 * n) * (1.0 + (n - 1.0) ** 1.5)
    val = (2.0 / (9.0 * n * n)) * (
        bracket - c * (8.0 * p**2 - 4.0 * p - 1.0) / np.sqrt(p**3 * (1.0 - p))
    )
    if val.ndim == 0:
        return float(val)
    return val


def alpha_II(p, n, p1):
    """Chord from (p1, alpha_I(p1)) to (1, 1)."""
    n = _check_n(n)
    if p1 >= 1.0:
        raise BadParamsError(f"p1 must be < 1, got {p1!r}")
    p = np.asarray(p, dtype=float)
    val = (p - p1) / (1.0 - p1) + (1.0 - p) / (1.0 - p1) * alpha_I(p1, n)
    if val.ndim == 0:
        return float(val)
    return val


def _scan_values(f, xs):
    fs = np.asarray(f(xs), dtype=float)
    if fs.shape != xs.shape:
        fs = np.array([f(x) for x in xs])
    return fs


def _largest_root(f, lo, hi, intervals):
    """Largest sign-change root of f on [lo, hi]; scans from hi downward."""
    xs = np.linspace(lo, hi, intervals + 1)
    fs = _scan_values(f, xs)
    for i in range(intervals - 1, -1, -1):
        a, b = xs[i], xs[i + 1]
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0:
            return float(a)
        if fb == 0.0:
            return float(b)
        if fa * fb < 0.0:
            return float(brentq(f, a, b, xtol=_SOLVER_XTOL))
    raise NoRootError(f"no sign change of {f.__name__!r} in [{lo}, {hi}]")


def _smallest_root(f, lo, hi, intervals):
    xs = np.linspace(lo, hi, intervals + 1)
    fs = _scan_values(f, xs)
    for i in range(intervals):
        a, b = xs[i], xs[i + 1]
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0:
            return float(a)
        if fb == 0.0:
            return float(b)
        if fa * fb < 0.0:
            return float(brentq(f, a, b, xtol=_SOLVER_XTOL))
    raise NoRootError(f"no sign change of {f.__name__!r} in [{lo}, {hi}]")


def solve_p0(n):
    """Largest zero of alpha_I on (0, 1); the phase-zero curve's last crossing."""
    n = _check_n(n)

    def f(p):
        return alpha_I(p, n)

    return _largest_root(f, 0.5, 1.0 - 1e-9, _SCAN_INTERVALS)


def solve_p1(n):
    """Tangency point: where the chord to (1,1) touches the region-I curve."""
    n = _check_n(n)
    c_lin, c_quad, c_root = _coeffs(n)
    rhs = 1.0 + c_lin - c_quad

    def f(p):
        return (c_root / 2.0) * (2.0 * p - 1.0) / np.sqrt(p * (1.0 - p)) - rhs

    return _smallest_root(f, 0.5 + 1e-9, 1.0 - 1e-9, _SCAN_INTERVALS)


def solve_p_star(n):
    """Concavity onset: zero of the second derivative of alpha_I."""
    n = _check_n(n)
    p0 = solve_p0(n)

    def f(p):
        return alpha_I_dd(p, n)

    return _smallest_root(f, p0, 1.0 - 1e-6, _SCAN_INTERVALS)


def p_c(n):
    """Point where the squared-concurrence sum first vanishes."""
    n = _check_n(n)
    if abs(n - 2.0) < 1e-9:
        # closed form is 0/0 at n=2; solve the defining equation directly
        def f(p):
            q = (1.0 - p) / 2.0
            return 2.0 * (1.0 - p) - math.sqrt((3.0 * p + 2.0 * q) * (2.0 + p - 2.0 * q))

        return float(brentq(f, 0.0, 1.0, xtol=_SOLVER_XTOL))
    num = (7.0 * n * n - 4.0 * n + 4.0) - 3.0 * n * math.sqrt(5.0 * n * n - 4.0 * n + 4.0)
    return num / (n - 2.0) ** 2


def thresholds(n):
    """Solve all four boundary points for one n."""
    n = _check_n(n)
    return Thresholds(n=n, p0=solve_p0(n), p1=solve_p1(n), p_star=solve_p_star(n), p_c=p_c(n))


def mixed_three_tangle(p, n, th=None):
    """Piecewise mixture tangle: 0, alpha_I, or alpha_II by region."""
    n = _check_n(n)
    if p < -1e-12 or p > 1.0 + 1e-12:
        raise BadParamsError(f"p must lie in [0, 1], got {p!r}")
    p = min(max(float(p), 0.0), 1.0)
    if th is None:
        th = thresholds(n)
    elif abs(th.n - n) > 1e-9:
        raise BadParamsError(f"thresholds were solved for n={th.n}, not n={n}")
    if p <= th.p0:
        return PiecewiseTangle(Region.ZERO, 0.0)
    if p <= th.p1:
        return PiecewiseTangle(Region.ALPHA_I, alpha_I(p, n))
    return PiecewiseTangle(Region.ALPHA_II, alpha_II(p, n, th.p1))


def one_tangle_min(p, q):
    """Minimum one-tangle 4 min det rho_A of the mixture, closed form."""
    if p < -1e-12 or q < -1e-12 or p + q > 1.0 + 1e-12:
        raise BadParamsError(f"require 0 <= p, 0 <= q, p + q <= 1; got p={p!r}, q={q!r}")
    p = max(float(p), 0.0)
    q = max(float(q), 0.0)
    r = max(1.0 - p - q, 0.0)
    poly = 8.0 - 4.0 * p - 12.0 * q + 5.0 * p * p + 12.0 * q * q + 12.0 * p * q
    cross = 4.0 * math.sqrt(p * q * r) * (
        2.0 * math.sqrt(6.0 * q) + 2.0 * math.sqrt(6.0 * r) - 3.0 * math.sqrt(p)
    )
    return (poly + cross) / 9.0


def concurrence_sum_sq(p, q):
    """C_AB^2 + C_AC^2 of the mixture, closed form."""
    if p < -1e-12 or q < -1e-12 or p + q > 1.0 + 1e-12:
        raise BadParamsError(f"require 0 <= p, 0 <= q, p + q <= 1; got p={p!r}, q={q!r}")
    p = max(float(p), 0.0)
    q = max(float(q), 0.0)
    c = (2.0 / 3.0) * (1.0 - p) - (1.0 / 3.0) * math.sqrt(
        (3.0 * p + 2.0 * q) * (2.0 + p - 2.0 * q)
    )
    return 2.0 * max(0.0, c) ** 2


@dataclass(frozen=True)
class CkwAudit:
    """Grid check of one_tangle >= conc_sq_sum + tau3 on the q=(1-p)/n slice."""

    n: float
    p: np.ndarray
    one_tangle: np.ndarray
    conc_sq_sum: np.ndarray
    tau3: np.ndarray
    margin: np.ndarray
    min_margin: float


def ckw_audit(n, grid_size, th=None):
    n = _check_n(n)
    if grid_size < 2:
        raise BadParamsError(f"grid_size must be >= 2, got {grid_size!r}")
    if th is None:
        th = thresholds(n)
    ps = np.linspace(0.0, 1.0, int(grid_size))
    one = np.array([one_tangle_min(p, (1.0 - p) / n) for p in ps])
    conc = np.array([concurrence_sum_sq(p, (1.0 - p) / n) for p in ps])
    tau = np.array([mixed_three_tangle(p, n, th).value for p in ps])
    margin = one - conc - tau
    return CkwAudit(
        n=n,
        p=ps,
        one_tangle=one,
        conc_sq_sum=conc,
        tau3=tau,
        margin=margin,
        min_margin=float(margin.min()),
    )
