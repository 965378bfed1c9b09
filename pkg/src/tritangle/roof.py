"""Numerical convex-roof machinery: characteristic-curve sampling, lower convex
envelopes, and an ensemble-decomposition search upper-bounding the mixed-state
three-tangle."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import BadParamsError, EmptyInputError, NotIsometryError
from .family import z_tangle_closed
from .measures import ensemble_average_tangle, tangle_from_amps
from .states import DensityMatrix, Ensemble, eigh_desc, pure_from_amplitudes

RANK_TOL = 1e-12
ISOMETRY_TOL = 1e-10

_TWO_PI = 2.0 * math.pi
_PHASE_XATOL = 1e-8
_PHASE_MAXFEV = 400
_SEARCH_XATOL = 1e-7
_SEARCH_MAXFEV = 5000
_WEIGHT_FLOOR = 1e-14


@dataclass(frozen=True)
class CharCurve:
    """Pointwise phase-minimum of the Z-state tangle along p, at q = (1-p)/n."""

    n: float
    p: np.ndarray
    tau_min: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray

    def to_csv(self):
        lines = ["p,tau_min,phi1_argmin,phi2_argmin"]
        for pv, tv, f1, f2 in zip(self.p, self.tau_min, self.phi1, self.phi2):
            lines.append(f"{pv:.17g},{tv:.17g},{f1:.17g},{f2:.17g}")
        return "\n".join(lines) + "\n"


def characteristic_curve(n, p_points=401, phi_points=64):
    """Minimize the closed-form Z tangle over the phase torus at each p.

    Coarse phi grid first, then simplex refinement of the best grid point
    down to 1e-8 in phase.
    """
    if n < 1.0 - 1e-12:
        raise BadParamsError(f"n must be >= 1, got {n!r}")
    if p_points < 2:
        raise BadParamsError(f"p_points must be >= 2, got {p_points!r}")
    if phi_points < 4:
        raise BadParamsError(f"phi_points must be >= 4, got {phi_points!r}")
    phis = np.linspace(0.0, _TWO_PI, phi_points, endpoint=False)
    f1_grid, f2_grid = np.meshgrid(phis, phis, indexing="ij")
    ps = np.linspace(0.0, 1.0, p_points)
    tau = np.empty(p_points)
    arg1 = np.empty(p_points)
    arg2 = np.empty(p_points)
    for i, p in enumerate(ps):
        q = (1.0 - p) / n
        vals = z_tangle_closed(p, q, f1_grid, f2_grid)
        flat = int(np.argmin(vals))
        x0 = np.array([f1_grid.flat[flat], f2_grid.flat[flat]])

        def objective(x):
            return z_tangle_closed(p, q, x[0], x[1])

        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"xatol": _PHASE_XATOL, "fatol": 1e-14, "maxfev": _PHASE_MAXFEV},
        )
        best = res if res.fun <= vals.flat[flat] else None
        if best is None:
            tau[i] = vals.flat[flat]
            arg1[i], arg2[i] = x0
        else:
            tau[i] = float(res.fun)
            arg1[i], arg2[i] = np.mod(res.x, _TWO_PI)
    return CharCurve(n=float(n), p=ps, tau_min=tau, phi1=arg1, phi2=arg2)


_COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class LowerEnvelope:
    """Greatest convex minorant of sampled points; piecewise linear."""

    x: np.ndarray
    y: np.ndarray

    def __call__(self, xq):
        return np.interp(xq, self.x, self.y)


def lower_convex_envelope(points):
    """Monotone-chain lower hull of (x, y) samples with x strictly increasing."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptyInputError("no points given")
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise BadParamsError("need at least two (x, y) points")
    x, y = pts[:, 0], pts[:, 1]
    if np.any(np.diff(x) <= 0.0):
        raise BadParamsError("x values must be strictly increasing")
    hull = []
    for xi, yi in zip(x, y):
        while len(hull) >= 2:
            (xa, ya), (xb, yb) = hull[-2], hull[-1]
            cross = (xb - xa) * (yi - ya) - (yb - ya) * (xi - xa)
            # pop only genuinely concave corners; near-collinear points stay
            if cross < -_COLLINEAR_TOL:
                hull.pop()
            else:
                break
        hull.append((xi, yi))
    hx = np.array([h[0] for h in hull])
    hy = np.array([h[1] for h in hull])
    return LowerEnvelope(x=hx, y=hy)


def rank_of(rho):
    """Number of eigenvalues above 1e-12."""
    return int(np.sum(np.linalg.eigvalsh(rho.mat) > RANK_TOL))


def hjw_ensemble(rho, mixing):
    """Ensemble |psi~_j> = sum_i U_ji sqrt(l_i) |v_i> from an m x r isometry.

    Members with weight <= 1e-14 are dropped; the rest reproduce rho.
    """
    if not isinstance(rho, DensityMatrix):
        raise BadParamsError("hjw_ensemble expects a DensityMatrix")
    u = np.asarray(mixing, dtype=complex)
    r = rank_of(rho)
    if u.ndim != 2 or u.shape[0] < r or u.shape[1] != r:
        raise BadParamsError(f"mixing must be m x {r} with m >= {r}, got {u.shape}")
    gram = u.conj().T @ u
    if np.max(np.abs(gram - np.eye(r))) > ISOMETRY_TOL:
        raise NotIsometryError("mixing matrix columns are not orthonormal within 1e-10")
    vals, vecs = eigh_desc(rho.mat)
    basis = vecs[:, :r] * np.sqrt(np.maximum(vals[:r], 0.0))
    tilde = basis @ u.T
    weights = np.sum(np.abs(tilde) ** 2, axis=0).real
    members = []
    for j in range(u.shape[0]):
        if weights[j] > _WEIGHT_FLOOR:
            members.append((weights[j], pure_from_amplitudes(tilde[:, j])))
    total = sum(wt for wt, _ in members)
    return Ensemble([(wt / total, s) for wt, s in members])


@dataclass(frozen=True)
class DecompositionSearchResult:
    upper_bound: float
    best_ensemble: Ensemble
    restarts_used: int
    converged: bool


def _objective_factory(basis, m, r):
    """Objective over the 2mr real parameters of the pre-QR mixing matrix.

    basis is r x 8 with rows sqrt(l_i) <v_i|; member j is row j of u @ basis.
    """

    def objective(x):
        mat = x[: m * r].reshape(m, r) + 1j * x[m * r :].reshape(m, r)
        u, _ = np.linalg.qr(mat)
        tilde = u @ basis
        ws = np.sum(np.abs(tilde) ** 2, axis=1)
        raw = tangle_from_amps(tilde)
        mask = ws > _WEIGHT_FLOOR
        return float(np.sum(raw[mask] / ws[mask]))

    return objective


def min_avg_tangle(rho, m, restarts=20, seed=0):
    """Upper-bound the convex-roof tangle by searching the mixing isometry.

    Deterministic for fixed (rho, m, restarts, seed); the best restart wins.
    """
    if not isinstance(rho, DensityMatrix) or rho.dim != 8:
        raise BadParamsError("min_avg_tangle expects an 8x8 DensityMatrix")
    r = rank_of(rho)
    if r > 4:
        raise BadParamsError(f"rank {r} exceeds the supported maximum 4")
    if not r <= m <= 8:
        raise BadParamsError(f"m must lie in [{r}, 8], got {m!r}")
    if restarts < 1:
        raise BadParamsError(f"restarts must be >= 1, got {restarts!r}")
    vals, vecs = eigh_desc(rho.mat)
    basis = (vecs[:, :r] * np.sqrt(np.maximum(vals[:r], 0.0))).T  # r x 8
    objective = _objective_factory(basis, m, r)
    best_fun = math.inf
    best_x = None
    best_success = False
    for k in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, k)))
        x0 = rng.standard_normal(2 * m * r)
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            # dimension-adaptive simplex coefficients; plain NM stalls in ~30 dims
            options={
                "xatol": _SEARCH_XATOL,
                "fatol": 1e-12,
                "maxfev": _SEARCH_MAXFEV,
                "adaptive": True,
            },
        )
        if res.fun < best_fun:
            best_fun = float(res.fun)
            best_x = res.x
            best_success = bool(res.success)
    mat = best_x[: m * r].reshape(m, r) + 1j * best_x[m * r :].reshape(m, r)
    u, _ = np.linalg.qr(mat)
    ens = hjw_ensemble(rho, u)
    return DecompositionSearchResult(
        upper_bound=ensemble_average_tangle(ens),
        best_ensemble=ens,
        restarts_used=restarts,
        converged=best_success,
    )
