"""Qutrit Bloch geometry on span{GHZ, W, W~}: Gell-Mann coordinates, the five
zero-tangle vertices, and the polyhedron membership test."""

import math

import numpy as np

from .errors import BadDimensionError, BadParamsError, EmptyInputError, OutOfSpanError
from .family import ghz, w, w_tilde, z_state
from .states import DensityMatrix

_SQRT3 = math.sqrt(3.0)

# standard Gell-Mann matrices, Tr(l_i l_j) = 2 delta_ij
GELL_MANN = np.zeros((8, 3, 3), dtype=complex)
GELL_MANN[0] = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
GELL_MANN[1] = [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]
GELL_MANN[2] = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]
GELL_MANN[3] = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
GELL_MANN[4] = [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]
GELL_MANN[5] = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
GELL_MANN[6] = [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]
GELL_MANN[7] = np.diag([1.0, 1.0, -2.0]) / _SQRT3
GELL_MANN.setflags(write=False)

# ordered basis (GHZ, W, W~) as 8x3 column isometry
_BASIS = np.column_stack([ghz().amps, w().amps, w_tilde().amps])

LEAKAGE_TOL = 1e-10

_MEMBERSHIP_TOL = 1e-8
_MAX_NNLS_ITERS = 10_000


def qutrit_project(rho):
    """3x3 matrix <e_i| rho |e_j> in the (GHZ, W, W~) basis.

    Raises OutOfSpan if rho has weight outside the span (leakage > 1e-10).
    """
    if not isinstance(rho, DensityMatrix) or rho.dim != 8:
        raise BadDimensionError("qutrit_project expects an 8x8 DensityMatrix")
    sigma = _BASIS.conj().T @ rho.mat @ _BASIS
    leakage = 1.0 - sigma.trace().real
    if leakage > LEAKAGE_TOL:
        raise OutOfSpanError(leakage)
    return DensityMatrix(sigma / sigma.trace().real)


def bloch_vector(sigma):
    """Gell-Mann coordinates n_i = (sqrt(3)/2) Tr(sigma l_i)."""
    if not isinstance(sigma, DensityMatrix) or sigma.dim != 3:
        raise BadDimensionError("bloch_vector expects a 3x3 DensityMatrix")
    return (_SQRT3 / 2.0) * np.real(np.einsum("kij,ji->k", GELL_MANN, sigma.mat))


def qutrit_from_bloch(n_vec):
    """Inverse map (1/3)(I + sqrt(3) n.lambda); validates PSD."""
    n_vec = np.asarray(n_vec, dtype=float)
    if n_vec.shape != (8,):
        raise BadDimensionError(f"expected 8 components, got shape {n_vec.shape}")
    mat = (np.eye(3) + _SQRT3 * np.einsum("k,kij->ij", n_vec, GELL_MANN)) / 3.0
    return DensityMatrix(mat)


def zero_tangle_vertices(n, p0):
    """The five Bloch vectors spanning the vanishing-tangle polyhedron.

    Row order: W, W~, then the three Z(p0, (1-p0)/n) phase vertices.
    """
    if n < 1.0 - 1e-12:
        raise BadParamsError(f"n must be >= 1, got {n!r}")
    if not 0.0 < p0 < 1.0:
        raise BadParamsError(f"p0 must lie in (0, 1), got {p0!r}")
    n = float(n)
    xi1 = math.sqrt(p0 * (1.0 - p0) / n)
    xi2 = math.sqrt(n - 1.0) * xi1
    xi3 = math.sqrt(n - 1.0) * (1.0 - p0) / n
    eta1 = (_SQRT3 / 2.0) * (1.0 - (n + 1.0) * (1.0 - p0) / n)
    eta2 = 0.5 * (1.0 - 3.0 * (n - 1.0) * (1.0 - p0) / n)
    rows = np.array(
        [
            [0.0, 0.0, -_SQRT3 / 2.0, 0.0, 0.0, 0.0, 0.0, 0.5],
            [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0],
            [-_SQRT3 * xi1, 0.0, eta1, -_SQRT3 * xi2, 0.0, _SQRT3 * xi3, 0.0, eta2],
            [
                (_SQRT3 / 2.0) * xi1,
                -1.5 * xi1,
                eta1,
                (_SQRT3 / 2.0) * xi2,
                1.5 * xi2,
                -(_SQRT3 / 2.0) * xi3,
                1.5 * xi3,
                eta2,
            ],
            [
                (_SQRT3 / 2.0) * xi1,
                1.5 * xi1,
                eta1,
                (_SQRT3 / 2.0) * xi2,
                -1.5 * xi2,
                -(_SQRT3 / 2.0) * xi3,
                -1.5 * xi3,
                eta2,
            ],
        ]
    )
    return rows


def vertex_states(n, p0):
    """Pure states behind zero_tangle_vertices, in the same row order."""
    if n < 1.0 - 1e-12:
        raise BadParamsError(f"n must be >= 1, got {n!r}")
    q0 = (1.0 - p0) / n
    return [
        w(),
        w_tilde(),
        z_state(p0, q0, 0.0, 0.0),
        z_state(p0, q0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0),
        z_state(p0, q0, 4.0 * math.pi / 3.0, 2.0 * math.pi / 3.0),
    ]


def _project_simplex(v):
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - 1.0
    rho_idx = np.nonzero(u * np.arange(1, len(v) + 1) > cssv)[0][-1]
    theta = cssv[rho_idx] / (rho_idx + 1.0)
    return np.maximum(v - theta, 0.0)


def _simplex_least_squares(a, b):
    """min |a w - b| over the probability simplex; FISTA plus a KKT polish."""
    m = a.shape[1]
    lip = np.linalg.norm(a, 2) ** 2
    if lip == 0.0:
        return np.full(m, 1.0 / m)
    step = 1.0 / lip
    x = np.full(m, 1.0 / m)
    y = x.copy()
    t = 1.0
    at_b = a.T @ b
    ata = a.T @ a
    for _ in range(_MAX_NNLS_ITERS):
        grad = ata @ y - at_b
        x_new = _project_simplex(y - step * grad)
        if np.max(np.abs(x_new - x)) < 1e-13:
            # momentum can stall on a face of the simplex; stop only at a true
            # fixed point of the plain projected-gradient map, else restart
            g = ata @ x_new - at_b
            if np.max(np.abs(_project_simplex(x_new - step * g) - x_new)) < 1e-13:
                x = x_new
                break
            x = x_new
            y = x_new.copy()
            t = 1.0
            continue
        t_new = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
        y = x_new + ((t - 1.0) / t_new) * (x_new - x)
        x, t = x_new, t_new
    # polish: equality-constrained least squares on the active support
    support = x > 1e-9
    if support.any():
        asub = a[:, support]
        k = int(support.sum())
        # solve [A^T A, 1; 1^T, 0] [w; mu] = [A^T b; 1]
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = asub.T @ asub
        kkt[:k, k] = 1.0
        kkt[k, :k] = 1.0
        rhs = np.zeros(k + 1)
        rhs[:k] = asub.T @ b
        rhs[k] = 1.0
        sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
        w_pol = sol[:k]
        if w_pol.min() >= -1e-12:
            cand = np.zeros(m)
            cand[support] = np.maximum(w_pol, 0.0)
            s = cand.sum()
            if s > 0:
                cand /= s
            if np.linalg.norm(a @ cand - b) <= np.linalg.norm(a @ x - b) + 1e-15:
                x = cand
    return x


def in_zero_polyhedron(v, vertices, tol=_MEMBERSHIP_TOL):
    """Best convex combination of the vertices approximating v.

    Returns (inside, weights): inside is True when the residual |sum w_i v_i - v|
    is <= tol.
    """
    v = np.asarray(v, dtype=float)
    vertices = np.asarray(vertices, dtype=float)
    if vertices.ndim != 2 or vertices.shape[0] < 1:
        raise EmptyInputError("need at least one vertex")
    a = vertices.T
    weights = _simplex_least_squares(a, v)
    residual = float(np.linalg.norm(a @ weights - v))
    return residual <= tol, weights
