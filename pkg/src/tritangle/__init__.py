"""Three-tangle of three-qubit states: closed forms for the GHZ/W/flipped-W
mixture family, an independent convex-roof decomposition search, and qutrit
Bloch-space zero-tangle membership tests."""

from .analytic import (
    CkwAudit,
    PiecewiseTangle,
    Region,
    Thresholds,
    alpha_I,
    alpha_I_dd,
    alpha_II,
    ckw_audit,
    concurrence_sum_sq,
    mixed_three_tangle,
    one_tangle_min,
    p_c,
    solve_p0,
    solve_p1,
    solve_p_star,
    thresholds,
)
from .bloch import (
    GELL_MANN,
    bloch_vector,
    in_zero_polyhedron,
    qutrit_from_bloch,
    qutrit_project,
    vertex_states,
    zero_tangle_vertices,
)
from .errors import (
    BadDimensionError,
    BadParamsError,
    EmptyInputError,
    NoRootError,
    NotIsometryError,
    OutOfSpanError,
    ZeroVectorError,
)
from .family import (
    SYMMETRIC_PHASES,
    ghz,
    ghz_minus,
    optimal_decomposition,
    pi_state,
    rho,
    symmetric_ensemble,
    w,
    w_tilde,
    z_state,
    z_tangle_closed,
)
from .measures import (
    ckw_residual,
    concurrence,
    ensemble_average_tangle,
    one_tangle_pure,
    tangle_from_amps,
    three_tangle_pure,
)
from .roof import (
    CharCurve,
    DecompositionSearchResult,
    LowerEnvelope,
    characteristic_curve,
    hjw_ensemble,
    lower_convex_envelope,
    min_avg_tangle,
    rank_of,
)
from .states import (
    DensityMatrix,
    Ensemble,
    PureState3,
    density_from_ensemble,
    eigh_desc,
    load_density_matrix,
    partial_trace,
    partial_trace_pair,
    pure_from_amplitudes,
    save_density_matrix,
    trace_distance,
)

__version__ = "0.1.0"
