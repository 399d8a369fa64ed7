from .config import InitStrategy, ReconConfig
from .objectives import (
    b_gradient,
    b_objective,
    b_smooth,
    d_gradient,
    d_objective,
    objective,
)
from .problems import ReconProblem
from .sca import (
    ReconDiagnostics,
    ReconResult,
    gamma_next,
    consistent_fit,
    fit_dictionary,
    init_state,
    initial_fit,
    navigator_coefficients,
    reconstruct,
    resolve_c_d,
    run_reconstruction,
    sca_step,
    uniform_coefficients,
)
from .state import ReconState
from .subproblems import InnerResult, solve_b_subproblem, solve_d_subproblem, update_z
