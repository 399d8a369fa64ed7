from .affine import affine_weights
from .reduced import ReducedKernel, compute_reduced_kernel, default_rank
from .weights import (
    WeightDiagnostics,
    WeightMatrix,
    WeightSolverConfig,
    default_lambda_w,
    project_weights,
    solve_weights,
)
