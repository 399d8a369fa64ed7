from collections.abc import Callable
from typing import NamedTuple

import numpy as np
import structlog
from numpy.typing import NDArray

from kerbil.common import ParameterError
from kerbil.numerics import (
    project_columns_ball,
    project_columns_sum_one,
    soft_threshold,
)

from .config import ReconConfig
from .objectives import b_objective, d_objective
from .problems import ReconProblem
from .state import ReconState

LOGGER = structlog.get_logger()

B_SLACK = 1e-8


class InnerResult(NamedTuple):
    solution: NDArray
    "The subproblem estimate."

    iterations: int
    "Number of inner iterations spent."


def solve_d_subproblem(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig
) -> InnerResult:
    """
    Minimize the `D` subproblem over the product of column balls of radius `c_d`
    with accelerated projected gradient.

    The iteration runs in k-space on `A = F(D)`, where the data term
    separates over phase lines: row `r` of the gradient is `A_r Q_p - G_r`
    with `Q_p = M diag(S_p) M^H + lambda1 M M^H + tau_d I` and `M = K_r B_n`.

    Parameters:
        problem: The recovery problem.
        state: The incumbent, which is feasible.
        cfg: A resolved config.

    Returns:
        The estimate, never worse than the incumbent `D_n`.
    """

    c_d = _positive(cfg.c_d, "c_d")
    lambda1 = cfg.lambda1
    mixing = problem.kernel @ state.B
    d = mixing.shape[0]

    gram = mixing @ mixing.conj().T
    curvature = np.einsum("it,pt,jt->pij", mixing, problem.lines, mixing.conj())
    curvature += (lambda1 * gram + cfg.tau_d * np.eye(d))[None]

    start = problem.forward(state.D)
    target = problem.forward(problem.temporal_inverse(state.Z))
    linear = (problem.data + lambda1 * target) @ mixing.conj().T + cfg.tau_d * start

    lipschitz = (1 + lambda1) * float(np.linalg.norm(mixing, 2)) ** 2 + cfg.tau_d

    def gradient(spectrum: NDArray) -> NDArray:
        rows = np.einsum("pfi,pij->pfj", problem.by_line(spectrum), curvature)
        return rows.reshape(spectrum.shape, order="F") - linear

    def project(spectrum: NDArray) -> NDArray:
        return project_columns_ball(spectrum, c_d)

    spectrum, iterations = _fista(start, gradient, project, lipschitz, cfg)
    estimate = problem.inverse(spectrum)

    incumbent = d_objective(problem, state, cfg, state.D)
    if d_objective(problem, state, cfg, estimate) > incumbent:
        LOGGER.debug("D subproblem did not improve, keeping incumbent", n=state.n)
        estimate = state.D

    return InnerResult(solution=estimate, iterations=iterations)


def solve_b_subproblem(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig
) -> InnerResult:
    """
    Minimize the `B` subproblem, smooth quadratic plus `lambda2 * ||B||_1`,
    over unit column sums with three-operator (Davis-Yin) splitting.
    The two proximal steps are the complex soft-threshold and the
    hyperplane projection. Columns are independent: column `t` has Hessian
    `P^H diag(S_t) P + lambda1 P^H P + tau_b I` with `P = F(D_n) K_r`.

    Parameters:
        problem: The recovery problem.
        state: The incumbent, which is feasible.
        cfg: A resolved config.

    Returns:
        A feasible estimate, never worse than the incumbent `B_n` beyond `1e-8`.
    """

    lambda1 = cfg.lambda1
    lambda2 = _positive(cfg.lambda2, "lambda2", strict=False)
    n_l = problem.n_l

    basis = problem.forward(state.D) @ problem.kernel
    stacked = problem.by_line(basis)
    per_line = np.einsum("pfa,pfb->pab", stacked.conj(), stacked)
    gram = per_line.sum(axis=0)

    hessians = np.einsum("pt,pab->tab", problem.lines, per_line)
    hessians += (lambda1 * gram + cfg.tau_b * np.eye(n_l))[None]

    target = problem.forward(problem.temporal_inverse(state.Z))
    linear = basis.conj().T @ (problem.data + lambda1 * target) + cfg.tau_b * state.B

    top = float(np.linalg.eigvalsh(gram)[-1]) if n_l else 0.0
    step = 1 / ((1 + lambda1) * max(top, 0.0) + cfg.tau_b)

    def gradient(coefficients: NDArray) -> NDArray:
        return np.einsum("tab,bt->at", hessians, coefficients) - linear

    split = state.B.copy()
    feasible = project_columns_sum_one(split)
    iterations = 0

    for iterations in range(1, cfg.inner_max_iter + 1):
        feasible = project_columns_sum_one(split)
        reflected = 2 * feasible - split - step * gradient(feasible)
        sparse = soft_threshold(reflected, step * lambda2)
        split = split + sparse - feasible

        gap = np.linalg.norm(sparse - feasible)
        if gap <= cfg.inner_tol * max(float(np.linalg.norm(feasible)), 1e-300):
            break

    estimate = project_columns_sum_one(split)

    incumbent = b_objective(problem, state, cfg, state.B)
    if b_objective(problem, state, cfg, estimate) > incumbent + B_SLACK:
        LOGGER.debug("B subproblem did not improve, keeping incumbent", n=state.n)
        estimate = state.B

    return InnerResult(solution=estimate, iterations=iterations)


def update_z(problem: ReconProblem, state: ReconState, cfg: ReconConfig) -> NDArray:
    """
    The exact minimizer in `Z` of `T2 + T4`: the complex soft-threshold of
    `F_t(D_n K_r B_n)` at `lambda3 / lambda1`.

    Raises:
        ParameterError: If `lambda1` is zero.
    """

    if not cfg.lambda1 > 0:
        raise ParameterError(f"Expected lambda1 > 0 to update Z, got {cfg.lambda1}")

    lambda3 = _positive(cfg.lambda3, "lambda3", strict=False)
    spectrum = problem.temporal(state.reconstruction(problem.kernel))
    return soft_threshold(spectrum, lambda3 / cfg.lambda1)


def _fista(
    start: NDArray,
    gradient: Callable[[NDArray], NDArray],
    project: Callable[[NDArray], NDArray],
    lipschitz: float,
    cfg: ReconConfig,
) -> tuple[NDArray, int]:
    current = project(start)
    momentum = current
    t = 1.0
    iterations = 0

    for iterations in range(1, cfg.inner_max_iter + 1):
        following = project(momentum - gradient(momentum) / lipschitz)
        t_next = (1 + np.sqrt(1 + 4 * t**2)) / 2
        momentum = following + ((t - 1) / t_next) * (following - current)

        change = np.linalg.norm(following - current)
        scale = max(float(np.linalg.norm(current)), 1e-300)
        current, t = following, t_next

        if change <= cfg.inner_tol * scale:
            break

    return current, iterations


def _positive(value: float | None, name: str, strict: bool = True) -> float:
    if value is None or value < 0 or (strict and value == 0):
        raise ParameterError(f"Expected a resolved `{name}`, got {value}")

    return value
