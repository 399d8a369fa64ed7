"""
The recovery objective, its block subproblems and their gradients.

    T1 = ||S(Y) - S F(D K_r B)||^2 / 2
    T2 = lambda1 * ||Z - F_t(D K_r B)||^2 / 2
    T3 = lambda2 * ||B||_1
    T4 = lambda3 * ||Z||_1

`||B||_1` is weighted by `lambda2` everywhere, including the `B` subproblem.
"""

import numpy as np
from numpy.typing import NDArray

from kerbil.common import DimensionError
from kerbil.numerics import l1

from .config import ReconConfig
from .problems import ReconProblem
from .state import ReconState


def objective(problem: ReconProblem, state: ReconState, cfg: ReconConfig) -> float:
    """
    `T1 + T2 + T3 + T4` at the state.

    Raises:
        DimensionError: If the state does not match the problem.
    """

    _check_shapes(problem, state)
    images = state.reconstruction(problem.kernel)

    fit = problem.data - problem.sample(problem.forward(images))
    temporal = state.Z - problem.temporal(images)

    return (
        _half_squared(fit)
        + _weight(cfg.lambda1) * _half_squared(temporal)
        + _weight(cfg.lambda2) * l1(state.B)
        + _weight(cfg.lambda3) * l1(state.Z)
    )


def d_objective(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig, D: NDArray
) -> float:
    """
    The smooth `D` subproblem at `D`, with `B` and `Z` fixed at the state.
    """

    images = D @ (problem.kernel @ state.B)
    fit = problem.data - problem.sample(problem.forward(images))
    temporal = state.Z - problem.temporal(images)

    return (
        _half_squared(fit)
        + cfg.tau_d * _half_squared(D - state.D)
        + _weight(cfg.lambda1) * _half_squared(temporal)
    )


def d_gradient(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig, D: NDArray
) -> NDArray:
    "Gradient of `d_objective` with respect to `D`, in the image domain."

    mixing = problem.kernel @ state.B
    images = D @ mixing

    fit = problem.inverse(problem.sample(problem.forward(images)) - problem.data)
    temporal = problem.temporal_inverse(problem.temporal(images) - state.Z)
    residual = fit + _weight(cfg.lambda1) * temporal

    return residual @ mixing.conj().T + cfg.tau_d * (D - state.D)


def b_smooth(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig, B: NDArray
) -> float:
    "The smooth part of the `B` subproblem, with `D` and `Z` fixed at the state."

    images = state.D @ (problem.kernel @ B)
    fit = problem.data - problem.sample(problem.forward(images))
    temporal = state.Z - problem.temporal(images)

    return (
        _half_squared(fit)
        + cfg.tau_b * _half_squared(B - state.B)
        + _weight(cfg.lambda1) * _half_squared(temporal)
    )


def b_objective(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig, B: NDArray
) -> float:
    "The `B` subproblem: `b_smooth + lambda2 * ||B||_1`."

    return b_smooth(problem, state, cfg, B) + _weight(cfg.lambda2) * l1(B)


def b_gradient(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig, B: NDArray
) -> NDArray:
    "Gradient of `b_smooth` with respect to `B`."

    basis = state.D @ problem.kernel
    images = basis @ B

    fit = problem.inverse(problem.sample(problem.forward(images)) - problem.data)
    temporal = problem.temporal_inverse(problem.temporal(images) - state.Z)
    residual = fit + _weight(cfg.lambda1) * temporal

    return basis.conj().T @ residual + cfg.tau_b * (B - state.B)


def _half_squared(matrix: NDArray) -> float:
    return float(np.vdot(matrix, matrix).real) / 2


def _weight(value: float | None) -> float:
    if value is None:
        raise ValueError("Expected a resolved config, call `ReconConfig.resolve`")

    return value


def _check_shapes(problem: ReconProblem, state: ReconState) -> None:
    n_k, n_fr = problem.data.shape

    expected = {
        "D": (n_k, problem.d),
        "B": (problem.n_l, n_fr),
        "Z": (n_k, n_fr),
    }

    for name, shape in expected.items():
        if (actual := getattr(state, name).shape) != shape:
            raise DimensionError(f"Expected `{name}` of shape {shape}, got {actual}")
