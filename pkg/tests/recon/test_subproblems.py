import dataclasses as dcls
import functools
from collections.abc import Callable

import numpy as np
import pytest
from numpy import testing
from numpy.typing import NDArray

from kerbil import ParameterError, ReconConfig, ReconState
from kerbil.recon import (
    b_gradient,
    b_objective,
    d_gradient,
    d_objective,
    solve_b_subproblem,
    solve_d_subproblem,
    update_z,
)
from tests import utils

from . import factories


def scalar_state() -> ReconState:
    return ReconState(
        D=np.zeros((1, 1)), B=np.ones((1, 1)), Z=np.full((1, 1), 5 + 3j), gamma=1
    )


@pytest.mark.parametrize("c_d, expected", [(1.0, 1.0), (0.5, 0.5)])
def test_scalar_d(c_d: float, expected: float) -> None:
    cfg = ReconConfig(lambda1=0, lambda2=1, lambda3=1, c_d=c_d, tau_d=1)
    result = solve_d_subproblem(factories.scalar_problem(2), scalar_state(), cfg)
    assert result.solution[0, 0] == pytest.approx(expected)


def test_zero_d() -> None:
    problem = factories.symmetric_problem()
    state = ReconState(
        D=np.zeros((4, 1)), B=np.full((2, 1), 0.5), Z=np.zeros((4, 1)), gamma=1
    )
    cfg = ReconConfig(lambda1=0.5, lambda2=0.1, lambda3=0.1, c_d=1)

    testing.assert_array_equal(solve_d_subproblem(problem, state, cfg).solution, 0)


@pytest.mark.parametrize("centered", [False, True])
def test_d_feasible_and_no_worse(centered: bool) -> None:
    problem, state = factories.problem(centered), factories.state()
    cfg = dcls.replace(factories.config(), c_d=0.5)
    state = dcls.replace(state, D=state.D / np.linalg.norm(state.D, axis=0) * 0.5)
    solution = solve_d_subproblem(problem, state, cfg).solution

    assert np.linalg.norm(solution, axis=0).max() <= 0.5 + 1e-12
    before = d_objective(problem, state, cfg, state.D)
    assert d_objective(problem, state, cfg, solution) <= before


@pytest.mark.parametrize("centered", [False, True])
def test_d_stationary_without_cap(centered: bool) -> None:
    problem, state = factories.problem(centered), factories.state()
    cfg = dcls.replace(
        factories.config(), c_d=1e6, inner_tol=1e-13, inner_max_iter=5000
    )
    solution = solve_d_subproblem(problem, state, cfg).solution

    initial = np.linalg.norm(d_gradient(problem, state, cfg, state.D))
    assert np.linalg.norm(d_gradient(problem, state, cfg, solution)) <= 1e-6 * initial


def test_single_landmark_b() -> None:
    problem = factories.scalar_problem(3 - 1j)
    cfg = ReconConfig(lambda1=0.5, lambda2=1, lambda3=1, c_d=1)
    state = ReconState(D=np.ones((1, 1)), B=np.ones((1, 1)), Z=np.ones((1, 1)), gamma=1)

    testing.assert_allclose(solve_b_subproblem(problem, state, cfg).solution, [[1]])


def test_symmetric_b() -> None:
    problem = factories.symmetric_problem()
    cfg = ReconConfig(lambda1=0, lambda2=0.1, lambda3=0.1, c_d=1)
    state = ReconState(
        D=np.zeros((4, 1)), B=np.full((2, 1), 0.5), Z=np.zeros((4, 1)), gamma=1
    )

    solution = solve_b_subproblem(problem, state, cfg).solution
    testing.assert_allclose(solution, [[0.5], [0.5]], atol=1e-6)


@pytest.mark.parametrize("centered", [False, True])
def test_b_feasible_and_no_worse(centered: bool) -> None:
    problem, state = factories.problem(centered), factories.state()
    cfg = factories.config()
    solution = solve_b_subproblem(problem, state, cfg).solution

    testing.assert_allclose(solution.sum(axis=0), 1, atol=1e-8)
    before = b_objective(problem, state, cfg, state.B)
    assert b_objective(problem, state, cfg, solution) <= before + 1e-8


def test_b_stationary_without_sparsity() -> None:
    problem, state = factories.problem(), factories.state()
    cfg = dcls.replace(
        factories.config(), lambda2=0.0, inner_tol=1e-13, inner_max_iter=5000
    )
    solution = solve_b_subproblem(problem, state, cfg).solution
    gradient = b_gradient(problem, state, cfg, solution)
    initial = b_gradient(problem, state, cfg, state.B)

    # Optimal on the unit-sum hyperplane: every gradient column is constant.
    tangent = gradient - gradient.mean(axis=0, keepdims=True)
    assert np.linalg.norm(tangent) <= 1e-6 * np.linalg.norm(initial)


def test_b_local_oracle() -> None:
    problem, state = factories.problem(), factories.state()
    cfg = dcls.replace(factories.config(), inner_tol=1e-13, inner_max_iter=5000)
    solution = solve_b_subproblem(problem, state, cfg).solution
    best = b_objective(problem, state, cfg, solution)

    # The subproblem is convex: no feasible neighbour may do better.
    for seed in range(50):
        step = utils.crandn(*solution.shape, seed=300 + seed) * 1e-2
        step -= step.mean(axis=0, keepdims=True)
        assert best <= b_objective(problem, state, cfg, solution + step) + 1e-8


def test_update_z_rule() -> None:
    cfg = ReconConfig(lambda1=2, lambda2=1, lambda3=1, c_d=1)
    ones, zeros = np.ones((1, 1)), np.zeros((1, 1))
    state = ReconState(D=ones, B=ones, Z=zeros, gamma=1)

    assert update_z(factories.scalar_problem(), state, cfg)[0, 0] == pytest.approx(0.5)


def test_update_z_shrinks_all() -> None:
    problem, state = factories.problem(), factories.state()
    cfg = dcls.replace(factories.config(), lambda3=1e6)
    testing.assert_array_equal(update_z(problem, state, cfg), 0)


def test_update_z_grid_oracle() -> None:
    problem, state = factories.wide_problem(), factories.wide_state()
    cfg = dcls.replace(factories.config(), lambda1=0.8, lambda3=0.6)
    spectrum = problem.temporal(state.reconstruction(problem.kernel))
    updated = update_z(problem, state, cfg)

    assert spectrum.size == 1000
    assert 0 < np.count_nonzero(updated) < updated.size

    for a, z in zip(spectrum.ravel(), updated.ravel()):
        cost = functools.partial(
            _shrinkage_cost, entry=a, lambda1=cfg.lambda1, lambda3=cfg.lambda3
        )

        # The minimizer lies within lambda3 / lambda1 of the entry.
        coarse = _plane_minimum(cost, a, radius=1, points=201)
        fine = _plane_minimum(cost, coarse, radius=0.15, points=301)

        assert cost(z) <= cost(fine) + 1e-12
        assert cost(fine) <= cost(z) + 1e-3
        assert abs(z - fine) <= 5e-2


def _shrinkage_cost(
    plane: NDArray, entry: complex, lambda1: float, lambda3: float
) -> NDArray:
    return lambda1 / 2 * np.abs(plane - entry) ** 2 + lambda3 * np.abs(plane)


def _plane_minimum(
    cost: Callable[[NDArray], NDArray], center: complex, radius: float, points: int
) -> complex:
    grid = np.linspace(-radius, radius, points)
    plane = center + grid[:, None] + 1j * grid[None, :]
    return complex(plane.ravel()[cost(plane).argmin()])


def test_b_grid_oracle() -> None:
    problem, state = factories.small_problem(), factories.small_state()
    cfg = dcls.replace(
        factories.config(), tau_b=0.5, inner_tol=1e-13, inner_max_iter=5000
    )
    solution = solve_b_subproblem(problem, state, cfg).solution

    images = state.D @ problem.kernel
    spectra = problem.forward(images)
    targets = problem.temporal_inverse(state.Z)

    def column_cost(t: int) -> Callable[[NDArray], NDArray]:
        samples, data, target = problem.samples[:, t], problem.data[:, t], targets[:, t]

        def cost(candidates: NDArray) -> NDArray:
            return (
                _half_squares(samples * (data - candidates @ spectra.T))
                + cfg.lambda1 * _half_squares(target - candidates @ images.T)
                + cfg.tau_b * _half_squares(candidates - state.B[:, t])
                + cfg.lambda2 * np.abs(candidates).sum(axis=-1)
            )

        return cost

    # The subproblem separates over frames.
    total = sum(float(column_cost(t)(state.B[:, t])) for t in range(2))
    assert total == pytest.approx(b_objective(problem, state, cfg, state.B), rel=1e-10)

    for t in range(2):
        cost = column_cost(t)
        best = _hyperplane_minimum(cost, state.B[:, t])

        assert best.sum() == pytest.approx(1)
        assert cost(solution[:, t]) <= cost(best) + 1e-8
        assert np.abs(solution[:, t] - best).max() <= 1e-3


def _half_squares(rows: NDArray) -> NDArray:
    return (np.abs(rows) ** 2).sum(axis=-1) / 2


# Orthonormal basis of the zero-sum directions in C^3.
ZERO_SUM = np.array([[1, -1, 0], [1, 1, -2]]) / np.sqrt([[2], [6]])


def _hyperplane_minimum(
    cost: Callable[[NDArray], NDArray],
    center: NDArray,
    spacing: float = 0.5,
    half: int = 8,
    tol: float = 1e-7,
) -> NDArray:
    """
    Coarse-to-fine grid search over the unit-sum vectors of C^3, in the four
    real coordinates of the zero-sum directions around `center`.
    The grid only shrinks once its best point is interior.
    """

    axis = np.arange(-half, half + 1)
    steps = np.stack(np.meshgrid(axis, axis, axis, axis, indexing="ij"), axis=-1)
    steps = steps.reshape(-1, 4)

    for _ in range(200):
        offsets = spacing * steps
        candidates = center + (offsets[:, 0::2] + 1j * offsets[:, 1::2]) @ ZERO_SUM
        best = int(cost(candidates).argmin())
        center = candidates[best]

        if np.abs(steps[best]).max() < half:
            if spacing <= tol:
                break

            spacing /= 2

    return center



def test_update_z_needs_lambda1() -> None:
    cfg = ReconConfig(lambda1=0, lambda2=1, lambda3=1, c_d=1)

    with pytest.raises(ParameterError):
        update_z(factories.problem(), factories.state(), cfg)
