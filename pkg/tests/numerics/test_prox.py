import numpy as np
import pytest
from numpy import testing

from kerbil import DimensionError, ParameterError
from kerbil import numerics as nm
from tests import utils


@pytest.mark.parametrize(
    "value, threshold, expected",
    [(1, 0.5, 0.5), (0.3, 0.5, 0), (3 + 4j, 0.5, 2.7 + 3.6j), (2j, 0, 2j)],
)
def test_soft_threshold(value: complex, threshold: float, expected: complex) -> None:
    assert np.isclose(nm.soft_threshold(value, threshold), expected)


def test_soft_threshold_magnitude() -> None:
    gen = utils.rng(10)
    values = utils.crandn(1000, seed=11) * 3
    thresholds = gen.uniform(0, 3, size=1000)

    for value, threshold in zip(values, thresholds):
        shrunk = nm.soft_threshold(value, threshold)
        assert np.isclose(abs(shrunk), max(abs(value) - threshold, 0), atol=1e-12)

        if shrunk != 0:
            assert np.isclose(np.angle(shrunk), np.angle(value))


def test_soft_threshold_matches_grid_prox() -> None:
    # prox of t|.| is the argmin of |z - a|^2 / 2 + t|z| over the complex plane.
    grid = np.linspace(-2, 2, 401)
    plane = grid[:, None] + 1j * grid[None, :]
    values = utils.crandn(20, seed=12)

    for value in values:
        merit = np.abs(plane - value) ** 2 / 2 + 0.4 * np.abs(plane)
        best = plane.flat[np.argmin(merit)]
        assert abs(nm.soft_threshold(value, 0.4) - best) <= 1e-2


def test_soft_threshold_negative() -> None:
    with pytest.raises(ParameterError):
        nm.soft_threshold(1, -0.1)


def test_project_column_ball() -> None:
    testing.assert_allclose(nm.project_column_ball([3, 4], 1), [0.6, 0.8])
    testing.assert_allclose(nm.project_column_ball([0.1, 0.2], 1), [0.1, 0.2])
    testing.assert_allclose(nm.project_column_ball([0, 0], 0.5), [0, 0])


def test_project_column_ball_radius() -> None:
    with pytest.raises(ParameterError):
        nm.project_column_ball([1, 2], 0)


def test_project_columns_ball_idempotent() -> None:
    matrix = utils.crandn(5, 7, seed=13) * 2
    once = nm.project_columns_ball(matrix, 1.5)

    assert (np.linalg.norm(once, axis=0) <= 1.5 + 1e-12).all()
    testing.assert_allclose(nm.project_columns_ball(once, 1.5), once, atol=1e-12)


def test_project_colsum_one() -> None:
    testing.assert_allclose(nm.project_colsum_one([2, 0]), [1.5, -0.5])
    testing.assert_allclose(nm.project_colsum_one([0.5, 0.5]), [0.5, 0.5])
    testing.assert_allclose(nm.project_colsum_one([7]), [1])

    with pytest.raises(DimensionError):
        nm.project_colsum_one([])


def test_project_columns_sum_one_is_projection() -> None:
    matrix = utils.crandn(4, 30, seed=14)
    projected = nm.project_columns_sum_one(matrix)

    testing.assert_allclose(projected.sum(axis=0), 1, atol=1e-12)
    again = nm.project_columns_sum_one(projected)
    testing.assert_allclose(again, projected, atol=1e-12)

    feasible = nm.project_columns_sum_one(utils.crandn(4, 30, seed=15))
    for j in range(matrix.shape[1]):
        nearest = np.linalg.norm(matrix[:, j] - projected[:, j])
        assert nearest <= np.linalg.norm(matrix[:, j] - feasible[:, j]) + 1e-12
