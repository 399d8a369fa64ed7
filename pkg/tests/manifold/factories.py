import numpy as np
from numpy.typing import NDArray

from kerbil import KernelMatrix, KernelSpec, WeightMatrix, kernel_matrix
from kerbil.manifold import project_weights, solve_weights
from tests import utils


@utils.cache
def collinear() -> KernelMatrix:
    return kernel_matrix(KernelSpec(kind="polynomial", c=0, r=1), [[1, 2, 3]])


@utils.cache
def real_landmarks(n_l: int = 6) -> NDArray:
    return utils.rng(60).standard_normal((4, n_l))


@utils.cache
def gaussian(n_l: int = 6) -> KernelMatrix:
    return kernel_matrix(KernelSpec(gamma=0.2), real_landmarks(n_l))


@utils.cache
def weights(n_l: int = 6) -> WeightMatrix:
    return solve_weights(gaussian(n_l), lambda_w=1e-3)


def random_feasible(n_l: int, seed: int) -> WeightMatrix:
    entries = project_weights(utils.crandn(n_l, n_l, seed=seed))
    return WeightMatrix(entries=entries, lambda_w=1.0)


def column_merit(kernel: NDArray, column: NDArray, j: int, lambda_w: float) -> float:
    return float(
        np.linalg.norm(kernel[:, j] - kernel @ column) ** 2
        + lambda_w * np.abs(column).sum()
    )
