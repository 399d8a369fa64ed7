import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from kerbil.common import DimensionError
from kerbil.kernels import KernelMatrix
from kerbil.numerics import as_complex

LOGGER = structlog.get_logger()

RIDGE = 1e-3


def affine_weights(
    kernel: KernelMatrix, cross: ArrayLike, ridge: float | None = None
) -> NDArray:
    """
    Affine feature-space coordinates of points on the landmarks.

    Column `j` solves `min ||phi(y_j) - Phi(L) b||^2 + mu ||b||^2` subject to
    `sum(b) = 1`, in closed form from `K` and `k_j = [kappa(l_i, y_j)]`.

    Parameters:
        kernel: The landmark kernel matrix `K`.
        cross: The `[n_l, m]` cross Gram matrix between landmarks and points.
        ridge: `mu`. Defaults to `1e-3 * trace(K) / n_l`.

    Returns:
        The `[n_l, m]` coordinates. Every column sums to 1.
    """

    gram = kernel.entries
    n_l = len(kernel)
    cross = as_complex(cross, ndim=2, name="cross")

    if cross.shape[0] != n_l:
        raise DimensionError(f"Expected {n_l} rows in cross, got {cross.shape[0]}")

    if ridge is None:
        ridge = RIDGE * max(float(np.trace(gram).real) / n_l, np.finfo(float).eps)

    regularized = gram + ridge * np.eye(n_l)
    ones = np.ones((n_l, 1))

    try:
        factor = linalg.cho_factor(regularized)
        solved = linalg.cho_solve(factor, np.hstack([cross, ones]))
    except linalg.LinAlgError:
        # Gaussian kernels on complex data need not be positive definite.
        LOGGER.warning("Kernel matrix is indefinite, using a Hermitian solve")
        solved = linalg.solve(regularized, np.hstack([cross, ones]), assume_a="her")

    coords, unit = solved[:, :-1], solved[:, -1:]
    # Lagrange multiplier of the affine constraint, one per column.
    multiplier = (1 - coords.sum(axis=0)) / unit.sum()
    return coords + unit * multiplier[None, :]
