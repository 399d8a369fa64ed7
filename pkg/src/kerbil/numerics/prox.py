"""
Proximal operators and projections used by the weight and the SCA solvers.
All functions broadcast over arrays and never modify their inputs.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from kerbil.common import DimensionError, ParameterError


def soft_threshold(value: ArrayLike, threshold: float) -> NDArray:
    """
    Complex soft-thresholding, the proximal operator of `threshold * |.|`.
    Computes `value * (1 - t / max(t, |value|))` entrywise.
    The magnitude shrinks to `max(|value| - t, 0)` and the phase is kept.

    Parameters:
        value: Scalar or array of complex values.
        threshold: The non-negative threshold `t`.

    Returns:
        The shrunk values, with the shape of `value`.

    Raises:
        ParameterError: If the threshold is negative.
    """

    if threshold < 0:
        raise ParameterError(f"Expected a non-negative threshold, got {threshold}")

    value = np.asarray(value, dtype=np.complex128)

    if threshold == 0:
        return value.copy()

    magnitude = np.abs(value)
    keep = magnitude > threshold
    scale = np.where(keep, 1 - threshold / np.where(keep, magnitude, 1), 0)
    return value * scale


def project_column_ball(column: ArrayLike, radius: float) -> NDArray:
    """
    Euclidean projection onto the ball `||x|| <= radius`.

    Raises:
        ParameterError: If the radius is not positive.
    """

    column = np.asarray(column, dtype=np.complex128)

    if column.ndim != 1:
        raise DimensionError(f"Expected a 1D column, got {column.ndim}D")

    return project_columns_ball(column[:, None], radius)[:, 0]


def project_columns_ball(matrix: ArrayLike, radius: float) -> NDArray:
    """
    Project every column of `matrix` onto the ball of the given radius.

    Parameters:
        matrix: Matrix of shape `[n, m]`.
        radius: The positive radius.

    Returns:
        The projected matrix.
    """

    if not radius > 0:
        raise ParameterError(f"Expected a positive radius, got {radius}")

    matrix = np.asarray(matrix, dtype=np.complex128)
    norms = np.linalg.norm(matrix, axis=0, keepdims=True)
    scale = np.minimum(1, radius / np.maximum(norms, np.finfo(float).tiny))
    return matrix * scale


def project_colsum_one(column: ArrayLike) -> NDArray:
    """
    Euclidean projection onto the hyperplane `1^T b = 1`.
    Computes `b - ((1^T b - 1) / n) * 1`.
    """

    column = np.asarray(column, dtype=np.complex128)

    if column.ndim != 1 or column.size == 0:
        raise DimensionError(f"Expected a non-empty 1D column, got {column.shape}")

    return project_columns_sum_one(column[:, None])[:, 0]


def project_columns_sum_one(matrix: ArrayLike) -> NDArray:
    """
    Project every column of `matrix` onto the hyperplane `1^T b = 1`.

    Parameters:
        matrix: Matrix of shape `[n, m]`, `n >= 1`.

    Returns:
        The projected matrix, whose columns sum to one.
    """

    matrix = np.asarray(matrix, dtype=np.complex128)

    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise DimensionError(f"Expected a matrix with rows, got {matrix.shape}")

    excess = (matrix.sum(axis=0, keepdims=True) - 1) / matrix.shape[0]
    return matrix - excess
