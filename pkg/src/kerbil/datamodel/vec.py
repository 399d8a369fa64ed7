"""
The column-major vectorization convention.
A frame of shape `[n_p, n_f]` is stacked column below column into `n_p * n_f` entries,
and a cube becomes the `[n_k, n_fr]` matrix whose column `j` is frame `j`.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from kerbil.common import DimensionError
from kerbil.numerics import as_complex


def vectorize(frame: ArrayLike, /) -> NDArray:
    return as_complex(frame, ndim=2, name="frame").reshape(-1, order="F")


def devectorize(vector: ArrayLike, n_p: int, n_f: int) -> NDArray:
    """
    Inverse of `vectorize`.

    Raises:
        DimensionError: If the vector does not hold `n_p * n_f` entries.
    """

    vector = as_complex(vector, ndim=1, name="vector")

    if vector.size != n_p * n_f:
        raise DimensionError(
            f"Expected {n_p} * {n_f} = {n_p * n_f} entries, got {vector.size}"
        )

    return vector.reshape(n_p, n_f, order="F")


def cube_to_matrix(cube: ArrayLike, /) -> NDArray:
    "Vectorize every frame of a `[n_p, n_f, n_fr]` cube, giving `[n_k, n_fr]`."

    cube = np.asarray(cube)

    if cube.ndim != 3:
        raise DimensionError(f"Expected a 3D cube, got {cube.ndim}D")

    return cube.reshape(-1, cube.shape[2], order="F")


def matrix_to_cube(matrix: ArrayLike, n_p: int, n_f: int) -> NDArray:
    "Inverse of `cube_to_matrix`."

    matrix = np.asarray(matrix)

    if matrix.ndim != 2 or matrix.shape[0] != n_p * n_f:
        raise DimensionError(
            f"Expected a matrix with {n_p * n_f} rows, got shape {matrix.shape}"
        )

    return matrix.reshape(n_p, n_f, matrix.shape[1], order="F")
