from typing import NamedTuple

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from kerbil.common import DimensionError, ParameterError, ValidationError

from .arrays import as_complex

LOGGER = structlog.get_logger()

HERMITIAN_TOL = 1e-10
PHASE_TOL = 1e-12


class EigenPairs(NamedTuple):
    values: NDArray
    """
    Eigenvalues in ascending order. Shape `[d]`.
    """

    vectors: NDArray
    """
    Orthonormal eigenvectors as columns. Shape `[n, d]`.
    """


def check_hermitian(matrix: ArrayLike, /, name: str = "matrix") -> NDArray:
    """
    Validates that a matrix is square and Hermitian within `1e-10 * ||M||_F`.

    Returns:
        The matrix as a complex array.

    Raises:
        DimensionError: If the matrix is not square.
        ValidationError: If the matrix is not Hermitian.
    """

    matrix = as_complex(matrix, ndim=2, name=name)

    if matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Expected `{name}` to be square, got {matrix.shape}")

    scale = np.linalg.norm(matrix)
    if np.linalg.norm(matrix - matrix.conj().T) > HERMITIAN_TOL * scale:
        raise ValidationError(f"Expected `{name}` to be Hermitian")

    return matrix


def hermitian_smallest_eigpairs(matrix: ArrayLike, d: int) -> EigenPairs:
    """
    The `d` smallest eigenpairs of a Hermitian matrix, from a dense LAPACK solve.

    Ties keep the order of the LAPACK output. Each eigenvector is rotated so that
    its first entry of magnitude above `1e-12` is real and positive.

    Parameters:
        matrix: Hermitian matrix of shape `[n, n]`.
        d: Number of eigenpairs, `1 <= d <= n`.

    Returns:
        The eigenpairs, sorted by ascending eigenvalue.

    Raises:
        ValidationError: If the matrix is not Hermitian.
        ParameterError: If `d` is out of range.
    """

    matrix = check_hermitian(matrix)
    n = matrix.shape[0]

    if not 1 <= d <= n:
        raise ParameterError(f"Expected 1 <= d <= {n}, got {d}")

    # Symmetrize away the roundoff that passed the tolerance check.
    matrix = (matrix + matrix.conj().T) / 2
    values, vectors = linalg.eigh(matrix, driver="evd")

    vectors = vectors[:, :d]
    return EigenPairs(values=values[:d], vectors=_fix_phase(vectors))


def hermitian_smallest_eigvecs(matrix: ArrayLike, d: int) -> NDArray:
    """
    The eigenvectors of `hermitian_smallest_eigpairs`, as columns of an `[n, d]` matrix.
    """

    return hermitian_smallest_eigpairs(matrix, d).vectors


def spectral_norm_squared(matrix: ArrayLike, /, iterations: int = 50) -> float:
    """
    Estimates `||A||_2^2` by power iteration on `A^H A`
    from the all-ones start vector.

    Parameters:
        matrix: Any complex matrix.
        iterations: Number of power iterations.

    Returns:
        The Rayleigh quotient after the last iteration.
    """

    matrix = as_complex(matrix, ndim=2, name="matrix")
    vector = np.ones(matrix.shape[1], dtype=np.complex128)
    vector /= np.linalg.norm(vector)
    value = 0.0

    for _ in range(iterations):
        image = matrix.conj().T @ (matrix @ vector)
        value = float(np.vdot(vector, image).real)
        norm = np.linalg.norm(image)

        if norm == 0:
            LOGGER.debug("Power iteration hit the null space", value=value)
            break

        vector = image / norm

    return value


def _fix_phase(vectors: NDArray) -> NDArray:
    vectors = vectors.copy()

    for i in range(vectors.shape[1]):
        column = vectors[:, i]
        (nonzero,) = np.nonzero(np.abs(column) > PHASE_TOL)

        if not nonzero.size:
            continue

        pivot = column[nonzero[0]]
        vectors[:, i] = column * (np.abs(pivot) / pivot)

    return vectors
