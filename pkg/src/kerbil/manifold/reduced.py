import dataclasses as dcls
import math

import numpy as np
from numpy.typing import NDArray

from kerbil.common import ParameterError, ValidationError
from kerbil.numerics import as_complex, hermitian_smallest_eigpairs

from .weights import WeightMatrix


@dcls.dataclass(frozen=True)
class ReducedKernel:
    """
    The compressed kernel: `d` orthonormal rows spanning the directions
    best preserved by the weights, `||K_r - K_r W||` minimal.
    """

    entries: NDArray
    "Shape `[d, n_l]` with orthonormal rows."

    eigenvalues: NDArray
    "The `d` smallest eigenvalues of `(I - W)(I - W)^H`, ascending."

    def __post_init__(self) -> None:
        entries = as_complex(self.entries, ndim=2, name="reduced kernel").copy()
        gram = entries @ entries.conj().T

        if np.linalg.norm(gram - np.eye(len(gram))) > 1e-8:
            raise ValidationError(
                "Expected the reduced kernel to have orthonormal rows"
            )

        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    @property
    def n_l(self) -> int:
        return self.entries.shape[1]


def default_rank(n_l: int) -> int:
    "`ceil(n_l / 2)`, at least 1."

    return max(1, math.ceil(n_l / 2))


def compute_reduced_kernel(weights: WeightMatrix, d: int) -> ReducedKernel:
    """
    The conjugate transpose of the `d` eigenvectors of `(I - W)(I - W)^H`
    with the smallest eigenvalues.

    Parameters:
        weights: The weight matrix.
        d: The reduced dimension, `1 <= d < n_l`.

    Returns:
        The reduced kernel, rows ordered by ascending eigenvalue.

    Raises:
        ParameterError: If `d` is out of range.
    """

    n_l = len(weights)

    if not 1 <= d < n_l:
        raise ParameterError(f"Expected 1 <= d < {n_l}, got {d}")

    complement = np.eye(n_l) - weights.entries
    gram = complement @ complement.conj().T
    pairs = hermitian_smallest_eigpairs(gram, d)
    return ReducedKernel(entries=pairs.vectors.conj().T, eigenvalues=pairs.values)
