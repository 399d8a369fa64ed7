import abc
import dataclasses as dcls
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray

from kerbil import common
from kerbil.common import DimensionError, ParameterError
from kerbil.numerics import as_complex, check_hermitian

from .specs import KernelSpec


@dcls.dataclass(frozen=True)
class KernelMatrix:
    """
    The Hermitian Gram matrix `K` of a set of landmarks.
    """

    entries: NDArray
    "Shape `[n_l, n_l]`, Hermitian with a real diagonal."

    spec: KernelSpec

    def __post_init__(self) -> None:
        entries = check_hermitian(self.entries, name="K").copy()

        if np.abs(entries.diagonal().imag).max() > 0:
            raise common.ValidationError("Expected the diagonal of K to be real")

        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return self.entries.shape[0]

    @property
    def n_l(self) -> int:
        return len(self)


class Kernel(Protocol):
    """
    A complex-valued positive definite kernel with `kernel(y, x) == conj(kernel(x, y))`.
    Points are complex vectors; batches are matrices with one point per column.
    """

    spec: KernelSpec

    def __repr__(self) -> str:
        name = common.remove_base_suffix(self, Kernel)
        return f"{name}({self.spec})"

    def __call__(self, x: ArrayLike, y: ArrayLike) -> complex:
        """
        Evaluate the kernel on two vectors.

        Raises:
            DimensionError: If the vectors differ in length.
        """

        x = as_complex(x, ndim=1, name="x")
        y = as_complex(y, ndim=1, name="y")
        return complex(self.cross(x[:, None], y[:, None])[0, 0])

    def cross(self, x: ArrayLike, y: ArrayLike) -> NDArray:
        """
        The cross Gram matrix.

        Parameters:
            x: Matrix of shape `[dims, a]`.
            y: Matrix of shape `[dims, b]`.

        Returns:
            Matrix of shape `[a, b]` with entry `(i, j) = kernel(x_i, y_j)`.
        """

        x = as_complex(x, ndim=2, name="x")
        y = as_complex(y, ndim=2, name="y")

        if x.shape[0] != y.shape[0]:
            raise DimensionError(
                f"Expected points of equal length, got {x.shape[0]} and {y.shape[0]}"
            )

        return self._cross(x, y)

    def matrix(self, landmarks: ArrayLike) -> KernelMatrix:
        """
        The Gram matrix of the landmark columns.
        The upper triangle is evaluated and mirrored,
        so the result is exactly Hermitian.

        Raises:
            ParameterError: If there are fewer than 2 landmarks.
        """

        landmarks = as_complex(landmarks, ndim=2, name="landmarks")

        if (n_l := landmarks.shape[1]) < 2:
            raise ParameterError(f"Expected at least 2 landmarks, got {n_l}")

        gram = self._cross(landmarks, landmarks)
        upper = np.triu(gram, k=1)
        entries = upper + upper.conj().T + np.diag(gram.diagonal().real)
        return KernelMatrix(entries=entries, spec=self.spec)

    @abc.abstractmethod
    def _cross(self, x: NDArray, y: NDArray, /) -> NDArray: ...
