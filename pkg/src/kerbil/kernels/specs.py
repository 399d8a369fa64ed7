import dataclasses as dcls

import numpy as np
import structlog
from numpy.typing import ArrayLike
from scipy.spatial import distance

from kerbil.common import ParameterError, StrEnum
from kerbil.numerics import as_complex

LOGGER = structlog.get_logger()


class KernelKind(StrEnum):
    """
    The complex kernels available for the landmark Gram matrix.
    """

    GAUSSIAN_MODULUS = "gaussian_modulus"
    "`exp(-gamma * ||x - conj(y)||^2)`, real valued. See `GaussianModulusKernel`."

    GAUSSIAN_HOLOMORPHIC = "gaussian_holomorphic"
    "`exp(-gamma * sum((x - conj(y))^2))`, complex valued."

    POLYNOMIAL = "polynomial"
    "`(x^H y + c)^r`. Corresponds to `PolynomialKernel`."


@dcls.dataclass(frozen=True)
class KernelSpec:
    """
    Configuration of a complex kernel.
    Only the parameters of the selected kind are used.
    """

    kind: KernelKind = KernelKind.GAUSSIAN_MODULUS

    gamma: float | None = None
    """
    The Gaussian width. If `None`, resolved from the landmarks
    by the median heuristic, see `resolve`.
    """

    c: float = 1.0
    "The real, non-negative polynomial offset."

    r: int = 2
    "The positive polynomial degree."

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", KernelKind.lookup(self.kind))

        if self.gamma is not None and not self.gamma > 0:
            raise ParameterError(f"Expected gamma > 0, got {self.gamma}")

        if self.c < 0:
            raise ParameterError(f"Expected c >= 0, got {self.c}")

        if self.r < 1 or int(self.r) != self.r:
            raise ParameterError(f"Expected a positive integer r, got {self.r}")

    @property
    def gaussian(self) -> bool:
        return self.kind is not KernelKind.POLYNOMIAL

    @property
    def resolved(self) -> bool:
        return not self.gaussian or self.gamma is not None

    def resolve(self, landmarks: ArrayLike) -> "KernelSpec":
        """
        Fill in the Gaussian width with `1 / median` of the pairwise squared
        distances between landmark columns. Falls back to 1 if the median is 0
        or there are fewer than 2 landmarks.

        Parameters:
            landmarks: The landmark matrix, one landmark per column.

        Returns:
            A spec with every parameter set.
        """

        if self.resolved:
            return self

        return dcls.replace(self, gamma=median_heuristic(landmarks))


def median_heuristic(landmarks: ArrayLike) -> float:
    columns = as_complex(landmarks, ndim=2, name="landmarks").T

    if len(columns) < 2:
        return 1.0

    # Euclidean on stacked real and imaginary parts equals the complex 2-norm.
    stacked = np.concatenate([columns.real, columns.imag], axis=1)
    median = float(np.median(distance.pdist(stacked, metric="sqeuclidean")))

    if median <= 0:
        LOGGER.warning("Landmarks coincide, using gamma = 1")
        return 1.0

    return 1 / median
