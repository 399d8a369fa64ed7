import numpy as np
from numpy.typing import NDArray

from kerbil.common import ParameterError

from .interfaces import Kernel
from .specs import KernelKind, KernelSpec


class _GaussianKernel(Kernel):
    def __init__(self, spec: KernelSpec) -> None:
        if spec.gamma is None:
            raise ParameterError("Expected a resolved gamma, call `KernelSpec.resolve`")

        self.spec = spec
        self._gamma = spec.gamma

    @staticmethod
    def _differences(x: NDArray, y: NDArray) -> NDArray:
        # Shape [dims, a, b]: x_i - conj(y_j).
        return x[:, :, None] - y.conj()[:, None, :]


class GaussianModulusKernel(_GaussianKernel):
    """
    `exp(-gamma * ||x - conj(y)||^2)`. Real and symmetric.
    The diagonal is `exp(-4 * gamma * ||Im x||^2)`.
    """

    def __init__(self, spec: KernelSpec) -> None:
        assert spec.kind is KernelKind.GAUSSIAN_MODULUS, spec
        super().__init__(spec)

    def _cross(self, x: NDArray, y: NDArray, /) -> NDArray:
        squared = (np.abs(self._differences(x, y)) ** 2).sum(axis=0)
        return np.exp(-self._gamma * squared).astype(np.complex128)


class GaussianHolomorphicKernel(_GaussianKernel):
    """
    `exp(-gamma * sum((x - conj(y))^2))`, the holomorphic extension
    of the real Gaussian kernel. Complex valued in general.
    """

    def __init__(self, spec: KernelSpec) -> None:
        assert spec.kind is KernelKind.GAUSSIAN_HOLOMORPHIC, spec
        super().__init__(spec)

    def _cross(self, x: NDArray, y: NDArray, /) -> NDArray:
        return np.exp(-self._gamma * (self._differences(x, y) ** 2).sum(axis=0))
