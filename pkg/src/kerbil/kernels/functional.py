from numpy.typing import ArrayLike

from .gaussian import GaussianHolomorphicKernel, GaussianModulusKernel
from .interfaces import Kernel, KernelMatrix
from .polynomial import PolynomialKernel
from .specs import KernelKind, KernelSpec


def build_kernel(spec: KernelSpec, /) -> Kernel:
    """
    The kernel implementation for a resolved spec.

    Parameters:
        spec: The kernel spec. Gaussian kinds need `gamma` set.

    Returns:
        The kernel.
    """

    match spec.kind:
        case KernelKind.GAUSSIAN_MODULUS:
            return GaussianModulusKernel(spec)
        case KernelKind.GAUSSIAN_HOLOMORPHIC:
            return GaussianHolomorphicKernel(spec)
        case KernelKind.POLYNOMIAL:
            return PolynomialKernel(spec)
        case _:
            raise ValueError(f"Unknown kernel kind: {spec.kind}")


def kernel_eval(spec: KernelSpec, x: ArrayLike, y: ArrayLike) -> complex:
    "`kappa(x, y)` for two vectors of equal length."

    return build_kernel(spec)(x, y)


def kernel_matrix(spec: KernelSpec, landmarks: ArrayLike) -> KernelMatrix:
    """
    The Gram matrix `K[i, j] = kappa(l_i, l_j)` of the landmark columns.
    An unresolved Gaussian width is resolved from the landmarks first.

    Parameters:
        spec: The kernel spec.
        landmarks: Matrix of shape `[dims, n_l]`, `n_l >= 2`.

    Returns:
        The Hermitian kernel matrix, carrying the resolved spec.
    """

    spec = spec.resolve(landmarks)
    return build_kernel(spec).matrix(landmarks)
