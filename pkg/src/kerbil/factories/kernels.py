from kerbil.kernels import Kernel, KernelKind, KernelSpec, build_kernel

from .common import correct_kwargs


@correct_kwargs
def kernel_spec(
    name: str | KernelKind = KernelKind.GAUSSIAN_MODULUS,
    /,
    *,
    gamma: float | None = None,
    c: float = 1.0,
    r: int = 2,
) -> KernelSpec:
    """
    Create a kernel spec from its name.

    Parameters:
        name: The kernel kind, case-insensitive.
        gamma: The Gaussian width. Resolved from the landmarks if `None`.
        c: The polynomial offset.
        r: The polynomial degree.

    Returns:
        The kernel configuration.

    Raises:
        ItemNotFound: If the name is unknown.
    """

    return KernelSpec(kind=KernelKind.lookup(name), gamma=gamma, c=c, r=r)


@correct_kwargs
def kernel(
    name: str | KernelKind = KernelKind.GAUSSIAN_MODULUS,
    /,
    *,
    gamma: float = 1.0,
    c: float = 1.0,
    r: int = 2,
) -> Kernel:
    """
    Create a kernel instance from its name.
    See `kernel_spec` for the parameters.
    """

    return build_kernel(kernel_spec(name, gamma=gamma, c=c, r=r))
