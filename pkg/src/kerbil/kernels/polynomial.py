import numpy as np
from numpy.typing import NDArray

from .interfaces import Kernel
from .specs import KernelKind, KernelSpec


class PolynomialKernel(Kernel):
    "`(x^H y + c)^r` with a real offset `c`."

    def __init__(self, spec: KernelSpec) -> None:
        assert spec.kind is KernelKind.POLYNOMIAL, spec

        self.spec = spec

    def _cross(self, x: NDArray, y: NDArray, /) -> NDArray:
        return (x.conj().T @ y + self.spec.c) ** int(self.spec.r)
