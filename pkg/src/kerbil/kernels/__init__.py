from .functional import build_kernel, kernel_eval, kernel_matrix
from .gaussian import GaussianHolomorphicKernel, GaussianModulusKernel
from .interfaces import Kernel, KernelMatrix
from .polynomial import PolynomialKernel
from .specs import KernelKind, KernelSpec, median_heuristic
