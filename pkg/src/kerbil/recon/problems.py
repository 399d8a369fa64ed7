import dataclasses as dcls
import functools

import numpy as np
from numpy.typing import ArrayLike, NDArray

from kerbil.acquisition import SamplingMask, sample_matrix
from kerbil.common import DimensionError
from kerbil.datamodel import (
    Geometry,
    KTDataset,
    center_kspace,
    cube_to_matrix,
    matrix_to_cube,
    uncenter_kspace,
)
from kerbil.manifold import ReducedKernel
from kerbil.numerics import as_complex, dft2, dft_time, idft2, idft_time


@dcls.dataclass(frozen=True)
class ReconProblem:
    """
    The fixed inputs of the bi-linear recovery:
    the undersampled data `S(Y)`, the mask `S` and the reduced kernel `K_r`.

    Image-domain quantities are `[n_k, m]` matrices of vectorized frames.
    `forward` maps them to k-space in the layout of the data.
    """

    sampled: KTDataset
    mask: SamplingMask
    reduced: ReducedKernel

    def __post_init__(self) -> None:
        geometry = self.sampled.geometry
        object.__setattr__(self, "mask", self.mask.with_n_f(geometry.n_f))

        if self.mask.geometry() != geometry:
            raise DimensionError(
                f"Expected a mask for geometry {geometry}, got {self.mask.geometry()}"
            )

    @property
    def geometry(self) -> Geometry:
        return self.sampled.geometry

    @property
    def n_l(self) -> int:
        return self.reduced.n_l

    @property
    def d(self) -> int:
        return self.reduced.d

    @functools.cached_property
    def data(self) -> NDArray:
        "`S(Y)` as a `[n_k, n_fr]` matrix. Zero off the acquired lines."

        return cube_to_matrix(self.sampled.cube.data) * self.samples

    @property
    def lines(self) -> NDArray:
        "The `[n_p, n_fr]` line mask as floats."

        return self.mask.lines.astype(np.float64)

    @functools.cached_property
    def samples(self) -> NDArray:
        "The `[n_k, n_fr]` 0/1 sample matrix."

        return sample_matrix(self.mask, self.geometry.n_f)

    @property
    def data_norm(self) -> float:
        return float(np.linalg.norm(self.data))

    @property
    def kernel(self) -> NDArray:
        "`K_r`, shape `[d, n_l]`."

        return self.reduced.entries

    def forward(self, images: ArrayLike) -> NDArray:
        "`F`: frame-wise unitary DFT of `[n_k, m]` image columns."

        n_p, n_f = self.geometry.frame_shape
        cube = dft2(matrix_to_cube(as_complex(images, ndim=2), n_p, n_f))

        if self.sampled.centered:
            cube = center_kspace(cube)

        return cube_to_matrix(cube)

    def inverse(self, spectrum: ArrayLike) -> NDArray:
        "`F^-1`, the adjoint of `forward`."

        n_p, n_f = self.geometry.frame_shape
        cube = matrix_to_cube(as_complex(spectrum, ndim=2), n_p, n_f)

        if self.sampled.centered:
            cube = uncenter_kspace(cube)

        return cube_to_matrix(idft2(cube))

    def sample(self, spectrum: ArrayLike) -> NDArray:
        "`S` on a `[n_k, n_fr]` k-space matrix."

        return np.asarray(spectrum) * self.samples

    @staticmethod
    def temporal(series: ArrayLike) -> NDArray:
        "`F_t`: unitary DFT of every pixel's time profile."

        return dft_time(series)

    @staticmethod
    def temporal_inverse(series: ArrayLike) -> NDArray:
        return idft_time(series)

    def by_line(self, matrix: NDArray) -> NDArray:
        "View `[n_k, m]` as `[n_p, n_f, m]` (rows grouped by phase line)."

        n_p, n_f = self.geometry.frame_shape
        return matrix.reshape(n_p, n_f, -1, order="F")
