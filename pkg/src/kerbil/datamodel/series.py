import dataclasses as dcls

import numpy as np
from numpy.typing import ArrayLike, NDArray

from kerbil.common import DimensionError, ParameterError
from kerbil.numerics import ComplexCube, as_complex, dft2, idft2

from .geometry import Geometry
from .vec import cube_to_matrix, matrix_to_cube


@dcls.dataclass(frozen=True)
class ImageSeries:
    """
    A dynamic image series in the image domain.
    """

    cube: ComplexCube

    @property
    def geometry(self) -> Geometry:
        return Geometry(*self.cube.data.shape)

    @property
    def matrix(self) -> NDArray:
        "The `[n_k, n_fr]` matrix of vectorized frames."

        return cube_to_matrix(self.cube.data)

    @classmethod
    def from_array(cls, array: ArrayLike) -> "ImageSeries":
        return cls(ComplexCube(np.asarray(array)))

    @classmethod
    def from_matrix(cls, matrix: ArrayLike, geometry: Geometry) -> "ImageSeries":
        return cls.from_array(matrix_to_cube(matrix, geometry.n_p, geometry.n_f))


@dcls.dataclass(frozen=True)
class KTDataset:
    """
    A (k,t)-space measurement cube.

    When `centered` is set, the DC sample of every frame sits at row `n_p // 2`
    and column `n_f // 2`, so the low frequencies occupy the central rows.
    Otherwise DC sits at index `(0, 0)`.
    """

    cube: ComplexCube
    centered: bool = False

    @property
    def geometry(self) -> Geometry:
        return Geometry(*self.cube.data.shape)

    @property
    def n_k(self) -> int:
        return self.geometry.n_k

    @property
    def matrix(self) -> NDArray:
        """
        The `[n_k, n_fr]` matrix whose column `j` is the vectorized frame `j`.
        """

        return cube_to_matrix(self.cube.data)

    def with_cube(self, cube: ArrayLike) -> "KTDataset":
        "A dataset with the same layout and new samples."

        return KTDataset(ComplexCube(np.asarray(cube)), centered=self.centered)

    @classmethod
    def from_array(cls, array: ArrayLike, centered: bool = False) -> "KTDataset":
        return cls(ComplexCube(np.asarray(array)), centered=centered)

    @classmethod
    def from_matrix(
        cls, matrix: ArrayLike, geometry: Geometry, centered: bool = False
    ) -> "KTDataset":
        return cls.from_array(
            matrix_to_cube(matrix, geometry.n_p, geometry.n_f), centered=centered
        )


@dcls.dataclass(frozen=True)
class NavigatorMatrix:
    """
    The vectorized navigator block: the `nu` central phase lines of every frame.
    """

    nu: int
    entries: NDArray
    "Shape `[nu * n_f, n_fr]`. Column j is the `[nu, n_f]` block of frame j."

    rows: tuple[int, ...]
    "The phase-line indices the block was taken from."

    def __post_init__(self) -> None:
        entries = as_complex(self.entries, ndim=2, name="entries").copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

        if len(self.rows) != self.nu:
            raise DimensionError(f"Expected {self.nu} rows, got {len(self.rows)}")

        if entries.shape[0] % self.nu:
            raise DimensionError(
                f"Expected a multiple of {self.nu} rows in entries, "
                f"got {entries.shape[0]}"
            )

    @property
    def n_fr(self) -> int:
        return self.entries.shape[1]

    def __len__(self) -> int:
        return self.n_fr


def navigator_rows(n_p: int, nu: int) -> range:
    """
    The contiguous navigator phase lines, starting at `(n_p - nu) // 2`.

    Raises:
        ParameterError: If `nu` is not in `[1, n_p]`.
    """

    if not 1 <= nu <= n_p:
        raise ParameterError(f"Expected 1 <= nu <= {n_p}, got {nu}")

    start = (n_p - nu) // 2
    return range(start, start + nu)


def extract_navigator(data: KTDataset, nu: int) -> NavigatorMatrix:
    """
    Extract the navigator block of every frame.

    The rows follow `navigator_rows`, which assumes the centered layout.
    With the un-centered layout they are still the geometric middle rows of the array.

    Parameters:
        data: The (k,t)-space data.
        nu: The number of navigator phase lines.

    Returns:
        The `[nu * n_f, n_fr]` navigator matrix.
    """

    geometry = data.geometry
    rows = navigator_rows(geometry.n_p, nu)
    block = data.cube.data[rows.start : rows.stop]
    entries = block.reshape(nu * geometry.n_f, geometry.n_fr, order="F")
    return NavigatorMatrix(nu=nu, entries=entries, rows=tuple(rows))


def center_kspace(cube: ArrayLike, /) -> NDArray:
    "Move DC from `(0, 0)` to `(n_p // 2, n_f // 2)` of every frame."

    return np.fft.fftshift(np.asarray(cube), axes=(0, 1))


def uncenter_kspace(cube: ArrayLike, /) -> NDArray:
    "Inverse of `center_kspace`."

    return np.fft.ifftshift(np.asarray(cube), axes=(0, 1))


def to_kspace(images: ImageSeries, centered: bool = False) -> KTDataset:
    """
    Frame-wise unitary 2D DFT.

    Parameters:
        images: The image series.
        centered: Whether to store the result in the centered layout.

    Returns:
        The (k,t)-space data.
    """

    spectrum = dft2(images.cube.data)

    if centered:
        spectrum = center_kspace(spectrum)

    return KTDataset.from_array(spectrum, centered=centered)


def to_image(data: KTDataset) -> ImageSeries:
    "Frame-wise inverse of `to_kspace`, honoring the layout of the data."

    spectrum = data.cube.data

    if data.centered:
        spectrum = uncenter_kspace(spectrum)

    return ImageSeries.from_array(idft2(spectrum))


def check_geometry(expected: Geometry, actual: Geometry, /, name: str = "data") -> None:
    if expected != actual:
        raise DimensionError(
            f"Expected `{name}` with geometry {expected}, got {actual}"
        )
