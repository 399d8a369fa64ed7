"""
Unitary discrete Fourier transforms.

Both the spatial and the temporal transforms use the `1 / sqrt(N)` convention,
so they are isometries and their inverses are their adjoints.
k-space produced with the unnormalized convention must be scaled by
`1 / sqrt(n_p * n_f)` before use.
No `fftshift` happens here. See `kerbil.datamodel` for the centered layout.
"""

from numpy.typing import ArrayLike, NDArray
from scipy import fft

from kerbil.common import DimensionError

from .arrays import as_complex


def dft2(frame: ArrayLike, /) -> NDArray:
    """
    Unitary 2D DFT over the two leading axes.
    Trailing axes (e.g. frames of a cube) are transformed independently.

    Parameters:
        frame: Array of shape `[n_p, n_f, ...]`.

    Returns:
        The transformed array, same shape.
    """

    return fft.fft2(_spatial(frame), axes=(0, 1), norm="ortho")


def idft2(frame: ArrayLike, /) -> NDArray:
    "Inverse of `dft2`."

    return fft.ifft2(_spatial(frame), axes=(0, 1), norm="ortho")


def dft_time(series: ArrayLike, /) -> NDArray:
    """
    Unitary 1D DFT of every row (the time profile of one pixel).

    Parameters:
        series: Matrix of shape `[n_k, n_fr]`.

    Returns:
        The transformed matrix, same shape.
    """

    return fft.fft(as_complex(series, ndim=2, name="series"), axis=1, norm="ortho")


def idft_time(series: ArrayLike, /) -> NDArray:
    "Inverse of `dft_time`."

    return fft.ifft(as_complex(series, ndim=2, name="series"), axis=1, norm="ortho")


def _spatial(frame: ArrayLike) -> NDArray:
    array = as_complex(frame, name="frame")

    if array.ndim < 2:
        raise DimensionError(f"Expected at least 2 dimensions, got {array.ndim}")

    return array
