import dataclasses as dcls

import numpy as np
from numpy.typing import ArrayLike, NDArray

from kerbil.common import DimensionError, ValidationError


def as_complex(
    array: ArrayLike, /, *, ndim: int | None = None, name: str = "array"
) -> NDArray:
    """
    Converts the input to a finite complex128 array.

    Parameters:
        array: The input.
        ndim: The required number of dimensions, if any.
        name: Used in error messages.

    Returns:
        The complex array. Not a copy if the input is already complex128.

    Raises:
        DimensionError: If the array is empty or has the wrong number of dimensions.
        ValidationError: If the array contains NaN or Inf.
    """

    result = np.asarray(array, dtype=np.complex128)

    if ndim is not None and result.ndim != ndim:
        raise DimensionError(f"Expected `{name}` to be {ndim}D, got {result.ndim}D")

    if result.size == 0:
        raise DimensionError(f"Expected `{name}` to be non-empty, got {result.shape}")

    if not np.isfinite(result).all():
        raise ValidationError(f"Expected `{name}` to be finite")

    return result


def l1(array: ArrayLike, /) -> float:
    "Sum of complex moduli."

    return float(np.abs(array).sum())


@dcls.dataclass(frozen=True)
class ComplexCube:
    """
    A stack of `n_fr` complex frames of shape `[n_p, n_f]`.
    Stored as an immutable array of shape `[n_p, n_f, n_fr]`.
    """

    data: NDArray
    """
    The cube. Coerced to an immutable complex128 array.
    """

    def __post_init__(self) -> None:
        data = as_complex(self.data, ndim=3, name="cube").copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    def __len__(self) -> int:
        return self.n_fr

    def __getitem__(self, idx: int, /) -> NDArray:
        return self.data[:, :, idx]

    @property
    def n_p(self) -> int:
        "Number of phase-encoding lines."

        return self.data.shape[0]

    @property
    def n_f(self) -> int:
        "Number of frequency-encoding lines."

        return self.data.shape[1]

    @property
    def n_fr(self) -> int:
        "Number of frames."

        return self.data.shape[2]

