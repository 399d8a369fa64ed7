import dataclasses as dcls
import math

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from kerbil.common import DimensionError, ParameterError
from kerbil.datamodel import NavigatorMatrix
from kerbil.numerics import as_complex

LOGGER = structlog.get_logger()


@dcls.dataclass(frozen=True)
class LandmarkSet:
    """
    Landmark columns of the navigator matrix.
    """

    indices: tuple[int, ...]
    "Strictly increasing column indices into the navigator matrix."

    matrix: NDArray
    "Shape `[nu * n_f, n_l]`. Column `k` is navigator column `indices[k]`."

    order: tuple[int, ...] = ()
    "The indices in the order they were picked. Empty if unknown."

    def __post_init__(self) -> None:
        matrix = as_complex(self.matrix, ndim=2, name="landmarks").copy()
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

        if list(self.indices) != sorted(set(self.indices)):
            raise ParameterError(
                f"Expected strictly increasing indices, got {self.indices}"
            )

        if len(self.indices) != matrix.shape[1]:
            raise DimensionError(
                f"Expected {len(self.indices)} landmark columns, got {matrix.shape[1]}"
            )

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def n_l(self) -> int:
        return len(self)


def default_n_landmarks(n_fr: int) -> int:
    "`min(50, ceil(n_fr / 3))`."

    return min(50, math.ceil(n_fr / 3))


def farthest_first(points: ArrayLike, k: int) -> list[int]:
    """
    Farthest-first traversal of the columns of `points`.

    The seed is the column of largest norm. Each next pick maximizes
    the distance to the nearest picked column. Ties go to the lowest index.

    Parameters:
        points: Matrix of shape `[dims, n]`.
        k: Number of columns to pick, `1 <= k <= n`.

    Returns:
        The picked column indices, in pick order.
    """

    points = as_complex(points, ndim=2, name="points")
    n = points.shape[1]

    if not 1 <= k <= n:
        raise ParameterError(f"Expected 1 <= n_l <= {n}, got {k}")

    # `np.argmax` returns the first maximum, which is the lowest index.
    picked = [int(np.argmax(np.linalg.norm(points, axis=0)))]
    nearest = np.full(n, np.inf)

    while len(picked) < k:
        latest = points[:, picked[-1]]
        nearest = np.minimum(nearest, np.linalg.norm(points - latest[:, None], axis=0))
        nearest[picked] = -np.inf
        picked.append(int(np.argmax(nearest)))

    return picked


def min_distances(points: ArrayLike, selected: list[int]) -> NDArray:
    "Distance from every column of `points` to its nearest selected column."

    points = as_complex(points, ndim=2, name="points")
    chosen = points[:, selected]
    diffs = points[:, :, None] - chosen[:, None, :]
    return np.linalg.norm(diffs, axis=0).min(axis=1)


def covering_radius(points: ArrayLike, selected: list[int]) -> float:
    "The largest distance from any column to the nearest selected column."

    return float(min_distances(points, selected).max())


def select_landmarks_minmax(y_nav: NavigatorMatrix, n_l: int) -> LandmarkSet:
    """
    Pick `n_l` landmark columns from the navigator matrix by min-max
    (farthest-first) selection.

    Parameters:
        y_nav: The navigator matrix.
        n_l: Number of landmarks, `1 <= n_l <= n_fr`.

    Returns:
        The landmarks, with sorted indices.

    Raises:
        ParameterError: If `n_l` is out of range.
    """

    order = farthest_first(y_nav.entries, n_l)
    indices = sorted(order)

    LOGGER.info(
        "Selected landmarks",
        n_l=n_l,
        covering_radius=covering_radius(y_nav.entries, order),
    )

    return LandmarkSet(
        indices=tuple(indices),
        matrix=y_nav.entries[:, indices],
        order=tuple(order),
    )
