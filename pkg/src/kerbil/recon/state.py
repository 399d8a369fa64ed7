import dataclasses as dcls

import numpy as np
from numpy.typing import NDArray

from kerbil.common import DimensionError


@dcls.dataclass(frozen=True)
class ReconState:
    """
    The iterates of the successive convex approximation.
    """

    D: NDArray
    "Image-domain dictionary, `[n_k, d]`. Columns bounded by `c_d`."

    B: NDArray
    "Landmark coefficients, `[n_l, n_fr]`. Columns sum to one."

    Z: NDArray
    "Auxiliary temporal spectrum, `[n_k, n_fr]`."

    gamma: float
    "The current step `gamma_n`."

    n: int = 0
    "The iteration counter."

    def __post_init__(self) -> None:
        n_k, n_fr = self.Z.shape

        if self.D.shape[0] != n_k or self.B.shape[1] != n_fr:
            raise DimensionError(
                f"Inconsistent shapes D={self.D.shape}, B={self.B.shape}, "
                f"Z={self.Z.shape}"
            )

    def reconstruction(self, kernel: NDArray) -> NDArray:
        "`D K_r B`, shape `[n_k, n_fr]`."

        return self.D @ (kernel @ self.B)

    def column_excess(self, c_d: float) -> float:
        "How far the largest column of `D` exceeds `c_d`. Zero if feasible."

        return max(float(np.linalg.norm(self.D, axis=0).max()) - c_d, 0.0)

    def sum_residual(self) -> float:
        "Largest deviation of a column sum of `B` from one."

        return float(np.abs(self.B.sum(axis=0) - 1).max())

    def is_feasible(self, c_d: float) -> bool:
        return self.column_excess(c_d) <= 1e-9 and self.sum_residual() <= 1e-6
