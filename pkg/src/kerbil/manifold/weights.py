import dataclasses as dcls

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from kerbil.common import DimensionError, ParameterError, ValidationError
from kerbil.kernels import KernelMatrix
from kerbil.numerics import check_hermitian, l1, soft_threshold, spectral_norm_squared

LOGGER = structlog.get_logger()

MERIT_SLACK = 1e-10
MAX_HALVINGS = 30


@dcls.dataclass(frozen=True)
class WeightDiagnostics:
    iterations: int
    converged: bool
    "False if `max_iter` was reached or the step size collapsed."

    residual: float
    "`||K - KW||_F` at the returned iterate."

    lipschitz: float
    "The power-iteration estimate of `||K||_2^2`."

    halvings: int
    "Total number of backtracking step halvings."

    merits: tuple[float, ...] = ()
    "`||K - KW||_F^2 + lambda_w * ||W||_1` after every accepted iteration."


@dcls.dataclass(frozen=True)
class WeightMatrix:
    """
    Affine self-representation weights of the landmarks in feature space.
    Column `j` expresses landmark `j` as an affine combination of the others.
    """

    entries: NDArray
    "Shape `[n_l, n_l]` with a zero diagonal and unit column sums."

    lambda_w: float
    diagnostics: WeightDiagnostics | None = None

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.complex128)

        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError(
                f"Expected a square weight matrix, got {entries.shape}"
            )

        if not np.isfinite(entries).all():
            raise ValidationError("Expected finite weights")

        if np.any(entries.diagonal() != 0):
            raise ValidationError("Expected a zero diagonal")

        if np.abs(entries.sum(axis=0) - 1).max() > 1e-6:
            raise ValidationError("Expected every column to sum to 1")

        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return self.entries.shape[0]


@dcls.dataclass(frozen=True)
class WeightSolverConfig:
    lambda_w: float | None = None
    "Sparsity weight. Defaults to `0.1 * ||K||_F / n_l`."

    tol: float = 1e-6
    "Relative iterate change at which the solver stops."

    max_iter: int = 2000

    def __post_init__(self) -> None:
        if self.lambda_w is not None and not self.lambda_w > 0:
            raise ParameterError(f"Expected lambda_w > 0, got {self.lambda_w}")

        if self.tol < 0:
            raise ParameterError(f"Expected tol >= 0, got {self.tol}")

        if self.max_iter < 1:
            raise ParameterError(f"Expected max_iter >= 1, got {self.max_iter}")

    def solve(self, kernel: KernelMatrix | ArrayLike) -> WeightMatrix:
        return solve_weights(
            kernel, self.lambda_w, tol=self.tol, max_iter=self.max_iter
        )


def default_lambda_w(kernel: ArrayLike) -> float:
    kernel = np.asarray(kernel)
    return 0.1 * float(np.linalg.norm(kernel)) / kernel.shape[0]


def project_weights(weights: ArrayLike) -> NDArray:
    """
    Zero the diagonal, then shift the off-diagonal entries of every column
    so that they sum to one. Requires at least 2 rows.
    """

    weights = np.array(weights, dtype=np.complex128)
    n = weights.shape[0]
    off = ~np.eye(n, dtype=bool)

    np.fill_diagonal(weights, 0)
    excess = (weights.sum(axis=0) - 1) / (n - 1)
    weights -= np.where(off, excess[None, :], 0)
    return weights


def solve_weights(
    kernel: KernelMatrix | ArrayLike,
    lambda_w: float | None = None,
    tol: float = 1e-6,
    max_iter: int = 2000,
) -> WeightMatrix:
    """
    Sparse affine weights `W` minimizing `||K - KW||_F^2 + lambda_w * ||W||_1`
    subject to `diag(W) = 0` and unit column sums.

    Every iteration takes a gradient step on the quadratic, applies the complex
    soft-threshold, zeroes the diagonal and projects each column onto the unit-sum
    hyperplane, so every iterate is feasible. The step starts at `1 / ||K||_2^2` and is
    halved until the merit does not increase.

    Parameters:
        kernel: The Hermitian `[n_l, n_l]` kernel matrix, `n_l >= 2`.
        lambda_w: Sparsity weight, positive. Defaults to `0.1 * ||K||_F / n_l`.
        tol: Stop once `||W_new - W||_F <= tol * ||W||_F`.
        max_iter: Iteration cap.

    Returns:
        The weights and their solver diagnostics.

    Raises:
        ValidationError: If the kernel matrix is not Hermitian.
        ParameterError: If `lambda_w` is not positive, `max_iter` is below 1
            or there are fewer than 2 landmarks.
    """

    if isinstance(kernel, KernelMatrix):
        kernel = kernel.entries

    kernel = check_hermitian(kernel, name="K")
    n_l = kernel.shape[0]

    if n_l < 2:
        raise ParameterError(f"Expected at least 2 landmarks, got {n_l}")

    if lambda_w is None:
        lambda_w = default_lambda_w(kernel)

    if not lambda_w > 0:
        raise ParameterError(f"Expected lambda_w > 0, got {lambda_w}")

    if max_iter < 1:
        raise ParameterError(f"Expected max_iter >= 1, got {max_iter}")

    def merit(weights: NDArray) -> float:
        residual = kernel - kernel @ weights
        return float(np.linalg.norm(residual) ** 2) + lambda_w * l1(weights)

    lipschitz = spectral_norm_squared(kernel)
    step = 1 / lipschitz if lipschitz > 0 else 1.0

    weights = project_weights(np.zeros_like(kernel))
    current = merit(weights)
    merits: list[float] = []
    halvings = 0
    converged = False

    LOGGER.debug("Solving weights", n_l=n_l, lambda_w=lambda_w, lipschitz=lipschitz)

    for iteration in range(1, max_iter + 1):
        gradient = kernel @ (kernel @ weights - kernel)

        for _ in range(MAX_HALVINGS + 1):
            # The smooth part is half the merit, so the threshold is halved too.
            shrunk = soft_threshold(weights - step * gradient, step * lambda_w / 2)
            candidate = project_weights(shrunk)
            value = merit(candidate)

            if value <= current + MERIT_SLACK * max(1, current):
                break

            step /= 2
            halvings += 1
        else:
            LOGGER.warning("Weight solver step collapsed", iteration=iteration)
            break

        change = np.linalg.norm(candidate - weights)
        scale = max(float(np.linalg.norm(weights)), np.finfo(float).tiny)
        weights, current = candidate, value
        merits.append(current)

        if change <= tol * scale:
            converged = True
            break

    if not converged:
        LOGGER.warning("Weight solver did not converge", iterations=iteration)

    diagnostics = WeightDiagnostics(
        iterations=iteration,
        converged=converged,
        residual=float(np.linalg.norm(kernel - kernel @ weights)),
        lipschitz=lipschitz,
        halvings=halvings,
        merits=tuple(merits),
    )
    LOGGER.info(
        "Solved weights",
        iterations=iteration,
        converged=converged,
        residual=diagnostics.residual,
    )
    return WeightMatrix(entries=weights, lambda_w=lambda_w, diagnostics=diagnostics)
