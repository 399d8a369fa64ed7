import dataclasses as dcls
import sys

import alive_progress as ap
import numpy as np
import structlog
from numpy.typing import NDArray
from pandas import DataFrame
from scipy import linalg

from kerbil.acquisition import SamplingMask
from kerbil.datamodel import ImageSeries, KTDataset, NavigatorMatrix, extract_navigator
from kerbil.kernels import KernelSpec, build_kernel, kernel_matrix
from kerbil.landmarks import LandmarkSet, default_n_landmarks, select_landmarks_minmax
from kerbil.manifold import (
    ReducedKernel,
    WeightMatrix,
    WeightSolverConfig,
    affine_weights,
    compute_reduced_kernel,
    default_rank,
)
from kerbil.numerics import project_columns_ball, project_columns_sum_one

from . import columns
from .config import InitStrategy, ReconConfig
from .objectives import objective
from .problems import ReconProblem
from .state import ReconState
from .subproblems import solve_b_subproblem, solve_d_subproblem, update_z

LOGGER = structlog.get_logger()

FIT_RIDGE = 1e-8
FIT_SMOOTHING = 1e-3


@dcls.dataclass(frozen=True)
class ReconDiagnostics:
    """
    The history of a reconstruction. Traces are indexed by iteration,
    index 0 being the initial state.
    """

    objectives: list[float]
    gammas: list[float]
    changes: list[float]
    d_iterations: list[int]
    b_iterations: list[int]

    converged: bool
    "Whether the relative change fell below `outer_tol`."

    column_excess: float
    "Final excess of the largest `D` column over `c_d`."

    sum_residual: float
    "Final largest deviation of a `B` column sum from one."

    config: ReconConfig
    "The resolved config."

    landmarks: tuple[int, ...] = ()

    @property
    def iterations(self) -> int:
        return len(self.objectives) - 1

    def to_frame(self) -> DataFrame:
        return DataFrame(
            {
                columns.ITERATION: range(len(self.objectives)),
                columns.OBJECTIVE: self.objectives,
                columns.GAMMA: self.gammas,
                columns.CHANGE: [np.nan, *self.changes],
                columns.D_ITERATIONS: [0, *self.d_iterations],
                columns.B_ITERATIONS: [0, *self.b_iterations],
            }
        )


@dcls.dataclass(frozen=True)
class ReconResult:
    images: ImageSeries
    "The reconstruction `D K_r B`."

    state: ReconState
    diagnostics: ReconDiagnostics
    reduced: ReducedKernel
    weights: WeightMatrix | None = None
    landmarks: LandmarkSet | None = None


def gamma_next(gamma: float, zeta: float) -> float:
    "`gamma * (1 - zeta * gamma)`."

    return gamma * (1 - zeta * gamma)


def uniform_coefficients(n_l: int, n_fr: int) -> NDArray:
    return np.full((n_l, n_fr), 1 / n_l, dtype=np.complex128)


def navigator_coefficients(
    y_nav: NavigatorMatrix, landmarks: LandmarkSet, spec: KernelSpec
) -> NDArray:
    """
    Affine kernel coordinates of every navigator column on the landmarks,
    a feasible `[n_l, n_fr]` coefficient matrix.
    """

    kernel = build_kernel(spec.resolve(landmarks.matrix))
    gram = kernel.matrix(landmarks.matrix)
    cross = kernel.cross(landmarks.matrix, y_nav.entries)
    return affine_weights(gram, cross)


def initial_fit(problem: ReconProblem, coefficients: NDArray) -> NDArray:
    """
    The unconstrained least-squares dictionary for the zero-filled images:
    `X_zf M^H (M M^H + 1e-8 I)^-1` with `M = K_r B_0`.
    """

    zero_filled = problem.inverse(problem.data)
    mixing = problem.kernel @ coefficients
    gram = mixing @ mixing.conj().T + FIT_RIDGE * np.eye(problem.d)
    return linalg.solve(gram, mixing @ zero_filled.conj().T, assume_a="her").conj().T


def consistent_fit(
    problem: ReconProblem, coefficients: NDArray, smoothing: float = FIT_SMOOTHING
) -> NDArray:
    """
    The dictionary that best explains the acquired samples,
    minimizing `||S(Y) - S F(D M)||^2 + smoothing * ||D M C||^2` with `M = K_r B_0`
    and `C` removing the temporal mean of every pixel.

    The fit separates over phase lines: row `r` of `A = F(D)` solves
    `A_r Q_p = S(Y)_r M^H` with `Q_p = M diag(S_p) M^H + smoothing * M C M^H`.
    A line acquired in fewer frames than `d` is completed with the least
    temporal variation, so a line acquired once still carries its static content
    into every frame. A line never acquired stays zero.

    Parameters:
        problem: The recovery problem.
        coefficients: A feasible `B_0`.
        smoothing: Weight of the temporal variation, relative to one sample.

    Returns:
        The `[n_k, d]` image-domain dictionary.
    """

    mixing = problem.kernel @ coefficients
    centered = mixing - mixing.mean(axis=1, keepdims=True)
    prior = smoothing * (centered @ centered.conj().T) + FIT_RIDGE * np.eye(problem.d)

    curvature = np.einsum("it,pt,jt->pij", mixing, problem.lines, mixing.conj())
    curvature += prior[None]

    linear = problem.data @ mixing.conj().T
    rows = np.linalg.solve(
        curvature.transpose(0, 2, 1), problem.by_line(linear).transpose(0, 2, 1)
    )
    spectrum = rows.transpose(0, 2, 1).reshape(linear.shape, order="F")
    return problem.inverse(spectrum)


def fit_dictionary(
    problem: ReconProblem, cfg: ReconConfig, coefficients: NDArray
) -> NDArray:
    "`consistent_fit` for navigator initialization, `initial_fit` otherwise."

    if cfg.init is InitStrategy.NAVIGATOR:
        return consistent_fit(problem, coefficients)

    return initial_fit(problem, coefficients)



def resolve_c_d(dictionary: NDArray) -> float:
    "10 times the largest column norm of the fit, or 1 if the fit is zero."

    largest = float(np.linalg.norm(dictionary, axis=0).max())
    return 10 * largest if largest > 0 else 1.0


def init_state(
    problem: ReconProblem,
    cfg: ReconConfig,
    seed: int = 0,
    coefficients: NDArray | None = None,
) -> ReconState:
    """
    The deterministic starting point.

    `B_0` is uniform (perturbed by `init_jitter` if set) unless `coefficients`
    are given. `D_0` is `fit_dictionary`, the least-squares fit of the
    zero-filled images or, with navigator initialization, of the acquired samples.
    It is projected onto the `c_d` balls, and `Z_0 = F_t(D_0 K_r B_0)`.

    Parameters:
        problem: The recovery problem.
        cfg: The config. An unset `c_d` is resolved from the fit.
        seed: Seed of the jitter.
        coefficients: A feasible `B_0`.

    Returns:
        A feasible state with `gamma = gamma0`.
    """

    n_fr = problem.geometry.n_fr

    if coefficients is None:
        coefficients = uniform_coefficients(problem.n_l, n_fr)

        if cfg.init_jitter > 0:
            gen = np.random.Generator(np.random.Philox(key=seed))
            noise = gen.standard_normal(coefficients.shape)
            noise *= cfg.init_jitter / problem.n_l
            coefficients = coefficients + noise - noise.mean(axis=0, keepdims=True)

    coefficients = project_columns_sum_one(coefficients)

    fit = fit_dictionary(problem, cfg, coefficients)
    c_d = cfg.c_d if cfg.c_d is not None else resolve_c_d(fit)
    dictionary = project_columns_ball(fit, c_d)

    auxiliary = problem.temporal(dictionary @ (problem.kernel @ coefficients))
    return ReconState(D=dictionary, B=coefficients, Z=auxiliary, gamma=cfg.gamma0)


def sca_step(problem: ReconProblem, state: ReconState, cfg: ReconConfig) -> ReconState:
    """
    One successive convex approximation step.
    All three blocks are estimated from the same incumbent, then mixed in with
    weight `gamma_{n+1} = gamma_n (1 - zeta gamma_n)`.
    """

    return _step(problem, state, cfg)[0]


def _step(
    problem: ReconProblem, state: ReconState, cfg: ReconConfig
) -> tuple[ReconState, int, int]:
    gamma = gamma_next(state.gamma, cfg.zeta)

    d_hat = solve_d_subproblem(problem, state, cfg)
    b_hat = solve_b_subproblem(problem, state, cfg)
    z_hat = update_z(problem, state, cfg)

    following = ReconState(
        D=(1 - gamma) * state.D + gamma * d_hat.solution,
        B=(1 - gamma) * state.B + gamma * b_hat.solution,
        Z=(1 - gamma) * state.Z + gamma * z_hat,
        gamma=gamma,
        n=state.n + 1,
    )
    return following, d_hat.iterations, b_hat.iterations


def reconstruct(
    problem: ReconProblem,
    cfg: ReconConfig,
    seed: int = 0,
    coefficients: NDArray | None = None,
    progress: bool = False,
) -> tuple[ReconState, ReconDiagnostics]:
    """
    Run the outer loop from `init_state` until the relative change of
    `D K_r B` is at most `outer_tol`, or for `outer_max_iter` steps.

    Parameters:
        problem: The recovery problem.
        cfg: The config. Unset weights are resolved from the data.
        seed: Seed of the initialization jitter.
        coefficients: Optional feasible `B_0`.
        progress: Whether to show a progress bar on stderr.

    Returns:
        The final state and the diagnostics.

    Raises:
        ParameterError: If a weight, `c_d` or a proximal weight is not positive.
    """

    cfg = cfg.resolve(problem)

    if cfg.c_d is None:
        start = coefficients
        if start is None:
            start = uniform_coefficients(problem.n_l, problem.geometry.n_fr)

        fit = fit_dictionary(problem, cfg, project_columns_sum_one(start))
        cfg = dcls.replace(cfg, c_d=resolve_c_d(fit))

    cfg.check_runnable()
    assert cfg.c_d is not None

    state = init_state(problem, cfg, seed=seed, coefficients=coefficients)
    images = state.reconstruction(problem.kernel)

    objectives = [objective(problem, state, cfg)]
    gammas = [state.gamma]
    changes: list[float] = []
    d_counts: list[int] = []
    b_counts: list[int] = []
    converged = False

    LOGGER.info(
        "Starting reconstruction",
        lambda1=cfg.lambda1,
        lambda2=cfg.lambda2,
        lambda3=cfg.lambda3,
        c_d=cfg.c_d,
        objective=objectives[0],
    )

    steps = range(cfg.outer_max_iter)
    bar = ap.alive_it(
        steps, title="Reconstructing", file=sys.stderr, disable=not progress
    )

    for _ in bar:
        state, d_count, b_count = _step(problem, state, cfg)
        following = state.reconstruction(problem.kernel)

        scale = max(float(np.linalg.norm(images)), 1e-300)
        change = float(np.linalg.norm(following - images)) / scale
        images = following

        objectives.append(objective(problem, state, cfg))
        gammas.append(state.gamma)
        changes.append(change)
        d_counts.append(d_count)
        b_counts.append(b_count)

        LOGGER.debug(
            "SCA step", n=state.n, objective=objectives[-1], change=change
        )

        if change <= cfg.outer_tol:
            converged = True
            break

    diagnostics = ReconDiagnostics(
        objectives=objectives,
        gammas=gammas,
        changes=changes,
        d_iterations=d_counts,
        b_iterations=b_counts,
        converged=converged,
        column_excess=state.column_excess(cfg.c_d),
        sum_residual=state.sum_residual(),
        config=cfg,
    )

    LOGGER.info(
        "Finished reconstruction",
        iterations=diagnostics.iterations,
        converged=converged,
        objective=objectives[-1],
    )
    return state, diagnostics


def run_reconstruction(
    sampled: KTDataset,
    mask: SamplingMask,
    y_nav: NavigatorMatrix | None = None,
    cfg: ReconConfig = ReconConfig(),
    kernel_spec: KernelSpec = KernelSpec(),
    n_l: int | None = None,
    d: int | None = None,
    weights: WeightSolverConfig = WeightSolverConfig(),
    seed: int = 0,
    progress: bool = False,
) -> ReconResult:
    """
    The full pipeline: landmarks, kernel matrix, weights, reduced kernel,
    then the successive convex approximation. Recovers `D K_r B`.

    Parameters:
        sampled: The undersampled (k,t)-space data `S(Y)`.
        mask: The sampling mask.
        y_nav: The navigator matrix. Extracted from `sampled` with `mask.nu` lines
            if not given.
        cfg: The reconstruction config.
        kernel_spec: The kernel.
        n_l: Number of landmarks. Defaults to `min(50, ceil(n_fr / 3))`.
        d: Reduced dimension. Defaults to `ceil(n_l / 2)`.
        weights: Config of the weight solver.
        seed: Seed of the initialization jitter.
        progress: Whether to show a progress bar on stderr.

    Returns:
        The reconstruction with its intermediate models and diagnostics.
    """

    if y_nav is None:
        y_nav = extract_navigator(sampled, mask.nu)

    n_l = n_l or default_n_landmarks(sampled.geometry.n_fr)
    landmarks = select_landmarks_minmax(y_nav, n_l)

    gram = kernel_matrix(kernel_spec, landmarks.matrix)
    weight_matrix = weights.solve(gram)

    d = d or default_rank(n_l)
    reduced = compute_reduced_kernel(weight_matrix, d)

    problem = ReconProblem(sampled=sampled, mask=mask, reduced=reduced)

    coefficients = None
    if cfg.init is InitStrategy.NAVIGATOR:
        coefficients = navigator_coefficients(y_nav, landmarks, gram.spec)

    state, diagnostics = reconstruct(
        problem, cfg, seed=seed, coefficients=coefficients, progress=progress
    )
    diagnostics = dcls.replace(diagnostics, landmarks=landmarks.indices)

    images = ImageSeries.from_matrix(
        state.reconstruction(reduced.entries), sampled.geometry
    )
    return ReconResult(
        images=images,
        state=state,
        diagnostics=diagnostics,
        reduced=reduced,
        weights=weight_matrix,
        landmarks=landmarks,
    )
