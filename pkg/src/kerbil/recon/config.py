import dataclasses as dcls
import math

from kerbil.common import ParameterError, StrEnum

from .problems import ReconProblem


class InitStrategy(StrEnum):
    """
    How the coefficients `B` and the dictionary `D` are initialized.
    """

    UNIFORM = "uniform"
    """
    Every coefficient `1 / n_l`, optionally perturbed by `init_jitter`.
    Unperturbed, this is a stationary point of the iteration:
    `K_r B` has rank one and both subproblems keep it so.
    """

    NAVIGATOR = "navigator"
    """
    Affine kernel coordinates of every navigator column on the landmarks.
    The dictionary then starts from the fit of the acquired samples
    rather than of the zero-filled images.
    """


@dcls.dataclass(frozen=True)
class ReconConfig:
    """
    Parameters of the reconstruction.
    Fields left as `None` depend on the data, see `resolve`.
    """

    lambda1: float = 0.5
    "Weight of the temporal consistency term `||Z - F_t(D K_r B)||^2 / 2`."

    lambda2: float | None = None
    "Weight of `||B||_1`. Defaults to `1e-3 * ||S(Y)||_F / sqrt(n_l * n_fr)`."

    lambda3: float | None = None
    "Weight of `||Z||_1`. Defaults to `1e-3 * ||S(Y)||_F / sqrt(n_k * n_fr)`."

    c_d: float | None = None
    "Column-norm cap of `D`. Defaults to 10 times the largest initial column norm."

    tau_d: float = 1e-2
    "Proximal weight of the `D` subproblem."

    tau_b: float = 1e-2
    "Proximal weight of the `B` subproblem."

    zeta: float = 0.5
    "Decay of the step sequence, in `(0, 1)`."

    gamma0: float = 1.0
    "Initial step, in `(0, 1]`."

    outer_max_iter: int = 300
    outer_tol: float = 1e-4
    inner_max_iter: int = 200
    inner_tol: float = 1e-5

    init: InitStrategy = InitStrategy.NAVIGATOR

    init_jitter: float = 0.0
    "Scale of the zero-sum perturbation added to a uniform `B`."

    def __post_init__(self) -> None:
        object.__setattr__(self, "init", InitStrategy.lookup(self.init))

        for name in ["lambda1", "lambda2", "lambda3", "tau_d", "tau_b", "init_jitter"]:
            value = getattr(self, name)

            if value is not None and not value >= 0:
                raise ParameterError(f"Expected `{name}` >= 0, got {value}")

        if self.c_d is not None and not self.c_d > 0:
            raise ParameterError(f"Expected `c_d` > 0, got {self.c_d}")

        if not 0 < self.zeta < 1:
            raise ParameterError(f"Expected `zeta` in (0, 1), got {self.zeta}")

        if not 0 < self.gamma0 <= 1:
            raise ParameterError(f"Expected `gamma0` in (0, 1], got {self.gamma0}")

        for name in ["outer_max_iter", "inner_max_iter"]:
            if (value := getattr(self, name)) < 1:
                raise ParameterError(f"Expected `{name}` >= 1, got {value}")

        for name in ["outer_tol", "inner_tol"]:
            if (value := getattr(self, name)) < 0:
                raise ParameterError(f"Expected `{name}` >= 0, got {value}")

    def resolve(self, problem: ReconProblem) -> "ReconConfig":
        """
        Fill in the sparsity weights from the scale of the data.
        `c_d` is left for `init_state`, which needs the initial fit.
        """

        scale = 1e-3 * problem.data_norm
        n_l, n_fr, n_k = problem.n_l, problem.geometry.n_fr, problem.geometry.n_k

        lambda2 = self.lambda2
        if lambda2 is None:
            lambda2 = scale / math.sqrt(n_l * n_fr)

        lambda3 = self.lambda3
        if lambda3 is None:
            lambda3 = scale / math.sqrt(n_k * n_fr)

        return dcls.replace(self, lambda2=lambda2, lambda3=lambda3)

    def check_runnable(self) -> None:
        """
        Raises:
            ParameterError: Unless every weight and cap is set and positive.
        """

        for name in ["lambda1", "lambda2", "lambda3", "c_d", "tau_d", "tau_b"]:
            value = getattr(self, name)

            if value is None or not value > 0:
                raise ParameterError(
                    f"Expected `{name}` > 0 to reconstruct, got {value}"
                )
