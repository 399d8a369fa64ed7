"""
The pipeline configuration shared by every command.

Every field has a dotted key, used in config files, and a short alias,
used as a command-line flag. Values come from, in decreasing precedence,
command-line flags, the config file, then the defaults below.

Config files hold `key = value` lines. `#` starts a comment.
"""

import dataclasses as dcls
import typing
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import parse
import structlog
import typeguard
import yaml

from kerbil import factories
from kerbil.acquisition import PhantomSpec
from kerbil.common import ConfigError
from kerbil.datamodel import Geometry
from kerbil.kernels import KernelSpec
from kerbil.manifold import WeightSolverConfig
from kerbil.recon import ReconConfig

LOGGER = structlog.get_logger()

LINE = parse.compile("{key}={value}")


def _field(default: Any, key: str, alias: str | None = None) -> Any:
    return dcls.field(default=default, metadata={"key": key, "alias": alias})


@dcls.dataclass(frozen=True)
class PipelineConfig:
    n_p: int = _field(64, "geometry.np", "np")
    n_f: int = _field(64, "geometry.nf", "nf")
    n_fr: int = _field(48, "geometry.nfr", "nfr")

    seed: int = _field(7, "seed", "seed")
    "Seed of the phantom and the mask, unless set separately."

    cycles: int = _field(2, "phantom.cycles", "cycles")
    phases: int | None = _field(None, "phantom.phases", "phases")
    noise: float = _field(0.0, "phantom.noise", "noise")
    phantom_seed: int | None = _field(None, "phantom.seed")

    rate: float = _field(8.0, "mask.rate", "rate")
    nu: int = _field(4, "mask.nu", "nu")
    mask_seed: int | None = _field(None, "mask.seed")

    centered: bool = _field(True, "kspace.centered", "centered")
    "Whether k-space has DC at the center, making navigators the low frequencies."

    kernel: str = _field("gaussian_modulus", "kernel.kind", "kernel")
    gamma: float | None = _field(None, "kernel.gamma", "gamma")
    c: float = _field(1.0, "kernel.c")
    r: int = _field(2, "kernel.r")

    n_l: int | None = _field(None, "model.nl", "nl")
    d: int | None = _field(None, "model.d", "d")
    lambda_w: float | None = _field(None, "model.lambda_w", "lambda_w")
    weight_tol: float = _field(1e-6, "model.tol")
    weight_max_iter: int = _field(2000, "model.max_iter")

    lambda1: float = _field(0.5, "recon.lambda1", "lambda1")
    lambda2: float | None = _field(None, "recon.lambda2", "lambda2")
    lambda3: float | None = _field(None, "recon.lambda3", "lambda3")
    c_d: float | None = _field(None, "recon.c_d", "c_d")
    tau_d: float = _field(1e-2, "recon.tau_d", "tau_d")
    tau_b: float = _field(1e-2, "recon.tau_b", "tau_b")
    zeta: float = _field(0.5, "recon.zeta", "zeta")
    gamma0: float = _field(1.0, "recon.gamma0", "gamma0")
    outer_max_iter: int = _field(300, "recon.outer_max_iter", "outer_max_iter")
    outer_tol: float = _field(1e-4, "recon.outer_tol", "outer_tol")
    inner_max_iter: int = _field(200, "recon.inner_max_iter", "inner_max_iter")
    inner_tol: float = _field(1e-5, "recon.inner_tol", "inner_tol")
    init: str = _field("navigator", "recon.init", "init")
    init_jitter: float = _field(0.0, "recon.init_jitter", "init_jitter")

    assert_max_nrmse: float | None = _field(
        None, "eval.assert_max_nrmse", "assert_max_nrmse"
    )
    threads: int | None = _field(None, "threads", "threads")
    progress: bool = _field(False, "progress", "progress")

    def __post_init__(self) -> None:
        hints = typing.get_type_hints(type(self))

        for field in dcls.fields(self):
            value = getattr(self, field.name)

            try:
                typeguard.check_type(value, hints[field.name])
            except typeguard.TypeCheckError as e:
                raise ConfigError(
                    f"Bad value {value!r} for `{field.metadata['key']}`: {e}"
                ) from e

    @property
    def geometry(self) -> Geometry:
        return Geometry(self.n_p, self.n_f, self.n_fr)

    def phantom_spec(self) -> PhantomSpec:
        seed = self.seed if self.phantom_seed is None else self.phantom_seed
        return PhantomSpec(
            geometry=self.geometry,
            n_cycles=self.cycles,
            n_phases=self.phases,
            seed=seed,
            noise=self.noise,
        )

    @property
    def sampling_seed(self) -> int:
        return self.seed if self.mask_seed is None else self.mask_seed

    def kernel_spec(self) -> KernelSpec:
        return factories.kernel_spec(
            self.kernel, gamma=self.gamma, c=self.c, r=self.r
        )

    def weight_config(self) -> WeightSolverConfig:
        return WeightSolverConfig(
            lambda_w=self.lambda_w, tol=self.weight_tol, max_iter=self.weight_max_iter
        )

    def recon_config(self) -> ReconConfig:
        return ReconConfig(
            lambda1=self.lambda1,
            lambda2=self.lambda2,
            lambda3=self.lambda3,
            c_d=self.c_d,
            tau_d=self.tau_d,
            tau_b=self.tau_b,
            zeta=self.zeta,
            gamma0=self.gamma0,
            outer_max_iter=self.outer_max_iter,
            outer_tol=self.outer_tol,
            inner_max_iter=self.inner_max_iter,
            inner_tol=self.inner_tol,
            init=self.init,
            init_jitter=self.init_jitter,
        )

    def dumps(self) -> str:
        "The config as a re-loadable `key = value` file."

        lines = []
        for field in dcls.fields(self):
            key = field.metadata["key"]
            value = getattr(self, field.name)

            if value is None:
                lines.append(f"# {key} =")
            else:
                lines.append(f"{key} = {_format(value)}")

        return "\n".join(lines) + "\n"

    @classmethod
    def load(
        cls, path: str | Path | None = None, flags: Mapping[str, Any] | None = None
    ) -> "PipelineConfig":
        """
        Merge the defaults, the config file and the flags.

        Parameters:
            path: Optional config file.
            flags: Command-line flags, by alias, field name or dotted key.

        Returns:
            The validated config.

        Raises:
            ConfigError: On unknown keys, malformed lines or ill-typed values.
            OSError: If the config file cannot be read.
        """

        values: dict[str, Any] = {}

        if path is not None:
            values.update(parse_config(Path(path).read_text(), source=str(path)))

        for name, value in (flags or {}).items():
            values[_lookup(name, source="flags")] = _typed(value)

        LOGGER.debug("Loaded config", path=path, overrides=sorted(values))
        return cls(**values)


def parse_config(text: str, source: str = "<config>") -> dict[str, Any]:
    """
    Parse `key = value` lines into field values.

    Raises:
        ConfigError: On malformed lines or unknown keys.
    """

    values: dict[str, Any] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()

        if not line:
            continue

        if (result := LINE.parse(line)) is None:
            raise ConfigError(f"{source}:{number}: expected `key = value`, got {raw!r}")

        key = result["key"].strip()
        name = _lookup(key, source=f"{source}:{number}")
        values[name] = _typed(result["value"].strip())

    return values


def _keys() -> dict[str, str]:
    keys: dict[str, str] = {}

    for field in dcls.fields(PipelineConfig):
        keys[field.name] = field.name
        keys[field.metadata["key"]] = field.name

        if alias := field.metadata["alias"]:
            keys[alias] = field.name

    return keys


def _lookup(name: str, source: str) -> str:
    keys = _keys()
    normalized = name.strip().lstrip("-").replace("-", "_")

    if normalized not in keys:
        raise ConfigError(f"Unknown config key `{name}` in {source}")

    return keys[normalized]


def _typed(value: Any) -> Any:
    if not isinstance(value, str):
        return value

    loaded = yaml.safe_load(value) if value else None

    # YAML 1.1 reads `1e-3` as a string.
    if isinstance(loaded, str):
        try:
            return float(loaded)
        except ValueError:
            return loaded

    return loaded


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"

    return repr(value) if isinstance(value, float) else str(value)
