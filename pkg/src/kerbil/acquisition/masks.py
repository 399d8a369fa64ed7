import dataclasses as dcls
import math
from pathlib import Path

import numpy as np
import structlog
from numpy.typing import NDArray

from kerbil.common import DimensionError, ParameterError, ValidationError
from kerbil.datamodel import (
    Geometry,
    KTDataset,
    check_geometry,
    navigator_rows,
    read_mask,
    write_mask,
)

from . import rngs

LOGGER = structlog.get_logger()


@dcls.dataclass(frozen=True)
class SamplingMask:
    """
    The sampling operator `S`: which phase lines are acquired in which frame.
    Every acquired line covers all `n_f` frequency samples.
    """

    lines: NDArray
    "Binary `[n_p, n_fr]` matrix, 1 where the line is acquired."

    nu: int
    "Number of navigator lines, acquired in every frame."

    n_f: int | None = None
    "Frequency samples per line. Unknown for masks read from disk."

    def __post_init__(self) -> None:
        lines = np.asarray(self.lines)

        if lines.ndim != 2 or lines.size == 0:
            raise DimensionError(f"Expected a non-empty 2D mask, got {lines.shape}")

        if not np.isin(lines, [0, 1]).all():
            raise ValidationError("Expected mask entries to be 0 or 1")

        lines = lines.astype(np.int8)
        lines.setflags(write=False)
        object.__setattr__(self, "lines", lines)

        if self.nu:
            rows = navigator_rows(self.n_p, self.nu)

            if not lines[rows.start : rows.stop].all():
                raise ValidationError("Expected navigator lines in every frame")

        if self.n_f is not None and self.n_f < 1:
            raise ParameterError(f"Expected n_f >= 1, got {self.n_f}")

    @property
    def n_p(self) -> int:
        return self.lines.shape[0]

    @property
    def n_fr(self) -> int:
        return self.lines.shape[1]

    @property
    def acquired(self) -> int:
        "Number of acquired lines over all frames."

        return int(self.lines.sum())

    def geometry(self, n_f: int | None = None) -> Geometry:
        """
        The geometry of the data this mask applies to.

        Raises:
            DimensionError: If `n_f` is neither known nor given.
        """

        if (n_f := n_f or self.n_f) is None:
            raise DimensionError("Mask does not record n_f")

        return Geometry(self.n_p, n_f, self.n_fr)

    def with_n_f(self, n_f: int) -> "SamplingMask":
        return SamplingMask(lines=self.lines, nu=self.nu, n_f=n_f)

    @classmethod
    def full(cls, geometry: Geometry, nu: int = 0) -> "SamplingMask":
        lines = np.ones((geometry.n_p, geometry.n_fr), dtype=np.int8)
        return cls(lines=lines, nu=nu, n_f=geometry.n_f)

    @classmethod
    def empty(cls, geometry: Geometry) -> "SamplingMask":
        lines = np.zeros((geometry.n_p, geometry.n_fr), dtype=np.int8)
        return cls(lines=lines, nu=0, n_f=geometry.n_f)


def generate_cartesian_mask(
    geometry: Geometry, nu: int, target_rate: float, seed: int
) -> SamplingMask:
    """
    Per-frame random 1D Cartesian undersampling with a fully sampled navigator band.

    Each frame keeps the navigator lines plus
    `b = round(n_p / target_rate) - nu` other lines (half away from zero,
    clamped to `n_p - nu`), drawn without replacement from
    a Philox stream keyed by `seed ^ frame`.

    Parameters:
        geometry: The acquisition geometry.
        nu: Number of navigator lines, may be 0.
        target_rate: The acceleration rate to aim for, at least 1.
        seed: The random seed.

    Returns:
        The mask.

    Raises:
        ParameterError: If the navigator lines alone exceed the line budget,
            or if the rate is below 1.
    """

    if target_rate < 1:
        raise ParameterError(f"Expected target_rate >= 1, got {target_rate}")

    if not 0 <= nu <= geometry.n_p:
        raise ParameterError(f"Expected 0 <= nu <= {geometry.n_p}, got {nu}")

    budget = math.floor(geometry.n_p / target_rate + 0.5) - nu

    if budget < 0:
        raise ParameterError(
            f"Navigator lines ({nu}) exceed the budget of "
            f"{geometry.n_p / target_rate:.3g} lines per frame at rate {target_rate}"
        )

    if nu == 0 and budget == 0:
        raise ParameterError(f"Rate {target_rate} leaves no line to acquire")

    budget = min(budget, geometry.n_p - nu)

    lines = np.zeros((geometry.n_p, geometry.n_fr), dtype=np.int8)
    nav = navigator_rows(geometry.n_p, nu) if nu else range(0)
    lines[nav.start : nav.stop] = 1
    others = [p for p in range(geometry.n_p) if p not in nav]
    candidates = np.array(others, dtype=np.intp)

    for frame in range(geometry.n_fr):
        gen = rngs.stream(seed, frame)
        picked = gen.choice(candidates, size=budget, replace=False)
        lines[picked, frame] = 1

    mask = SamplingMask(lines=lines, nu=nu, n_f=geometry.n_f)
    LOGGER.info(
        "Generated mask",
        nu=nu,
        lines_per_frame=nu + budget,
        rate=acceleration_rate(mask),
        seed=seed,
    )
    return mask


def apply_sampling(mask: SamplingMask, data: KTDataset) -> KTDataset:
    """
    Zero every sample of the lines that are not acquired.

    Raises:
        DimensionError: If the mask does not match the data.
    """

    check_geometry(data.geometry, mask.geometry(data.geometry.n_f), name="mask")
    sampled = data.cube.data * mask.lines[:, None, :]
    return data.with_cube(sampled)


def sample_matrix(mask: SamplingMask, n_f: int) -> NDArray:
    """
    The mask as a `[n_k, n_fr]` 0/1 matrix matching the vectorized data.
    """

    expanded = np.broadcast_to(mask.lines[:, None, :], (mask.n_p, n_f, mask.n_fr))
    return expanded.reshape(-1, mask.n_fr, order="F").astype(np.float64)


def acceleration_rate(mask: SamplingMask) -> float:
    """
    `n_k * n_fr / acquired samples`. Every line has `n_f` samples,
    so this equals `n_p * n_fr / acquired lines`.

    Raises:
        ZeroDivisionError: If no line is acquired.
    """

    acquired = mask.acquired

    if not acquired:
        raise ZeroDivisionError("Mask acquires no sample")

    return mask.n_p * mask.n_fr / acquired


def save_mask(path: str | Path, mask: SamplingMask) -> None:
    write_mask(path, mask.lines, mask.nu)


def load_mask(path: str | Path, n_f: int | None = None) -> SamplingMask:
    """
    Read a mask file. The file does not record `n_f`, pass it when known.
    """

    stored = read_mask(path)
    return SamplingMask(lines=stored.lines, nu=stored.nu, n_f=n_f)
