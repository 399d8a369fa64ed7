import dataclasses as dcls
import math

import numpy as np
import structlog
from numpy.typing import NDArray

from kerbil.common import ParameterError
from kerbil.datamodel import Geometry, ImageSeries

from . import rngs

LOGGER = structlog.get_logger()


@dcls.dataclass(frozen=True)
class PhantomSpec:
    """
    A periodic two-ellipse phantom.

    The static ellipse models the background anatomy.
    The dynamic ellipse inside it changes radius with the motion phase,
    so the series lives on a one-dimensional closed curve of states.
    """

    geometry: Geometry

    n_cycles: int = 2
    "Number of motion cycles over the series."

    n_phases: int | None = None
    """
    Number of distinct states per cycle.
    Defaults to `ceil(n_fr / n_cycles)`.
    """

    seed: int = 0

    background: float = 0.4
    "Intensity of the static ellipse, in `[0, 1]`."

    dynamic: float = 0.9
    "Intensity of the oscillating ellipse, in `[0, 1]`."

    motion: float = 0.3
    "Relative radius change of the oscillating ellipse."

    phase_amplitude: float = 0.5
    "Amplitude of the smooth spatial phase ramp, in radians."

    noise: float = 0.0
    "Standard deviation of the complex noise added to every phase."

    def __post_init__(self) -> None:
        if self.n_cycles < 1:
            raise ParameterError(f"Expected n_cycles >= 1, got {self.n_cycles}")

        if self.n_phases is not None and self.n_phases < 1:
            raise ParameterError(f"Expected n_phases >= 1, got {self.n_phases}")

        for name in ["background", "dynamic"]:
            if not 0 <= (value := getattr(self, name)) <= 1:
                raise ParameterError(f"Expected `{name}` in [0, 1], got {value}")

        if not 0 <= self.motion < 1:
            raise ParameterError(f"Expected motion in [0, 1), got {self.motion}")

        if self.noise < 0:
            raise ParameterError(f"Expected non-negative noise, got {self.noise}")

    @property
    def phases(self) -> int:
        "The resolved number of phases per cycle."

        if self.n_phases is not None:
            return self.n_phases

        return math.ceil(self.geometry.n_fr / self.n_cycles)


def generate_phantom(spec: PhantomSpec) -> ImageSeries:
    """
    Render the phantom. Frame `t` shows phase `t mod n_phases`,
    so frames `t` and `t + n_phases` are identical.

    Parameters:
        spec: The phantom description.

    Returns:
        A deterministic image series with magnitudes in `[0, 1]`.
    """

    geometry = spec.geometry
    phases = [_render_phase(spec, phase) for phase in range(spec.phases)]

    LOGGER.info(
        "Generating phantom",
        shape=geometry.shape,
        phases=spec.phases,
        seed=spec.seed,
    )

    frames = [phases[t % spec.phases] for t in range(geometry.n_fr)]
    return ImageSeries.from_array(np.stack(frames, axis=-1))


def _render_phase(spec: PhantomSpec, phase: int) -> NDArray:
    n_p, n_f = spec.geometry.frame_shape

    # Normalized coordinates in [-1, 1).
    y = (np.arange(n_p) - n_p / 2) / max(n_p / 2, 1)
    x = (np.arange(n_f) - n_f / 2) / max(n_f / 2, 1)
    yy, xx = np.meshgrid(y, x, indexing="ij")

    background = _ellipse(xx, yy, center=(0, 0), radii=(0.8, 0.65))

    scale = 1 + spec.motion * math.sin(2 * math.pi * phase / spec.phases)
    dynamic = _ellipse(xx, yy, center=(0.1, -0.05), radii=(0.3 * scale, 0.25 * scale))

    magnitude = spec.background * background
    magnitude = np.where(dynamic, spec.dynamic, magnitude)

    ramp = np.exp(1j * spec.phase_amplitude * (xx + yy) / 2)
    frame = magnitude * ramp

    if spec.noise > 0:
        gen = rngs.stream(spec.seed, phase)
        noise = gen.standard_normal((2, n_p, n_f)) * spec.noise / math.sqrt(2)
        frame = frame + noise[0] + 1j * noise[1]

    # Clip magnitudes to the unit disk, keeping the phase.
    modulus = np.abs(frame)
    return np.where(modulus > 1, frame / np.maximum(modulus, 1), frame)


def _ellipse(
    xx: NDArray, yy: NDArray, center: tuple[float, float], radii: tuple[float, float]
) -> NDArray:
    cx, cy = center
    rx, ry = radii
    return ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2 <= 1
