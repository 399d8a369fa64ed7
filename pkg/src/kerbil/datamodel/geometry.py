import dataclasses as dcls

from kerbil.common import ParameterError


@dcls.dataclass(frozen=True)
class Geometry:
    """
    The shape of a (k,t)-space acquisition.
    """

    n_p: int
    "Number of phase-encoding lines (rows of a frame)."

    n_f: int
    "Number of frequency-encoding samples (columns of a frame)."

    n_fr: int
    "Number of frames."

    def __post_init__(self) -> None:
        for name in ["n_p", "n_f", "n_fr"]:
            if (value := getattr(self, name)) < 1:
                raise ParameterError(f"Expected `{name}` to be positive, got {value}")

    @property
    def n_k(self) -> int:
        "Number of k-space samples per frame."

        return self.n_p * self.n_f

    @property
    def frame_shape(self) -> tuple[int, int]:
        return self.n_p, self.n_f

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.n_p, self.n_f, self.n_fr
