import dataclasses as dcls
from pathlib import Path
from typing import TextIO

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from pandas import DataFrame

from kerbil.common import DimensionError
from kerbil.datamodel import ImageSeries, KTDataset, to_image

LOGGER = structlog.get_logger()

FRAME = "frame"
NRMSE = "nrmse"


@dcls.dataclass(frozen=True)
class EvalReport:
    """
    Global and per-frame NRMSE of an estimate against a reference series.
    """

    global_nrmse: float
    "`||X - X_hat||_F / ||X||_F` over the whole series."

    framewise: list[tuple[int, float]]
    "`(frame, nrmse)` for every frame with a non-zero reference."

    mean: float
    "Mean of the frame-wise values."

    std: float
    "Population standard deviation of the frame-wise values."

    flagged: list[int] = dcls.field(default_factory=list)
    "Frames whose reference is zero. Excluded from the aggregates."

    def to_frame(self) -> DataFrame:
        "One row per frame. Flagged frames have a NaN value."

        values = dict(self.framewise)
        frames = sorted([*values, *self.flagged])
        return DataFrame(
            {FRAME: frames, NRMSE: [values.get(j, np.nan) for j in frames]}
        )

    def write_csv(self, out: str | Path | TextIO) -> None:
        """
        Write the header `frame,nrmse`, one row per frame,
        then the trailing line `# mean=<v> std=<v>`.
        """

        text = self.to_frame().to_csv(
            index=False, float_format="%.12g", na_rep="nan", lineterminator="\n"
        )
        text += f"# mean={self.mean:.12g} std={self.std:.12g}\n"

        if isinstance(out, (str, Path)):
            Path(out).write_text(text)
        else:
            out.write(text)


def nrmse(reference: ImageSeries, estimate: ImageSeries) -> float:
    """
    `||X - X_hat||_F / ||X||_F`.

    Raises:
        DimensionError: If the geometries differ.
        ZeroDivisionError: If the reference is zero.
    """

    ref, est = _pair(reference, estimate)
    return _ratio(ref, est)


def framewise_nrmse(reference: ImageSeries, estimate: ImageSeries) -> EvalReport:
    """
    NRMSE of every frame, normalized by that frame of the reference.
    Frames with a zero reference are flagged instead.

    Parameters:
        reference: The ground truth `X`.
        estimate: The estimate `X_hat`.

    Returns:
        The report.
    """

    ref, est = _pair(reference, estimate)
    framewise: list[tuple[int, float]] = []
    flagged: list[int] = []

    for j in range(ref.shape[2]):
        try:
            framewise.append((j, _ratio(ref[:, :, j], est[:, :, j])))
        except ZeroDivisionError:
            flagged.append(j)

    if flagged:
        LOGGER.warning("Frames with a zero reference", frames=flagged)

    values = np.array([value for _, value in framewise])
    mean = float(values.mean()) if values.size else float("nan")
    std = float(values.std()) if values.size else float("nan")

    return EvalReport(
        global_nrmse=_ratio(ref, est),
        framewise=framewise,
        mean=mean,
        std=std,
        flagged=flagged,
    )


def error_map(reference_frame: ArrayLike, estimate_frame: ArrayLike) -> NDArray:
    """
    Pixel-wise `|X - X_hat|` of one frame.

    Raises:
        DimensionError: If the shapes differ.
    """

    ref = np.asarray(reference_frame)
    est = np.asarray(estimate_frame)

    if ref.shape != est.shape:
        raise DimensionError(f"Shape mismatch: {ref.shape} and {est.shape}")

    return np.abs(ref - est)


def error_maps(reference: ImageSeries, estimate: ImageSeries) -> NDArray:
    "The `[n_p, n_f, n_fr]` stack of per-frame error maps."

    ref, est = _pair(reference, estimate)
    return error_map(ref, est)


def zero_filled_baseline(sampled: KTDataset) -> ImageSeries:
    "The inverse transform of the zero-filled k-space."

    return to_image(sampled)


def _pair(reference: ImageSeries, estimate: ImageSeries) -> tuple[NDArray, NDArray]:
    if reference.geometry != estimate.geometry:
        raise DimensionError(
            f"Geometry mismatch: {reference.geometry} and {estimate.geometry}"
        )

    return reference.cube.data, estimate.cube.data


def _ratio(reference: NDArray, estimate: NDArray) -> float:
    scale = float(np.linalg.norm(reference.ravel()))

    if scale == 0:
        raise ZeroDivisionError("Reference has zero norm")

    return float(np.linalg.norm((reference - estimate).ravel())) / scale
