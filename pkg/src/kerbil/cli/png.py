import functools
from pathlib import Path

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from kerbil.datamodel import ImageSeries
from kerbil.metrics import error_maps

LOGGER = structlog.get_logger()


@functools.cache
def _pillow():
    # Optional dependency, installed with the `plots` extra.
    from PIL import Image

    return Image


def to_uint8(images: ImageSeries | ArrayLike) -> NDArray:
    """
    Magnitudes scaled by the global maximum of the series to `[0, 255]`.
    A zero series maps to black.
    """

    if isinstance(images, ImageSeries):
        images = images.cube.data

    magnitude = np.abs(np.asarray(images))
    peak = float(magnitude.max())

    if peak == 0:
        return np.zeros(magnitude.shape, dtype=np.uint8)

    return np.round(magnitude / peak * 255).astype(np.uint8)


def export_png(images: ImageSeries, out: str | Path) -> list[Path]:
    """
    Write one 8-bit grayscale PNG per frame, named `frame_0000.png` and so on.

    Parameters:
        images: The series.
        out: The output directory, created if missing.

    Returns:
        The written paths, in frame order.
    """

    return _write(to_uint8(images), Path(out), "frame")


def export_error_png(
    reference: ImageSeries, images: ImageSeries, out: str | Path
) -> list[Path]:
    """
    Write the error map `|X - X_hat|` of every frame as `error_0000.png` and so on,
    all scaled by the largest error of the series.

    Raises:
        DimensionError: If the geometries differ.
    """

    return _write(to_uint8(error_maps(reference, images)), Path(out), "error")


def _write(frames: NDArray, out: Path, prefix: str) -> list[Path]:
    image = _pillow()
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    for j in range(frames.shape[2]):
        path = out / f"{prefix}_{j:04d}.png"
        image.fromarray(np.ascontiguousarray(frames[:, :, j])).save(path)
        paths.append(path)

    LOGGER.info("Exported frames", out=str(out), prefix=prefix, frames=len(paths))
    return paths
