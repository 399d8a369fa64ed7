import numpy as np

from kerbil import ImageSeries
from tests import utils


@utils.cache
def reference() -> ImageSeries:
    return ImageSeries.from_array(utils.crandn(4, 4, 3, seed=80))


@utils.cache
def estimate() -> ImageSeries:
    noise = utils.crandn(4, 4, 3, seed=81) / 10
    return ImageSeries.from_array(reference().cube.data + noise)


def series(*frames: list) -> ImageSeries:
    return ImageSeries.from_array(np.stack([np.asarray(f, float) for f in frames], -1))
