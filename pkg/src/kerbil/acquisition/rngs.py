import numpy as np
from numpy.random import Generator

from kerbil.common import ParameterError


def stream(seed: int, index: int) -> Generator:
    """
    An independent counter-based stream for one frame (or phase).
    The key is `seed ^ index`, so streams do not depend on evaluation order.
    """

    if seed < 0:
        raise ParameterError(f"Expected a non-negative seed, got {seed}")

    return np.random.Generator(np.random.Philox(key=int(seed) ^ int(index)))
