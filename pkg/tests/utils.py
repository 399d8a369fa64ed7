import functools
from collections.abc import Callable
from typing import ParamSpec, TypeVar

import numpy as np
from numpy.random import Generator
from numpy.typing import NDArray

P = ParamSpec("P")
T = TypeVar("T")


def cache(func: Callable[P, T]) -> Callable[P, T]:
    # Ignore because of current functools bug.
    # https://stackoverflow.com/questions/73517571/typevar-inference-broken-by-lru-cache-decorator
    return functools.cache(func)  # type:ignore


def rng(seed: int = 0) -> Generator:
    return np.random.default_rng(seed)


def crandn(*shape: int, seed: int = 0) -> NDArray:
    """
    Standard complex normal samples of the given shape.
    Deterministic given the seed.
    """

    gen = rng(seed)
    return (gen.standard_normal(shape) + 1j * gen.standard_normal(shape)) / np.sqrt(2)


def relative_error(actual: NDArray, expected: NDArray) -> float:
    scale = max(float(np.linalg.norm(expected)), 1e-300)
    return float(np.linalg.norm(np.asarray(actual) - expected)) / scale
