import functools
import inspect
from collections.abc import Callable
from typing import ParamSpec, TypeVar

from kerbil.common import ConfigError

P = ParamSpec("P")
T = TypeVar("T")


def correct_kwargs(function: Callable[P, T]) -> Callable[P, T]:
    """
    Turns a `TypeError` from mismatched keyword arguments into a `ConfigError`
    naming the expected signature.
    """

    @functools.wraps(function)
    def wrapped(*args: P.args, **kwargs: P.kwargs) -> T:
        try:
            inspect.signature(function).bind(*args, **kwargs)
        except TypeError as e:
            sig = inspect.signature(function)
            given = ", ".join(f"{k}={v}" for k, v in kwargs.items())
            raise ConfigError(
                f"Arguments do not match {function.__name__}{sig}. "
                f"Got ({given}): {e}"
            ) from e

        return function(*args, **kwargs)

    return wrapped
