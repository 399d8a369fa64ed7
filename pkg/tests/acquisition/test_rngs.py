import pytest

from kerbil import ParameterError
from kerbil.acquisition import stream


def test_stream_keyed_by_index() -> None:
    assert stream(3, 1).random() == stream(3, 1).random()
    assert stream(3, 1).random() != stream(3, 2).random()


def test_negative_seed() -> None:
    with pytest.raises(ParameterError):
        stream(-1, 0)
