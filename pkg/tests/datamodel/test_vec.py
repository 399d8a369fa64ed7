import numpy as np
import pytest
from numpy import testing

from kerbil import DimensionError, devectorize, vectorize

from . import factories


def test_vectorize_column_major() -> None:
    a, b, c, d = 1, 2j, 3, 4 + 1j
    testing.assert_array_equal(vectorize([[a, c], [b, d]]), [a, b, c, d])
    testing.assert_array_equal(devectorize([a, b, c, d], 2, 2), [[a, c], [b, d]])
    testing.assert_array_equal(vectorize([[5j]]), [5j])


def test_devectorize_length() -> None:
    with pytest.raises(DimensionError):
        devectorize(np.ones(5), 2, 2)


def test_matrix_columns_are_vectorized_frames() -> None:
    data = factories.kspace()

    for j in range(data.geometry.n_fr):
        testing.assert_array_equal(data.matrix[:, j], vectorize(data.cube[j]))

    assert data.matrix.shape == (data.n_k, data.geometry.n_fr)
