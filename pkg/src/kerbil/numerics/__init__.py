from .arrays import ComplexCube, as_complex, l1
from .eigen import (
    EigenPairs,
    check_hermitian,
    hermitian_smallest_eigpairs,
    hermitian_smallest_eigvecs,
    spectral_norm_squared,
)
from .fourier import dft2, dft_time, idft2, idft_time
from .prox import (
    project_colsum_one,
    project_column_ball,
    project_columns_ball,
    project_columns_sum_one,
    soft_threshold,
)
