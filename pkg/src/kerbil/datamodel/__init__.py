from .geometry import Geometry
from .io import (
    CubeFile,
    CubeKind,
    MaskFile,
    read_cube,
    read_cube_file,
    read_mask,
    write_cube,
    write_mask,
)
from .series import (
    ImageSeries,
    KTDataset,
    NavigatorMatrix,
    center_kspace,
    check_geometry,
    extract_navigator,
    navigator_rows,
    to_image,
    to_kspace,
    uncenter_kspace,
)
from .vec import cube_to_matrix, devectorize, matrix_to_cube, vectorize
