from .acquisition import (
    PhantomSpec,
    SamplingMask,
    acceleration_rate,
    apply_sampling,
    generate_cartesian_mask,
    generate_phantom,
    load_mask,
    save_mask,
)
from .common import (
    BadMagicError,
    ConfigError,
    DimensionError,
    DimensionOverflowError,
    FileFormatError,
    ItemNotFound,
    KerbilError,
    ParameterError,
    StrEnum,
    ThresholdExceededError,
    TruncatedPayloadError,
    ValidationError,
    version,
)
from .datamodel import (
    CubeKind,
    Geometry,
    ImageSeries,
    KTDataset,
    NavigatorMatrix,
    devectorize,
    extract_navigator,
    read_cube,
    read_cube_file,
    read_mask,
    to_image,
    to_kspace,
    vectorize,
    write_cube,
    write_mask,
)
from .kernels import (
    GaussianHolomorphicKernel,
    GaussianModulusKernel,
    Kernel,
    KernelKind,
    KernelMatrix,
    KernelSpec,
    PolynomialKernel,
    kernel_eval,
    kernel_matrix,
)
from .landmarks import LandmarkSet, select_landmarks_minmax
from .manifold import (
    ReducedKernel,
    WeightMatrix,
    WeightSolverConfig,
    compute_reduced_kernel,
    solve_weights,
)
from .metrics import (
    EvalReport,
    error_map,
    error_maps,
    framewise_nrmse,
    nrmse,
    zero_filled_baseline,
)
from .numerics import ComplexCube
from .recon import (
    InitStrategy,
    ReconConfig,
    ReconDiagnostics,
    ReconProblem,
    ReconResult,
    ReconState,
    init_state,
    run_reconstruction,
    sca_step,
)

__version__ = version()
