from .masks import (
    SamplingMask,
    acceleration_rate,
    apply_sampling,
    generate_cartesian_mask,
    load_mask,
    sample_matrix,
    save_mask,
)
from .phantom import PhantomSpec, generate_phantom
from .rngs import stream
