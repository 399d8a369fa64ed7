from .nrmse import (
    FRAME,
    NRMSE,
    EvalReport,
    error_map,
    error_maps,
    framewise_nrmse,
    nrmse,
    zero_filled_baseline,
)
