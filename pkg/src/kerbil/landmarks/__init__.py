from .minmax import (
    LandmarkSet,
    covering_radius,
    default_n_landmarks,
    farthest_first,
    min_distances,
    select_landmarks_minmax,
)
