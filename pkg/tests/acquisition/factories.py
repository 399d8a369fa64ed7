from kerbil import Geometry, PhantomSpec, SamplingMask, generate_cartesian_mask
from tests import utils


@utils.cache
def geometry() -> Geometry:
    return Geometry(n_p=8, n_f=8, n_fr=4)


@utils.cache
def phantom_spec(noise: float = 0.0) -> PhantomSpec:
    return PhantomSpec(geometry=Geometry(16, 12, 6), n_cycles=2, noise=noise, seed=5)


@utils.cache
def mask(nu: int = 2, rate: float = 2, seed: int = 0) -> SamplingMask:
    return generate_cartesian_mask(geometry(), nu=nu, target_rate=rate, seed=seed)
