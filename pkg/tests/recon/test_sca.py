import dataclasses as dcls

import numpy as np
import pytest
from numpy import testing

from kerbil import (
    Geometry,
    KTDataset,
    ParameterError,
    PhantomSpec,
    ReconConfig,
    ReconProblem,
    ReconState,
    SamplingMask,
    apply_sampling,
    generate_cartesian_mask,
    generate_phantom,
    init_state,
    nrmse,
    run_reconstruction,
    sca_step,
    to_kspace,
)
from kerbil.recon import (
    b_objective,
    columns,
    consistent_fit,
    d_objective,
    fit_dictionary,
    gamma_next,
    initial_fit,
    reconstruct,
    resolve_c_d,
    solve_b_subproblem,
    solve_d_subproblem,
)
from tests import utils

from . import factories


def test_gamma_sequence() -> None:
    gammas = [1.0]

    for _ in range(3):
        gammas.append(gamma_next(gammas[-1], 0.5))

    assert gammas == [1.0, 0.5, 0.375, 0.3046875]


@pytest.mark.parametrize("centered", [False, True])
def test_init_state(centered: bool) -> None:
    problem, cfg = factories.problem(centered), factories.config()
    state = init_state(problem, cfg)
    again = init_state(problem, cfg)

    assert state.is_feasible(cfg.c_d)
    assert state.gamma == cfg.gamma0
    testing.assert_array_equal(state.D, again.D)
    testing.assert_allclose(state.B, 1 / 3)
    testing.assert_allclose(
        state.Z, problem.temporal(state.reconstruction(problem.kernel))
    )


def test_init_jitter() -> None:
    problem = factories.problem()
    cfg = dcls.replace(factories.config(), init_jitter=0.5)
    first = init_state(problem, cfg, seed=3)

    assert first.is_feasible(cfg.c_d)
    assert not np.allclose(first.B, 1 / 3)
    testing.assert_array_equal(first.B, init_state(problem, cfg, seed=3).B)


def test_init_empty_mask() -> None:
    geometry = factories.GEOMETRY
    base = factories.problem()
    problem = ReconProblem(
        sampled=base.sampled.with_cube(np.zeros(geometry.shape)),
        mask=SamplingMask.empty(geometry),
        reduced=base.reduced,
    )
    state = init_state(problem, dcls.replace(factories.config(), c_d=None))
    testing.assert_array_equal(state.D, 0)


def test_resolve_c_d() -> None:
    assert resolve_c_d(np.array([[3.0, 0], [4, 1]])) == 50
    assert resolve_c_d(np.zeros((2, 2))) == 1


def test_consistent_fit_matches_zero_filled_when_full() -> None:
    problem, B = factories.full_problem(), factories.consistent_state().B
    fit = consistent_fit(problem, B, smoothing=0)

    testing.assert_allclose(fit, initial_fit(problem, B), atol=1e-10)
    testing.assert_allclose(fit, factories.consistent_state().D, atol=1e-6)


def test_consistent_fit_static_from_single_lines() -> None:
    geometry = factories.GEOMETRY
    frame = utils.crandn(geometry.n_p, geometry.n_f, seed=90)
    data = KTDataset.from_array(np.repeat(frame[:, :, None], geometry.n_fr, axis=2))

    # Lines 0 to 2 are acquired in one frame each, line 3 never.
    mask = SamplingMask(
        lines=[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]], nu=0, n_f=geometry.n_f
    )
    problem = ReconProblem(
        sampled=apply_sampling(mask, data), mask=mask, reduced=factories.reduced()
    )
    B = factories.state().B
    fit = consistent_fit(problem, B)

    expected = data.matrix.copy()
    expected[3 :: geometry.n_p] = 0
    spectrum = problem.forward(fit @ (problem.kernel @ B))
    testing.assert_allclose(spectrum, expected, atol=1e-6)

    # The zero-filled fit keeps each line in its own frame only.
    zero_filled = problem.forward(initial_fit(problem, B) @ (problem.kernel @ B))
    assert utils.relative_error(zero_filled, expected) > 0.1


def test_fit_dictionary_follows_init() -> None:
    problem, B = factories.problem(), factories.state().B
    navigator = dcls.replace(factories.config(), init="navigator")

    testing.assert_array_equal(
        fit_dictionary(problem, factories.config(), B), initial_fit(problem, B)
    )
    testing.assert_array_equal(
        fit_dictionary(problem, navigator, B), consistent_fit(problem, B)
    )



@pytest.mark.parametrize("seed", range(5))
def test_step_feasible(seed: int) -> None:
    problem, cfg = factories.problem(), factories.config()
    state = factories.state(seed=400 + 3 * seed)
    following = sca_step(problem, state, cfg)

    assert following.is_feasible(cfg.c_d)
    assert following.n == state.n + 1
    assert following.gamma == gamma_next(state.gamma, cfg.zeta)


@pytest.mark.parametrize("centered", [False, True])
def test_subproblems_never_worse_over_steps(centered: bool) -> None:
    problem = factories.problem(centered)
    cfg = dcls.replace(factories.config(), init_jitter=0.3)
    state = init_state(problem, cfg, seed=5)

    for n in range(50):
        assert state.is_feasible(cfg.c_d), n

        d_hat = solve_d_subproblem(problem, state, cfg).solution
        b_hat = solve_b_subproblem(problem, state, cfg).solution

        d_before = d_objective(problem, state, cfg, state.D)
        assert d_objective(problem, state, cfg, d_hat) <= d_before + 1e-8, n
        b_before = b_objective(problem, state, cfg, state.B)
        assert b_objective(problem, state, cfg, b_hat) <= b_before + 1e-8, n

        state = sca_step(problem, state, cfg)

    assert state.is_feasible(cfg.c_d)
    assert state.n == 50


def test_step_fixed_point() -> None:
    problem = factories.symmetric_problem()
    cfg = ReconConfig(lambda1=0.5, lambda2=0.1, lambda3=0.1, c_d=1)
    state = ReconState(
        D=np.zeros((4, 1)), B=np.full((2, 1), 0.5), Z=np.zeros((4, 1)), gamma=0.8, n=4
    )
    following = sca_step(problem, state, cfg)

    testing.assert_array_equal(following.D, state.D)
    testing.assert_allclose(following.B, state.B, atol=1e-6)
    testing.assert_array_equal(following.Z, state.Z)
    assert following.gamma == pytest.approx(0.8 * 0.6)
    assert following.n == 5


def test_reconstruct_traces() -> None:
    problem = factories.problem()
    cfg = dcls.replace(factories.config(), outer_max_iter=15, outer_tol=0)
    state, diagnostics = reconstruct(problem, cfg)

    assert diagnostics.iterations == 15
    assert not diagnostics.converged
    assert np.isfinite(diagnostics.objectives).all()
    assert min(diagnostics.objectives) >= 0
    assert all(a > b for a, b in zip(diagnostics.gammas, diagnostics.gammas[1:]))
    assert diagnostics.column_excess <= 1e-9
    assert diagnostics.sum_residual <= 1e-6

    frame = diagnostics.to_frame()
    assert len(frame) == 16
    assert list(frame[columns.ITERATION]) == list(range(16))
    assert np.isnan(frame[columns.CHANGE][0])


def test_reconstruct_needs_positive_weights() -> None:
    cfg = dcls.replace(factories.config(), lambda1=0)

    with pytest.raises(ParameterError):
        reconstruct(factories.problem(), cfg)


def test_config_defaults() -> None:
    problem = factories.problem()
    cfg = ReconConfig().resolve(problem)
    scale = 1e-3 * np.linalg.norm(problem.data)

    assert cfg.lambda2 == pytest.approx(scale / np.sqrt(3 * 3))
    assert cfg.lambda3 == pytest.approx(scale / np.sqrt(8 * 3))
    assert cfg.c_d is None


@pytest.mark.parametrize(
    "kwargs",
    [{"zeta": 0}, {"zeta": 1}, {"gamma0": 0}, {"gamma0": 1.5}, {"lambda1": -1}],
)
def test_config_ranges(kwargs: dict) -> None:
    with pytest.raises(ParameterError):
        ReconConfig(**kwargs)


@utils.cache
def phantom_data(rate: float) -> tuple:
    geometry = Geometry(16, 16, 12)
    images = generate_phantom(PhantomSpec(geometry, n_cycles=2, seed=1))
    data = to_kspace(images, centered=True)

    if rate == 1:
        mask = SamplingMask.full(geometry, nu=4)
    else:
        mask = generate_cartesian_mask(geometry, nu=4, target_rate=rate, seed=2)

    return images, apply_sampling(mask, data), mask


def test_fully_sampled_pipeline() -> None:
    images, sampled, mask = phantom_data(1)
    cfg = ReconConfig(outer_max_iter=20)
    result = run_reconstruction(sampled, mask, cfg=cfg, seed=0)

    assert result.images.geometry == images.geometry
    assert result.landmarks is not None and len(result.landmarks) == 4
    assert result.reduced.d == 2
    assert np.isfinite(result.diagnostics.objectives).all()
    assert nrmse(images, result.images) < 0.5


def test_pipeline_deterministic() -> None:
    _, sampled, mask = phantom_data(2)
    cfg = ReconConfig(outer_max_iter=10)
    first = run_reconstruction(sampled, mask, cfg=cfg, seed=0)
    second = run_reconstruction(sampled, mask, cfg=cfg, seed=0)

    assert nrmse(first.images, second.images) <= 1e-6
    assert first.diagnostics.landmarks == second.diagnostics.landmarks
