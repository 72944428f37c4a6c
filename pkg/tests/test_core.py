import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cfopr.benchmarks import ObjectiveSpec, get_objective
from cfopr.core import (
    DecisionSpace,
    RunConfig,
    advance_frep,
    compute_accelerations,
    init_probes_alt,
    init_probes_uniform_on_axis,
    retrieve_errant_probes,
    run_single,
    shrink_decision_space,
    step_positions,
)
from cfopr.errors import InvalidConfigError, InvalidStateError


def _box(lo, hi):
    return DecisionSpace.from_bounds(list(zip(lo, hi)))


# deployment -------------------------------------------------------------------


def test_on_axis_gp_geometry():
    space = DecisionSpace.for_objective(get_objective("gp"))
    R = init_probes_uniform_on_axis(space, 0.9, 12)
    assert R.shape == (24, 2)
    axis1 = R[:12]
    assert np.all(axis1[:, 1] == pytest.approx(80.0))
    np.testing.assert_allclose(axis1[:, 0], -100 + np.arange(12) * 200 / 11)
    assert axis1[1, 0] == pytest.approx(-81.8181818181818)


def test_on_axis_gamma_zero_hugs_lower_corner():
    space = _box([-1, 2], [3, 4])
    R = init_probes_uniform_on_axis(space, 0.0, 4)
    assert np.all(R[:4, 1] == 2.0) and np.all(R[4:, 0] == -1.0)


def test_on_axis_midpoint_is_origin():
    space = _box([-5, -5, -5], [5, 5, 5])
    R = init_probes_uniform_on_axis(space, 0.5, 4)
    for i in range(3):
        off = np.delete(R[4 * i : 4 * i + 4], i, axis=1)
        assert np.all(off == 0.0)


def test_on_axis_one_dimension():
    R = init_probes_uniform_on_axis(_box([0], [1]), 0.3, 5)
    np.testing.assert_array_equal(R[:, 0], [0, 0.25, 0.5, 0.75, 1.0])
    with pytest.raises(InvalidConfigError):
        init_probes_uniform_on_axis(_box([0], [1]), 0.3, 2)


def test_alt_deployments():
    space = _box([0, 0], [1, 1])
    diag = init_probes_alt(space, "uniform-on-diagonal", 2, n_probes=3)
    np.testing.assert_array_equal(diag, [[0, 0], [0.5, 0.5], [1, 1]])
    R = init_probes_alt(space, "uniform-on-diagonal", 2)
    np.testing.assert_allclose(R[:, 0], np.arange(4) / 3)
    grid = init_probes_alt(space, "grid-2d", 2)
    assert {tuple(r) for r in grid} == {(0, 0), (0, 1), (1, 0), (1, 1)}
    with pytest.raises(InvalidConfigError):
        init_probes_alt(_box([0] * 3, [1] * 3), "grid-2d", 2)
    from cfopr.benchmarks import make_noise

    a = init_probes_alt(space, "random", 3, make_noise(7))
    b = init_probes_alt(space, "random", 3, make_noise(7))
    assert np.array_equal(a, b) and a.shape == (6, 2)
    assert np.all((a >= 0) & (a <= 1))


def test_config_constraints():
    RunConfig(probes_per_axis=4).validate(2)
    with pytest.raises(InvalidConfigError):
        RunConfig(probes_per_axis=3).validate(2)
    with pytest.raises(InvalidConfigError):
        RunConfig(probes_per_axis=2).validate(1)
    assert RunConfig(probes_per_axis=3).validate(1) == 3
    assert RunConfig(probes_per_axis=3, initial_distribution="grid-2d").validate(2) == 9
    with pytest.raises(InvalidConfigError):
        RunConfig(gamma=1.5).validate(2)
    with pytest.raises(InvalidConfigError):
        RunConfig(frep_init=0.0).validate(2)


# equations of motion -----------------------------------------------------------


def test_two_probe_example():
    cfg = RunConfig(G=2, alpha=1, beta=2)
    A = compute_accelerations(np.array([[0.0], [2.0]]), np.array([0.0, 1.0]), cfg)
    assert A[0, 0] == 1.0 and A[1, 0] == 0.0


def test_equal_fitness_gives_zero():
    R = np.random.default_rng(0).random((6, 3))
    A = compute_accelerations(R, np.full(6, 4.2), RunConfig())
    assert np.all(A == 0.0)


def test_coincident_probes_are_skipped():
    R = np.array([[1.0, 1.0], [1.0, 1.0], [2.0, 1.0]])
    A = compute_accelerations(R, np.array([0.0, 1.0, 0.5]), RunConfig(), eps_dist=1e-9)
    assert np.all(np.isfinite(A))
    np.testing.assert_allclose(A[0], [2 * 0.5**2 / 1.0, 0.0])


def test_non_finite_fitness_rejected():
    with pytest.raises(InvalidStateError):
        compute_accelerations(np.zeros((2, 1)), np.array([0.0, np.nan]), RunConfig())


instances = st.tuples(
    st.integers(2, 10), st.integers(1, 5), st.integers(0, 2**32 - 1)
)


@settings(max_examples=60, deadline=None)
@given(instances)
def test_matches_pairwise_loop(inst):
    n, d, seed = inst
    rng = np.random.default_rng(seed)
    R = rng.uniform(-3, 3, (n, d))
    M = rng.uniform(-5, 5, n)
    cfg = RunConfig(G=1.5, alpha=2, beta=2)
    want = np.array(oracles.accelerations_loop(R.tolist(), M.tolist(), 1.5, 2, 2))
    np.testing.assert_allclose(compute_accelerations(R, M, cfg), want, rtol=1e-12, atol=1e-12)


def test_step_positions_examples():
    assert step_positions(np.array(1.0), np.array(4.0), 1.0) == 3.0
    assert step_positions(np.array(0.0), np.array(1.0), 2.0) == 2.0
    R = np.random.default_rng(1).random((4, 3))
    assert np.array_equal(step_positions(R, np.zeros_like(R), 1.7), R)


# retrieval, frep, shrink --------------------------------------------------------


def test_retrieval_examples():
    space = _box([0], [10])
    assert retrieve_errant_probes(np.array([[-3.0]]), np.array([[4.0]]), space, 0.5)[0, 0] == 2.0
    assert retrieve_errant_probes(np.array([[15.0]]), np.array([[4.0]]), space, 0.5)[0, 0] == 7.0
    assert retrieve_errant_probes(np.array([[6.5]]), np.array([[4.0]]), space, 0.5)[0, 0] == 6.5


def test_retrieval_after_shrink_uses_clipped_previous():
    space = _box([2], [4])
    out = retrieve_errant_probes(np.array([[5.0]]), np.array([[9.0]]), space, 0.5)
    assert out[0, 0] == 4.0


def test_advance_frep():
    assert advance_frep(0.5, 0.05) == 0.55
    assert advance_frep(1.0, 0.05) == 0.05
    assert advance_frep(0.95, 0.05) == pytest.approx(1.0)
    seq, f = [], 0.5
    for _ in range(12):
        f = advance_frep(f, 0.05)
        seq.append(round(f, 10))
    assert seq[-3:] == [1.0, 0.05, 0.1]


@settings(max_examples=50, deadline=None)
@given(st.floats(0.001, 1.0), st.sampled_from([0.05, 0.1, 0.125, 0.2, 0.25, 0.5]))
def test_frep_orbit_stays_in_unit_interval(start, delta):
    f = start
    seen = []
    for _ in range(200):
        f = advance_frep(f, delta)
        assert 0 < f <= 1 + 1e-12
        seen.append(f)
    period = round(1 / delta)
    assert seen[-1] == pytest.approx(seen[-1 - period], abs=1e-9)


def test_shrink_examples():
    space = _box([-100, -100], [100, 100])
    s = shrink_decision_space(space, np.array([0.0, -1.0]))
    np.testing.assert_array_equal(s.current_min, [-50, -50.5])
    np.testing.assert_array_equal(s.current_max, [50, 49.5])
    assert s.diag_length == space.diag_length
    np.testing.assert_array_equal(space.current_min, [-100, -100])
    one = _box([-1], [1])
    twice = shrink_decision_space(shrink_decision_space(one, np.zeros(1)), np.zeros(1))
    assert (twice.current_min[0], twice.current_max[0]) == (-0.25, 0.25)


def test_shrink_boundary_anchor():
    s = shrink_decision_space(_box([0], [8]), np.array([0.0]))
    assert (s.current_min[0], s.current_max[0]) == (0.0, 4.0)


# full runs ----------------------------------------------------------------------


def _constant(c, dim=2):
    return ObjectiveSpec("const", dim, ((-1.0, 1.0),) * dim, func=lambda X: np.full(X.shape[0], c))


def test_constant_objective_never_moves():
    # with shrinking on, probes left outside the smaller box would be pulled in
    cfg = RunConfig(probes_per_axis=4, gamma=0.3, shrink_interval=0)
    res, tr = run_single(_constant(2.5), cfg)
    assert np.all(tr.A == 0.0)
    assert np.all(tr.R == tr.R[:, :, :1])
    assert res.best_fitness == 2.5
    assert res.last_step == cfg.termination_window + cfg.termination_warmup_extra


def test_single_step_run_keeps_positions():
    cfg = RunConfig(max_steps=1, shrink_interval=0, probes_per_axis=4)
    res, tr = run_single(get_objective("gp"), cfg)
    assert res.last_step == 1
    assert np.array_equal(tr.R[:, :, 1], tr.R[:, :, 0])
    assert res.n_eval == 2 * 8


def test_gp_best_configuration():
    res, tr = run_single(get_objective("gp"), RunConfig(gamma=0.9, probes_per_axis=12))
    assert res.last_step < 500
    assert res.best_fitness == pytest.approx(-3.0, abs=1e-2)
    assert res.n_eval == (res.last_step + 1) * 24
    assert tr.M[res.best_probe, res.best_step] == res.best_fitness
    assert res.best_fitness == tr.M.max()


def test_run_is_deterministic():
    cfg = RunConfig(gamma=0.4, probes_per_axis=6)
    a, ta = run_single(get_objective("f16"), cfg)
    b, tb = run_single(get_objective("f16"), cfg)
    assert a == b
    assert np.array_equal(ta.R, tb.R) and np.array_equal(ta.M, tb.M) and np.array_equal(ta.A, tb.A)


def test_stochastic_run_is_seeded():
    spec = get_objective("f7", 4)
    cfg = RunConfig(probes_per_axis=2, max_steps=80, noise_seed=3)
    a, _ = run_single(spec, cfg)
    b, _ = run_single(spec, cfg)
    c, _ = run_single(spec, dataclasses.replace(cfg, noise_seed=4))
    assert a == b and a != c


def test_feasibility_and_fitness_consistency():
    spec = get_objective("f17")
    res, tr = run_single(spec, RunConfig(gamma=0.2, probes_per_axis=8))
    from cfopr.benchmarks import evaluate_batch

    for j in range(tr.last_step + 1):
        lo, hi = tr.bounds_during(j)
        assert np.all(tr.R[:, :, j] >= lo) and np.all(tr.R[:, :, j] <= hi)
        assert np.array_equal(tr.M[:, j], evaluate_batch(spec, tr.R[:, :, j]))


def test_counting_objective_matches_n_eval():
    calls = []
    base = get_objective("f16")

    def counted(X):
        calls.append(X.shape[0])
        return base.func(X)

    spec = dataclasses.replace(base, func=counted)
    res, _ = run_single(spec, RunConfig(gamma=0.7, probes_per_axis=4))
    assert sum(calls) == res.n_eval


def test_alternative_modes_run():
    gp = get_objective("gp")
    for mode in ("uniform-on-diagonal", "grid-2d", "random"):
        res, tr = run_single(gp, RunConfig(initial_distribution=mode, probes_per_axis=4, max_steps=70))
        assert np.isfinite(res.best_fitness)
    res, tr = run_single(gp, RunConfig(initial_acceleration="fixed", probes_per_axis=4, max_steps=5))
    assert np.all(tr.A[:, :, 0] == 0.5)
    res, tr = run_single(gp, RunConfig(initial_acceleration="random", probes_per_axis=4, max_steps=5))
    assert np.all((tr.A[:, :, 0] >= 0) & (tr.A[:, :, 0] < 2.0))


def test_dimension_mismatch():
    with pytest.raises(InvalidConfigError):
        run_single(get_objective("gp"), RunConfig(), DecisionSpace.from_bounds([(0, 1)] * 3))


def test_gp_reference_row():
    # gamma 0.9, 12 probes per axis: 60 steps, 1464 evaluations, best -3
    spec = get_objective("gp")
    res, _ = run_single(spec, RunConfig(gamma=0.9, probes_per_axis=12, frep_wrap_tol=0.0))
    assert (res.last_step, res.n_eval) == (60, 1464)
    assert res.final_frep == pytest.approx(0.65)
    assert round(res.best_fitness, 8) == -3.0
    res, _ = run_single(spec, RunConfig(gamma=0.9, probes_per_axis=12))
    assert (res.last_step, res.n_eval) == (60, 1464)
