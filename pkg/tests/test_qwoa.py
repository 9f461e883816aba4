import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dense_expm, dense_laplacian, random_state
from setbalance import statevector as sv
from setbalance.cli import load_schema
from setbalance.exceptions import ShapeError, ThresholdError, ValidationError
from setbalance.instances import QWOA_EXAMPLE_SOLUTION, random_instance
from setbalance.optimize import OptimizerConfig
from setbalance.oracle import enumerate_spectrum
from setbalance.problem import CostDiagonal, SetBalancingInstance, cost_diagonal, encode
from setbalance.qwoa import (LevelReduction, QwoaParams, WalkSpace, grover_iterations,
                             grover_prepare, histogram_json, histogram_series_json,
                             interpolate_params, optimize_qwoa, phase_unitary, prepare_state,
                             run_modified_qwoa, run_qwoa, sweep_qwoa, threshold_subspace,
                             uniform_feasible_state, walk_unitary)


masks = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.booleans(), min_size=1 << n, max_size=1 << n).filter(any))


class TestWalk:
    def test_dense_two_qubit(self):
        lap = dense_laplacian([True] * 4)
        assert lap[0, 0] == 3 and lap[0, 1] == -1
        s = random_state(2, np.random.default_rng(0))
        out = walk_unitary(s, 0.37, WalkSpace.full(2))
        np.testing.assert_allclose(out, dense_expm(lap, 0.37) @ s, atol=1e-9)

    @given(masks, st.floats(0, 5), st.integers(0, 1000))
    def test_matches_dense_laplacian(self, mask, t, seed):
        n = int(np.log2(len(mask)))
        space = WalkSpace(n, np.array(mask))
        s = random_state(n, np.random.default_rng(seed))
        np.testing.assert_allclose(walk_unitary(s, t, space), dense_expm(dense_laplacian(mask), t) @ s, atol=1e-9)

    @given(masks, st.floats(0, 5))
    def test_uniform_fixed_point(self, mask, t):
        n = int(np.log2(len(mask)))
        space = WalkSpace(n, np.array(mask))
        u = uniform_feasible_state(space)
        np.testing.assert_allclose(walk_unitary(u, t, space), u, atol=1e-12)

    @given(masks, st.floats(0, 5), st.integers(0, 1000))
    def test_support_preserved(self, mask, t, seed):
        n = int(np.log2(len(mask)))
        f = np.array(mask)
        space = WalkSpace(n, f)
        s = random_state(n, np.random.default_rng(seed)) * f
        s /= np.linalg.norm(s)
        out = walk_unitary(s, t, space)
        assert np.abs(out[~f]).max(initial=0.0) < 1e-12
        assert np.linalg.norm(out) == pytest.approx(1.0)

    def test_zero_time(self):
        s = random_state(3, np.random.default_rng(1))
        np.testing.assert_allclose(walk_unitary(s, 0.0, WalkSpace.full(3)), s)

    def test_negative_time(self):
        with pytest.raises(ValidationError):
            walk_unitary(sv.uniform_state(2), -0.1, WalkSpace.full(2))

    def test_empty_space(self):
        with pytest.raises(ThresholdError):
            WalkSpace(2, np.zeros(4, dtype=bool))

    def test_mask_shape(self):
        with pytest.raises(ShapeError):
            WalkSpace(2, np.ones(3, dtype=bool))


class TestPhase:
    def test_direct_evaluation(self):
        diag = CostDiagonal(2, np.array([0.0, 1.0, 2.0, 3.0]))
        s = sv.uniform_state(2)
        np.testing.assert_allclose(phase_unitary(s, np.pi, diag), 0.5 * np.array([1, -1, 1, -1]), atol=1e-15)

    def test_constant_is_global_phase(self):
        diag = CostDiagonal(2, np.full(4, 3.0))
        s = random_state(2, np.random.default_rng(2))
        np.testing.assert_allclose(phase_unitary(s, 0.5, diag), np.exp(-1.5j) * s)


class TestRun:
    def test_zero_rounds(self, qwoa_instance):
        diag = cost_diagonal(qwoa_instance)
        dist = run_qwoa(qwoa_instance, WalkSpace.full(10), QwoaParams((), ()), diag)
        assert dist.expectation == pytest.approx(diag.mean())

    def test_zero_times_keep_uniform(self, qwoa_instance):
        dist = run_qwoa(qwoa_instance, WalkSpace.full(10), QwoaParams((0.3, 1.1), (0.0, 0.0)))
        np.testing.assert_allclose(dist.probabilities, 1 / 1024)

    def test_params_validation(self):
        with pytest.raises(ValidationError):
            QwoaParams((0.1,), (-0.2,))
        with pytest.raises(ValidationError):
            QwoaParams((0.1, 0.2), (0.2,))

    @given(st.integers(0, 300), st.integers(1, 6))
    def test_level_reduction_exact(self, seed, r):
        rng = np.random.default_rng(seed)
        inst = random_instance(5, 6, seed=seed)
        diag = cost_diagonal(inst)
        space = WalkSpace.full(6)
        g, t = rng.uniform(0, 1, r), rng.uniform(0, 0.2, r)
        state = prepare_state(space, QwoaParams(g, t), diag)
        reduced = LevelReduction.build(diag, space)
        assert reduced.expectation(g, t) == pytest.approx(float(sv.probabilities(state) @ diag.values), abs=1e-9)
        probs = reduced.level_probabilities(g, t)
        for level, p in zip(reduced.levels, probs):
            assert p == pytest.approx(sv.probabilities(state)[diag.values == level].sum(), abs=1e-12)

    def test_level_reduction_declines_other_starts(self):
        diag = CostDiagonal(2, np.array([0.0, 1.0, 2.0, 3.0]))
        assert LevelReduction.build(diag, WalkSpace.full(2), sv.basis_state(2, 0)) is None

    def test_interpolation(self):
        p = interpolate_params(QwoaParams((0.0, 1.0), (2.0, 4.0)), 3)
        assert p.gammas == (0.0, 0.5, 1.0) and p.times == (2.0, 3.0, 4.0)
        assert interpolate_params(QwoaParams((0.3,), (0.1,)), 2).gammas == (0.3, 0.3)


class TestOptimize:
    def test_constant_objective(self):
        inst = SetBalancingInstance(np.array([[1]]))
        _, dist, _ = optimize_qwoa(inst, WalkSpace.full(1), 2, restarts=2)
        assert dist.expectation == pytest.approx(1.0)

    def test_grid_scan_two_qubits(self):
        inst = SetBalancingInstance(np.array([[1, 1], [1, 0]]))
        diag = cost_diagonal(inst)
        space = WalkSpace.full(2)
        grid_g = np.linspace(0, np.pi, 41)
        grid_t = np.linspace(0, np.pi / 2, 41)
        scan = min(run_qwoa(inst, space, QwoaParams((g,), (t,)), diag).expectation
                   for g in grid_g for t in grid_t)
        _, dist, _ = optimize_qwoa(inst, space, 1, restarts=4)
        assert dist.expectation <= diag.mean() + 1e-12
        assert dist.expectation <= scan + 1e-2

    def test_deterministic_and_restarts(self, qwoa_instance):
        space = WalkSpace.full(10)
        cfg = OptimizerConfig(max_evals=60)
        a = optimize_qwoa(qwoa_instance, space, 2, cfg, restarts=3, seed=5)
        b = optimize_qwoa(qwoa_instance, space, 2, cfg, restarts=3, seed=5)
        assert a[0] == b[0] and a[2] == b[2]
        assert len(a[2]) == 180
        assert all(t >= 0 for t in a[0].times)

    def test_start_length_checked(self, qwoa_instance):
        with pytest.raises(ValidationError):
            optimize_qwoa(qwoa_instance, WalkSpace.full(10), 3, start=QwoaParams((0.1,), (0.1,)))

    def test_sweep_improves_with_depth(self, qwoa_instance):
        cfg = OptimizerConfig(max_evals=400)
        sweep = sweep_qwoa(qwoa_instance, WalkSpace.full(10), [0, 2, 6], cfg, restarts=2)
        assert [r for r, *_ in sweep] == [0, 2, 6]
        values = [dist.expectation for _, _, dist, _ in sweep]
        assert values[0] > values[1] > values[2]
        assert sweep[2][2].probability_of(4) > sweep[0][2].probability_of(4)


class TestThresholdAndGrover:
    def test_infinite_threshold(self, qwoa_instance):
        assert threshold_subspace(qwoa_instance, np.inf).size == 1024

    def test_minimum_threshold_is_argmin_set(self, qwoa_instance):
        space = threshold_subspace(qwoa_instance, 4)
        spectrum = enumerate_spectrum(qwoa_instance)
        assert tuple(np.flatnonzero(space.feasible)) == spectrum.argmins
        assert space.feasible[encode(QWOA_EXAMPLE_SOLUTION)]

    def test_below_minimum(self, qwoa_instance):
        with pytest.raises(ThresholdError):
            threshold_subspace(qwoa_instance, 3)

    def test_full_space_no_iterations(self):
        space = WalkSpace.full(3)
        assert grover_iterations(space) == 0
        assert abs(np.vdot(uniform_feasible_state(space), grover_prepare(space, "iterative"))) == pytest.approx(1)

    def test_two_qubit_single_marked(self):
        mask = np.array([False, False, True, False])
        space = WalkSpace(2, mask)
        assert grover_iterations(space) == 1
        state = grover_prepare(space, "iterative")
        assert abs(state[2]) ** 2 == pytest.approx(1.0)

    @given(st.integers(2, 6), st.data())
    def test_overlap_closed_form(self, n, data):
        mask = np.array(data.draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n).filter(any)))
        space = WalkSpace(n, mask)
        overlap = abs(np.vdot(grover_prepare(space, "exact"), grover_prepare(space, "iterative"))) ** 2
        theta = np.arcsin(np.sqrt(space.size / (1 << n)))
        k = grover_iterations(space)
        assert overlap == pytest.approx(np.sin((2 * k + 1) * theta) ** 2, abs=1e-9)

    def test_overlap_high_when_marked_set_small(self):
        mask = np.zeros(1 << 8, dtype=bool)
        mask[[3, 77, 200]] = True
        space = WalkSpace(8, mask)
        overlap = abs(np.vdot(grover_prepare(space, "exact"), grover_prepare(space, "iterative"))) ** 2
        assert overlap >= 1 - space.size / (1 << 8)

    def test_unknown_mode(self):
        with pytest.raises(ValidationError):
            grover_prepare(WalkSpace.full(2), "fast")


class TestModified:
    def test_three_qubit_support(self):
        inst = SetBalancingInstance(np.array([[1, 1, 0], [0, 1, 1], [1, 1, 1]]))
        result = run_modified_qwoa(inst, r=2, shots=2000, restarts=2)
        support = result.distribution.probabilities > 1e-12
        assert np.all(result.distribution.values[support] <= result.threshold + 1e-9)
        assert np.all(result.space.feasible[support])

    def test_constant_objective_full_space(self):
        inst = SetBalancingInstance(np.array([[1, 0], [0, 1]]))
        result = run_modified_qwoa(inst, r=1, shots=100, restarts=1)
        assert result.space.is_full

    def test_ten_by_ten_threshold(self, qwoa_instance):
        cfg = OptimizerConfig(max_evals=300)
        result = run_modified_qwoa(qwoa_instance, r=3, optimizer_config=cfg, shots=10000, restarts=2)
        assert min(v for v, p in result.distribution.histogram() if p > 1e-9) <= result.threshold


def test_histogram_json_schema(qwoa_instance):
    diag = cost_diagonal(qwoa_instance)
    d0 = run_qwoa(qwoa_instance, WalkSpace.full(10), QwoaParams((), ()), diag)
    d1 = run_qwoa(qwoa_instance, WalkSpace.full(10), QwoaParams((0.02,), (0.001,)), diag)
    series = json.loads(histogram_series_json([(0, d0), (1, d1)]))
    jsonschema.validate(series, load_schema("histogram"))
    assert histogram_json(0, d0)["histogram"][0]["objective"] == 4.0
    assert sum(h["probability"] for h in series[1]["histogram"]) == pytest.approx(1.0)
