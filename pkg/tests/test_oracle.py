import itertools
import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from setbalance.cli import load_schema
from setbalance.exceptions import SizeError
from setbalance.instances import QWOA_EXAMPLE_SOLUTION, random_instance
from setbalance.oracle import enumerate_spectrum, local_search, objective_table
from setbalance.problem import SetBalancingInstance, cost_diagonal, encode, objective


def naive_table(inst):
    n = inst.n
    out = []
    for x in range(1 << n):
        b = np.array([-1 if (x >> k) & 1 else 1 for k in range(n)])
        out.append(int(np.sum((inst.matrix @ b) ** 2)))
    return np.array(out)


class TestEnumerate:
    def test_ten_by_ten_golden(self, qwoa_instance):
        spectrum = enumerate_spectrum(qwoa_instance)
        assert spectrum.min_value == 4
        assert encode(QWOA_EXAMPLE_SOLUTION) in spectrum.argmins
        assert len(spectrum.argmins) == 2

    def test_fifteen_row_minimum(self, qaoa_instance):
        spectrum = enumerate_spectrum(qaoa_instance)
        assert spectrum.min_value == 11
        assert len(spectrum.argmins) == 4

    def test_identity(self):
        assert enumerate_spectrum(SetBalancingInstance(np.eye(2, dtype=int))).min_value == 2

    def test_zero_matrix(self):
        spectrum = enumerate_spectrum(SetBalancingInstance(np.zeros((2, 3), dtype=int)))
        assert spectrum.min_value == 0 and len(spectrum.argmins) == 8

    def test_invariants(self, qaoa_instance):
        spectrum = enumerate_spectrum(qaoa_instance)
        assert sum(spectrum.histogram.values()) == 1024
        full = 1023
        assert set(spectrum.argmins) == {x ^ full for x in spectrum.argmins}
        for b in spectrum.bicolorings:
            assert objective(qaoa_instance, b) == spectrum.min_value
        assert list(spectrum.argmins) == sorted(spectrum.argmins)

    def test_size_cap(self):
        with pytest.raises(SizeError):
            enumerate_spectrum(random_instance(2, 6, seed=0), max_n=5)

    def test_json_schema(self, qwoa_instance):
        payload = json.loads(enumerate_spectrum(qwoa_instance).to_json())
        jsonschema.validate(payload, load_schema("spectrum"))
        assert payload["min_value"] == 4 and payload["argmin_count"] == 2

    @given(st.integers(1, 8), st.integers(1, 13), st.integers(0, 10_000))
    def test_gray_code_matches_naive(self, m, n, seed):
        inst = random_instance(m, n, seed=seed)
        np.testing.assert_array_equal(objective_table(inst), naive_table(inst))

    @given(st.integers(1, 6), st.integers(1, 12), st.integers(0, 10_000))
    def test_histogram_equals_diagonal_multiset(self, m, n, seed):
        inst = random_instance(m, n, seed=seed)
        spectrum = enumerate_spectrum(inst)
        values, counts = np.unique(cost_diagonal(inst).values, return_counts=True)
        assert spectrum.histogram == {float(v): int(c) for v, c in zip(values, counts)}
        odd_rows = int(np.sum(inst.matrix.sum(axis=1) % 2))
        assert spectrum.min_value >= odd_rows

    def test_weighted(self):
        inst = SetBalancingInstance(np.array([[1, 1, 0], [0, 1, 1]]), weights=[1.5, 0.5])
        table = objective_table(inst)
        for x in range(8):
            b = np.array([-1 if (x >> k) & 1 else 1 for k in range(3)])
            assert table[x] == pytest.approx(objective(inst, b))


class TestLocalSearch:
    def test_zero_matrix_returns_start(self):
        inst = SetBalancingInstance(np.zeros((2, 4), dtype=int))
        start = np.random.default_rng(3).choice(np.array([-1, 1]), size=4)
        np.testing.assert_array_equal(local_search(inst, seed=3), start)

    def test_pair_balances(self):
        inst = SetBalancingInstance(np.array([[1, 1]]))
        for seed in range(5):
            b = local_search(inst, seed=seed)
            assert objective(inst, b) == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_one_flip_optimal(self, seed):
        inst = random_instance(12, 12, seed=seed)
        b = local_search(inst, seed=seed)
        f = objective(inst, b)
        assert f >= enumerate_spectrum(inst).min_value
        for k in range(12):
            flipped = b.copy()
            flipped[k] = -flipped[k]
            assert objective(inst, flipped) >= f

    def test_small_instances_reach_optimum(self):
        for seed in range(10):
            inst = random_instance(5, 6, seed=100 + seed)
            best = enumerate_spectrum(inst).min_value
            found = min(objective(inst, local_search(inst, seed=s)) for s in range(8))
            assert found == best
