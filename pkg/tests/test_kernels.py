"""Backend parity for the compiled kernels and backend selection itself."""

from __future__ import annotations

import itertools
import os
import random
import subprocess
import sys

import numpy as np
import pytest

import helpers
import oracles
from relgap import kernels
from relgap.features import adamic_adar, common_neighbours
from relgap.kernels import _numba, _numpy, graph_csr, pair_id_arrays

BACKENDS = [("numpy", _numpy), ("numba", _numba)]


def csr_of(graph):
    _nodes, index, indptr, indices = graph_csr(graph)
    return index, indptr, indices


class TestGraphCsr:
    def test_lexicographic_node_order_and_sorted_rows(self):
        g = helpers.random_graph(random.Random(3), 9, 0.5)
        nodes, index, indptr, indices = graph_csr(g)
        assert nodes == sorted(g.nodes)
        assert index == {node: i for i, node in enumerate(nodes)}
        for i, node in enumerate(nodes):
            row = indices[indptr[i] : indptr[i + 1]]
            assert sorted(row.tolist()) == row.tolist()
            assert {nodes[j] for j in row} == g.adjacency[node]

    def test_empty_graph(self):
        from relgap.graphs import UndirectedGraph

        nodes, index, indptr, indices = graph_csr(UndirectedGraph())
        assert nodes == []
        assert indptr.tolist() == [0]
        assert indices.size == 0

    def test_pair_id_arrays(self):
        index = {"a": 0, "b": 1, "c": 2}
        xs, ys = pair_id_arrays(index, [("a", "c"), ("b", "a")])
        assert xs.tolist() == [0, 1]
        assert ys.tolist() == [2, 0]
        assert xs.dtype == np.int64


class TestPairCnAa:
    @pytest.mark.parametrize(("name", "impl"), BACKENDS)
    def test_matches_scalar_reference(self, name, impl):
        rng = random.Random(17)
        for _ in range(10):
            g = helpers.random_graph(rng, rng.randint(2, 20), rng.uniform(0.1, 0.8))
            nodes = sorted(g.nodes)
            pairs = list(itertools.combinations(nodes, 2))
            if not pairs:
                continue
            index, indptr, indices = csr_of(g)
            xs, ys = pair_id_arrays(index, pairs)
            cn, aa = impl.pair_cn_aa(indptr, indices, xs, ys)
            for k, (x, y) in enumerate(pairs):
                assert int(cn[k]) == common_neighbours(g, x, y)
                if name == "numba":
                    # The merge visits z ascending, same as the scalar sum.
                    assert float(aa[k]) == adamic_adar(g, x, y)
                else:
                    assert float(aa[k]) == pytest.approx(adamic_adar(g, x, y), rel=1e-12)

    def test_backends_agree(self):
        rng = random.Random(29)
        g = helpers.random_graph(rng, 25, 0.3)
        nodes = sorted(g.nodes)
        pairs = list(itertools.combinations(nodes, 2))
        index, indptr, indices = csr_of(g)
        xs, ys = pair_id_arrays(index, pairs)
        cn_a, aa_a = _numpy.pair_cn_aa(indptr, indices, xs, ys)
        cn_b, aa_b = _numba.pair_cn_aa(indptr, indices, xs, ys)
        assert np.array_equal(cn_a, cn_b)
        assert np.allclose(aa_a, aa_b, rtol=1e-12, atol=0.0)

    @pytest.mark.parametrize(("name", "impl"), BACKENDS)
    def test_empty_pair_list(self, name, impl):
        g = helpers.random_graph(random.Random(1), 4, 0.5)
        _index, indptr, indices = csr_of(g)
        empty = np.empty(0, dtype=np.int64)
        cn, aa = impl.pair_cn_aa(indptr, indices, empty, empty)
        assert cn.size == 0 and aa.size == 0


class TestInstanceCommonTotal:
    @pytest.mark.parametrize(("name", "impl"), BACKENDS)
    def test_matches_naive_oracle(self, name, impl):
        rng = random.Random(37)
        for _ in range(8):
            g = helpers.random_graph(rng, rng.randint(2, 14), rng.uniform(0.2, 0.7))
            nodes = sorted(g.nodes)
            edges = helpers.edge_list(g)
            group_x = sorted(rng.sample(nodes, rng.randint(1, len(nodes))))
            group_y = sorted(rng.sample(nodes, rng.randint(1, len(nodes))))
            index, indptr, indices = csr_of(g)
            ix = np.array([index[n] for n in group_x], dtype=np.int64)
            iy = np.array([index[n] for n in group_y], dtype=np.int64)
            total, pairs = impl.instance_common_total(indptr, indices, ix, iy)
            expected = oracles.naive_prophet_total(edges, group_x, group_y)
            assert (int(total), int(pairs)) == expected

    @pytest.mark.parametrize(("name", "impl"), BACKENDS)
    def test_empty_group_gives_zero(self, name, impl):
        g = helpers.random_graph(random.Random(2), 5, 0.5)
        index, indptr, indices = csr_of(g)
        empty = np.empty(0, dtype=np.int64)
        one = np.array([0], dtype=np.int64)
        assert tuple(int(v) for v in impl.instance_common_total(indptr, indices, empty, one)) == (0, 0)
        assert tuple(int(v) for v in impl.instance_common_total(indptr, indices, one, empty)) == (0, 0)

    @pytest.mark.parametrize(("name", "impl"), BACKENDS)
    def test_identical_singleton_groups_count_nothing(self, name, impl):
        g = helpers.random_graph(random.Random(4), 6, 0.6)
        index, indptr, indices = csr_of(g)
        one = np.array([1], dtype=np.int64)
        assert tuple(int(v) for v in impl.instance_common_total(indptr, indices, one, one)) == (0, 0)


def _backend_in_subprocess(value: str | None) -> subprocess.CompletedProcess:
    env = dict(os.environ)
    env.pop("RELGAP_BACKEND", None)
    if value is not None:
        env["RELGAP_BACKEND"] = value
    return subprocess.run(
        [sys.executable, "-c", "import relgap.kernels as k; print(k.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
    )


class TestBackendSelection:
    def test_in_process_backend_is_valid(self):
        assert kernels.BACKEND in ("numpy", "numba")
        assert kernels.pair_cn_aa is getattr(kernels._impl, "pair_cn_aa")

    @pytest.mark.parametrize("value", ["numpy", "numba"])
    def test_env_forces_backend(self, value):
        proc = _backend_in_subprocess(value)
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == value

    def test_unset_prefers_numba_when_available(self):
        proc = _backend_in_subprocess(None)
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip() == "numba"

    def test_invalid_value_rejected_at_import(self):
        proc = _backend_in_subprocess("cuda")
        assert proc.returncode != 0
        assert "RELGAP_BACKEND" in proc.stderr
        assert "RuntimeError" in proc.stderr
