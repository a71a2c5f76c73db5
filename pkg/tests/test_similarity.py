import math

import numpy as np
import pytest

from isofdp import (
    GnSpec,
    generate_gn,
    load_edge_list,
    similarity_matrix,
    structure_similarity,
    to_distance,
)
from isofdp.similarity import MEASURES

TRIANGLE = load_edge_list("0 1\n1 2\n2 0")
PATH3 = load_edge_list("a b\nb c")
TWO_EDGES = load_edge_list("0 1\n2 3")


class TestStructureSimilarity:
    def test_triangle_adjacent_pair_is_one(self):
        assert structure_similarity(TRIANGLE, 0, 1) == 1.0

    def test_path_end_pair(self):
        # N(a) = {a, b}, N(b) = {a, b, c}: overlap 2 of sqrt(2 * 3)
        expected = 2 / math.sqrt(6)
        assert structure_similarity(PATH3, 0, 1) == pytest.approx(expected, abs=1e-12)

    def test_disjoint_closed_neighborhoods(self):
        assert structure_similarity(TWO_EDGES, 0, 2) == 0.0

    def test_self_similarity_is_one(self):
        for v in range(PATH3.node_count):
            assert structure_similarity(PATH3, v, v) == 1.0

    def test_symmetry(self):
        rng = np.random.default_rng(5)
        g = generate_gn(GnSpec(z_out=5, seed=9)).graph
        for _ in range(50):
            v, w = rng.integers(0, g.node_count, size=2)
            assert structure_similarity(g, int(v), int(w)) == pytest.approx(
                structure_similarity(g, int(w), int(v)), abs=0
            )

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            structure_similarity(PATH3, 0, 99)


class TestSimilarityMatrix:
    def test_complete_graph_all_ones(self):
        sim = similarity_matrix(TRIANGLE, "structure")
        assert np.allclose(sim.values, 1.0)

    def test_matches_pairwise_function(self):
        g = PATH3
        sim = similarity_matrix(g, "structure")
        for v in range(g.node_count):
            for w in range(g.node_count):
                assert sim.values[v, w] == pytest.approx(
                    structure_similarity(g, v, w), abs=1e-12
                )

    def test_jaccard_cross_pair_zero(self):
        sim = similarity_matrix(TWO_EDGES, "jaccard")
        assert sim.values[0, 2] == 0.0

    @pytest.mark.parametrize("measure", MEASURES)
    def test_symmetric_unit_diagonal_in_range(self, measure):
        g = generate_gn(GnSpec(z_out=4, seed=2)).graph
        sim = similarity_matrix(g, measure)
        assert np.allclose(sim.values, sim.values.T)
        assert np.allclose(np.diag(sim.values), 1.0)
        assert sim.values.min() >= 0.0
        assert sim.values.max() <= 1.0 + 1e-12
        assert sim.measure == measure

    def test_unknown_measure(self):
        with pytest.raises(ValueError, match="unknown measure"):
            similarity_matrix(TRIANGLE, "minkowski")

    def test_low_diversity_on_clear_benchmark(self):
        # near-regular structure yields very few distinct values across the
        # 128 * 127 / 2 = 8128 node pairs: order tens, not thousands
        g = generate_gn(GnSpec(z_out=2, seed=1)).graph
        sim = similarity_matrix(g, "structure")
        iu = np.triu_indices(g.node_count, k=1)
        distinct = np.unique(np.round(sim.values[iu], 12)).size
        assert iu[0].size == 8128
        assert distinct < 100


class TestToDistance:
    def test_unit_similarity_maps_to_unit_distance(self):
        d = to_distance(np.array([[1.0, 1.0], [1.0, 1.0]]))
        assert d.values[0, 1] == 1.0

    def test_zero_similarity_maps_to_inf(self):
        d = to_distance(np.array([[1.0, 0.0], [0.0, 1.0]]))
        assert np.isinf(d.values[0, 1])

    def test_diagonal_is_zero(self):
        sim = similarity_matrix(TRIANGLE, "structure")
        d = to_distance(sim)
        assert np.all(np.diag(d.values) == 0.0)

    def test_negative_similarity_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            to_distance(np.array([[1.0, -0.1], [-0.1, 1.0]]))

    def test_strictly_antitone_on_finite_values(self):
        rng = np.random.default_rng(0)
        s = rng.uniform(0.05, 1.0, size=(6, 6))
        s = (s + s.T) / 2
        d = to_distance(s).values
        iu = np.triu_indices(6, k=1)
        for i in range(len(iu[0])):
            for j in range(len(iu[0])):
                s1, s2 = s[iu][i], s[iu][j]
                if s1 > s2:
                    assert d[iu][i] < d[iu][j]
