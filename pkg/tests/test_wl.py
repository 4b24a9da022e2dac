import numpy as np
import pytest

from graphcurv import (
    Graph,
    complete,
    cycle,
    discretize_features,
    distinguishable,
    path,
    rook4x4,
    shrikhande,
    wl_refine,
)
from graphcurv.encodings import FeatureMatrix
from graphcurv.wl import wl_refine_pair

from oracles import er_graph_positive_degrees


class TestRefine:
    def test_isomorphic_cycles_equal(self):
        h1, h2 = wl_refine_pair(cycle(6), cycle(6))
        assert h1 == h2

    def test_rook_vs_shrikhande_plain_wl_equal(self):
        h1, h2 = wl_refine_pair(rook4x4(), shrikhande())
        assert h1 == h2

    def test_path3_vs_cycle3_differ(self):
        h1, h2 = wl_refine_pair(path(3), cycle(3), max_rounds=1)
        assert h1 != h2

    def test_histogram_total_is_num_nodes(self):
        h = wl_refine(cycle(5))
        assert sum(h.counts.values()) == 5

    def test_monotone_color_counts(self):
        rng = np.random.default_rng(31)
        g = er_graph_positive_degrees(rng, 12, 0.3, Graph)
        counts = [wl_refine(g, max_rounds=r).num_colors for r in range(1, 6)]
        assert counts == sorted(counts)

    def test_init_labels_length_checked(self):
        with pytest.raises(Exception):
            wl_refine(path(3), init_labels=[0, 1])


class TestDiscretize:
    def test_all_zero_single_label(self):
        fm = FeatureMatrix(np.zeros((4, 3)), [("x", 3)])
        labels = discretize_features(fm)
        assert len(set(labels)) == 1

    def test_rook_vs_shrikhande_lcp_labels(self):
        from graphcurv import lcp_summary, orc_all

        r, s = rook4x4(), shrikhande()
        lr = discretize_features(lcp_summary(r, orc_all(r)))
        ls = discretize_features(lcp_summary(s, orc_all(s)))
        assert len(set(lr)) == 1 and len(set(ls)) == 1
        assert set(lr) != set(ls)

    def test_rounding_merges_near_equal_rows(self):
        fm = FeatureMatrix(np.array([[0.1], [0.1 + 1e-9]]), [("x", 1)])
        labels = discretize_features(fm, decimals=6)
        assert labels[0] == labels[1]


class TestDistinguishable:
    def test_theorem_witness_triple(self):
        r, s = rook4x4(), shrikhande()
        assert distinguishable(r, s, "none")[0] is False
        assert distinguishable(r, s, "lcp")[0] is True
        assert distinguishable(r, s, "ldp")[0] is False

    def test_combinatorial_lcp_cannot_separate_srg_pair(self):
        # Jost-Liu bounds depend only on degrees and triangle counts, which
        # agree on the two strongly regular graphs
        assert distinguishable(rook4x4(), shrikhande(), "lcp_combinatorial")[0] is False

    def test_isomorphism_soundness_random_permutations(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            g = er_graph_positive_degrees(rng, 9, 0.35, Graph)
            perm = rng.permutation(g.num_nodes)
            gp = Graph(g.num_nodes, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])
            for encoding in ("none", "lcp", "ldp"):
                assert distinguishable(g, gp, encoding)[0] is False

    def test_different_sizes_separate(self):
        assert distinguishable(cycle(5), cycle(6), "none")[0] is True
