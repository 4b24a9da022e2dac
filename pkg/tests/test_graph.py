import io

import numpy as np
import pytest

from graphcurv import (
    Graph,
    GraphError,
    ParseError,
    complete,
    cycle,
    edge_motif_counts,
    generate_named,
    local_distances,
    parse_edge_list,
    parse_tu_dataset,
    path,
    rook4x4,
    shrikhande,
    star,
)
from graphcurv.graph import UNREACHABLE, bfs_distances, connected_components

from oracles import motif_counts_bruteforce


class TestParseEdgeList:
    def test_basic(self):
        g, report = parse_edge_list("0 1\n1 2")
        assert g.num_nodes == 3
        assert list(g.edges()) == [(0, 1), (1, 2)]
        assert report.self_loops_dropped == 0

    def test_one_indexed_dedup_and_self_loop(self):
        g, report = parse_edge_list("1 2\n2 1\n1 1", one_indexed=True)
        assert g.num_nodes == 2
        assert list(g.edges()) == [(0, 1)]
        assert report.self_loops_dropped == 1
        assert report.duplicates_collapsed == 1

    def test_rook_edge_file_round_trip(self):
        text = rook4x4().to_edge_list()
        assert len(text.strip().splitlines()) == 48
        g, _ = parse_edge_list(text)
        assert g.num_nodes == 16
        assert g.num_edges == 48
        assert all(g.degree(v) == 6 for v in range(16))

    def test_comments_and_stream_input(self):
        g, _ = parse_edge_list(io.StringIO("# header\n0 1 # trailing\n"))
        assert list(g.edges()) == [(0, 1)]

    def test_malformed_line_reports_number(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_edge_list("0 1\n0 x")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_edge_list("# nothing\n")

    def test_json_round_trip(self):
        g, _ = parse_edge_list("0 1\n1 2\n0 2")
        again = Graph.from_json(g.to_json())
        assert again == g


class TestTUDataset:
    def make_toy(self, tmp_path, name="TOY"):
        d = tmp_path / name
        d.mkdir()
        (d / f"{name}_A.txt").write_text("1, 2\n2, 1\n3, 4\n4, 3\n")
        (d / f"{name}_graph_indicator.txt").write_text("1\n1\n2\n2\n")
        return d

    def test_two_k2_graphs(self, tmp_path):
        coll = parse_tu_dataset(self.make_toy(tmp_path))
        assert len(coll) == 2
        for g in coll:
            assert g.num_nodes == 2
            assert list(g.edges()) == [(0, 1)]

    def test_node_labels_one_hot(self, tmp_path):
        d = self.make_toy(tmp_path)
        (d / "TOY_node_labels.txt").write_text("0\n1\n1\n0\n")
        (d / "TOY_graph_labels.txt").write_text("1\n2\n")
        coll = parse_tu_dataset(d)
        assert coll.labels == [1, 2]
        assert np.array_equal(coll.graphs[0].node_features, [[1, 0], [0, 1]])

    def test_cross_graph_edge_rejected(self, tmp_path):
        d = tmp_path / "BAD"
        d.mkdir()
        (d / "BAD_A.txt").write_text("1, 2\n2, 3\n")
        (d / "BAD_graph_indicator.txt").write_text("1\n1\n2\n")
        with pytest.raises(ParseError, match="crosses graph boundary"):
            parse_tu_dataset(d)

    def test_missing_indicator(self, tmp_path):
        d = tmp_path / "NOIND"
        d.mkdir()
        (d / "NOIND_A.txt").write_text("1, 2\n")
        with pytest.raises(ParseError):
            parse_tu_dataset(d)


class TestGenerators:
    @pytest.mark.parametrize("builder", [rook4x4, shrikhande])
    def test_strongly_regular_16_6_2_2(self, builder):
        g = builder()
        assert g.num_nodes == 16
        assert g.num_edges == 48
        assert all(g.degree(v) == 6 for v in range(16))
        for u in range(16):
            for v in range(u + 1, 16):
                common = len(g.neighbor_set(u) & g.neighbor_set(v))
                assert common == (2 if g.has_edge(u, v) else 2)

    def test_rook_and_shrikhande_triangles(self):
        for g in (rook4x4(), shrikhande()):
            for e in g.edges():
                tri, _ = motif_counts_bruteforce(g, *e)
                assert tri == 2
                assert edge_motif_counts(g, e).triangles == 2

    def test_named_dispatch(self):
        assert generate_named("complete(4)").num_edges == 6
        assert generate_named("cycle(5)").num_edges == 5
        assert generate_named("path(3)").num_edges == 2
        assert generate_named("star(4)").degree(0) == 4
        with pytest.raises(GraphError):
            generate_named("petersen")
        with pytest.raises(GraphError):
            generate_named("complete(1)")

    def test_handshake(self):
        for g in (rook4x4(), shrikhande(), complete(6), cycle(9), star(5)):
            assert int(g.degrees().sum()) == 2 * g.num_edges


class TestMotifs:
    def test_cycle4_edge(self):
        counts = edge_motif_counts(cycle(4), (0, 1))
        assert (counts.triangles, counts.quadrangles) == (0, 1)

    def test_complete3_edge(self):
        counts = edge_motif_counts(complete(3), (0, 1))
        assert (counts.triangles, counts.quadrangles) == (1, 0)

    def test_complete4_no_quadrangles(self):
        for e in complete(4).edges():
            counts = edge_motif_counts(complete(4), e)
            assert (counts.triangles, counts.quadrangles) == (2, 0)

    def test_symmetry_under_canonicalization(self):
        g = rook4x4()
        for u, v in list(g.edges())[:10]:
            assert edge_motif_counts(g, (u, v)) == edge_motif_counts(g, (v, u))

    def test_against_bruteforce_on_random_graphs(self):
        from oracles import er_graph

        rng = np.random.default_rng(7)
        for _ in range(20):
            g = er_graph(rng, 12, 0.3, Graph)
            for e in g.edges():
                counts = edge_motif_counts(g, e)
                assert (counts.triangles, counts.quadrangles) == motif_counts_bruteforce(g, *e)

    def test_non_edge_rejected(self):
        with pytest.raises(GraphError):
            edge_motif_counts(path(3), (0, 2))


class TestDistances:
    def test_path3(self):
        table = local_distances(path(3), {0}, 3)
        assert list(table[0]) == [0, 1, 2]

    def test_disconnected(self):
        g = Graph(4, [(0, 1), (2, 3)])
        table = local_distances(g, {0}, 3)
        assert table[0][2] == UNREACHABLE and table[0][3] == UNREACHABLE

    def test_cycle6_radius2(self):
        d = local_distances(cycle(6), {0}, 2)[0]
        assert d[5] == 1 and d[1] == 1
        assert d[4] == 2 and d[2] == 2
        assert d[3] == UNREACHABLE

    def test_source_out_of_range(self):
        with pytest.raises(GraphError):
            bfs_distances(path(3), 9, 2)

    def test_radius_validation(self):
        with pytest.raises(GraphError):
            local_distances(path(3), {0}, 0)


class TestRoundTripProperties:
    from hypothesis import given, settings
    from hypothesis import strategies as st

    edge_lists = st.lists(
        st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=1, max_size=40
    )

    @given(edge_lists)
    @settings(max_examples=60, deadline=None)
    def test_parse_serialize_round_trip_and_handshake(self, pairs):
        text = "\n".join(f"{u} {v}" for u, v in pairs)
        g, _ = parse_edge_list(text)
        assert int(g.degrees().sum()) == 2 * g.num_edges
        assert Graph.from_json(g.to_json()) == g
        if g.num_edges:
            again, _ = parse_edge_list(g.to_edge_list())
            assert list(again.edges()) == list(g.edges())


class TestGraphInvariants:
    def test_self_loop_rejected(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 0)])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 1), (1, 0)])

    def test_adjacency_sorted_and_symmetric(self):
        g = Graph(4, [(2, 0), (3, 1), (0, 3)])
        for u in range(4):
            nbrs = g.neighbors(u)
            assert list(nbrs) == sorted(nbrs)
            for v in nbrs:
                assert u in g.neighbors(int(v))

    def test_immutable_adjacency(self):
        g = path(3)
        with pytest.raises(ValueError):
            g.neighbors(0)[0] = 5

    def test_components(self):
        g = Graph(5, [(0, 1), (2, 3)])
        assert connected_components(g) == [[0, 1], [2, 3], [4]]
