import json

import numpy as np
import pytest

from graphcurv import Graph, GraphError, complete, curvature_rewire, orc_all, replay_plan
from graphcurv.graph import connected_components

from oracles import er_graph_positive_degrees


def barbell():
    """Two K5s joined by a single bridge edge."""
    edges = []
    for base in (0, 5):
        for i in range(5):
            for j in range(i + 1, 5):
                edges.append((base + i, base + j))
    edges.append((4, 5))
    return Graph(10, edges)


class TestRewire:
    def test_zero_iterations_identity(self):
        g = complete(4)
        out, plan = curvature_rewire(g, n_iters=0, k_add=3, k_remove=3)
        assert out == g
        assert plan.additions == [] and plan.removals == []
        assert plan.iterations == 0

    def test_barbell_bridge_triggers_addition(self):
        g = barbell()
        curvs = orc_all(g)
        bridge = (4, 5)
        assert curvs.values[bridge] == min(curvs.values.values())
        out, plan = curvature_rewire(g, n_iters=1, k_add=1, k_remove=0, h_per_edge=1)
        assert len(plan.additions) == 1
        added, trigger, it = plan.additions[0]
        assert trigger == bridge and it == 0
        # the support edge connects the two cliques
        assert (added[0] < 5) != (added[1] < 5)
        assert out.num_edges == g.num_edges + 1

    def test_complete5_removal_keeps_connected(self):
        g = complete(5)
        out, plan = curvature_rewire(g, n_iters=1, k_add=0, k_remove=1)
        assert len(plan.removals) == 1
        assert out.num_edges == g.num_edges - 1
        assert len(connected_components(out)) == 1

    def test_bridge_never_removed(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])  # all edges are bridges
        out, plan = curvature_rewire(g, n_iters=1, k_add=0, k_remove=2)
        assert plan.removals == []
        assert out == g

    def test_edge_count_bookkeeping(self):
        g = barbell()
        out, plan = curvature_rewire(g, n_iters=2, k_add=2, k_remove=1)
        assert out.num_edges == g.num_edges + len(plan.additions) - len(plan.removals)

    def test_replay_reconstructs_output(self):
        g = barbell()
        out, plan = curvature_rewire(g, n_iters=2, k_add=2, k_remove=2)
        assert replay_plan(g, plan).to_json() == out.to_json()

    def test_determinism(self):
        g = barbell()
        a = curvature_rewire(g, n_iters=2, k_add=2, k_remove=2)
        b = curvature_rewire(g, n_iters=2, k_add=2, k_remove=2)
        assert a[0] == b[0]
        assert a[1].additions == b[1].additions
        assert a[1].removals == b[1].removals

    def test_component_count_never_increases(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            g = er_graph_positive_degrees(rng, 10, 0.3, Graph)
            before = len(connected_components(g))
            out, _ = curvature_rewire(g, n_iters=1, k_add=1, k_remove=2)
            assert len(connected_components(out)) <= before

    def test_k_remove_validation(self):
        with pytest.raises(GraphError):
            curvature_rewire(complete(3), n_iters=1, k_remove=99)

    def test_plan_jsonl_format(self):
        g = barbell()
        _, plan = curvature_rewire(g, n_iters=1, k_add=1, k_remove=1)
        for line in plan.to_jsonl().strip().splitlines():
            rec = json.loads(line)
            assert rec["op"] in ("add", "remove")
            assert set(rec) == {"op", "u", "v", "trigger_u", "trigger_v", "iter"}

    def test_no_edge_added_and_removed_same_iteration(self):
        rng = np.random.default_rng(29)
        for _ in range(10):
            g = er_graph_positive_degrees(rng, 9, 0.35, Graph)
            _, plan = curvature_rewire(g, n_iters=2, k_add=3, k_remove=3)
            for it in range(plan.iterations):
                added = {e for e, _, i in plan.additions if i == it}
                removed = {e for e, i in plan.removals if i == it}
                assert not (added & removed)
