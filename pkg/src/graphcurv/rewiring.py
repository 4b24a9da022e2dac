"""Curvature-guided rewiring: per iteration, support the most negatively
curved edges with new edges between their neighborhoods and remove the most
positively curved ones, keeping the graph connected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .curvature import build_transport_problem, optimal_plan, orc_all
from .graph import Graph, GraphError, canonical_edge, is_connected_without_edge

DEFAULT_PARAMS = {"n_iters": 3, "k_add": 4, "k_remove": 4, "h_per_edge": 1}


@dataclass
class RewiringPlan:
    """Replayable record of additions (with their trigger edge) and removals."""

    additions: list = field(default_factory=list)  # (added EdgeKey, trigger EdgeKey, iter)
    removals: list = field(default_factory=list)  # (EdgeKey, iter)
    iterations: int = 0
    params: dict = field(default_factory=dict)

    def to_jsonl(self):
        lines = []
        for (u, v), (tu, tv), it in self.additions:
            lines.append(
                json.dumps(
                    {"op": "add", "u": u, "v": v, "trigger_u": tu, "trigger_v": tv, "iter": it}
                )
            )
        for (u, v), it in self.removals:
            lines.append(
                json.dumps(
                    {"op": "remove", "u": u, "v": v, "trigger_u": None, "trigger_v": None, "iter": it}
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")


def replay_plan(g, plan):
    """Apply a recorded plan to a graph, replaying actions in iteration order."""
    edges = set(g.edges())
    actions = [("add", e, it) for e, _, it in plan.additions] + [
        ("remove", e, it) for e, it in plan.removals
    ]
    # within an iteration, additions happen before removals
    actions.sort(key=lambda a: (a[2], 0 if a[0] == "add" else 1))
    for op, e, _ in actions:
        e = canonical_edge(*e)
        if op == "add":
            if e in edges:
                raise GraphError(f"plan adds existing edge {e}")
            edges.add(e)
        else:
            if e not in edges:
                raise GraphError(f"plan removes missing edge {e}")
            edges.remove(e)
    return Graph(g.num_nodes, sorted(edges), g.node_features)


def _candidate_additions(g, e, h, measure, alpha):
    """Non-edges (p, q) between the two neighborhoods of a low-curvature
    edge, ranked by descending transported mass in one fixed optimal plan,
    ties broken lexicographically."""
    u, v = canonical_edge(*e)
    problem = build_transport_problem(g, (u, v), measure, alpha)
    plan = optimal_plan(problem)
    scored = []
    for i, p in enumerate(problem.source_support):
        for j, q in enumerate(problem.target_support):
            p_i, q_j = int(p), int(q)
            if p_i == q_j or g.has_edge(p_i, q_j):
                continue
            scored.append((-plan[i, j], canonical_edge(p_i, q_j)))
    scored.sort()
    out = []
    seen = set()
    for _, key in scored:
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
        if len(out) == h:
            break
    return out


def curvature_rewire(
    g,
    n_iters=DEFAULT_PARAMS["n_iters"],
    k_add=DEFAULT_PARAMS["k_add"],
    k_remove=DEFAULT_PARAMS["k_remove"],
    h_per_edge=DEFAULT_PARAMS["h_per_edge"],
    measure="open_uniform",
    alpha=0.5,
    threads=None,
):
    """Iterative curvature rewiring.

    Each iteration recomputes exact ORC, adds up to h_per_edge supporting
    non-edges around each of the k_add most negative edges, then removes the
    k_remove most positive edges, skipping bridges and anything added this
    iteration. Fully deterministic.
    """
    if min(n_iters, k_add, k_remove, h_per_edge) < 0:
        raise GraphError("rewiring parameters must be nonnegative")
    if k_remove > g.num_edges:
        raise GraphError("k_remove exceeds edge count")
    plan = RewiringPlan(
        params={
            "n_iters": n_iters,
            "k_add": k_add,
            "k_remove": k_remove,
            "h_per_edge": h_per_edge,
        }
    )
    current = g
    for it in range(n_iters):
        curvs = orc_all(current, measure=measure, alpha=alpha, threads=threads)
        ranked = sorted(curvs.values.items(), key=lambda kv: (kv[1], kv[0]))
        added_now = set()
        new_edges = set(current.edges())

        for e, _ in ranked[:k_add]:
            for cand in _candidate_additions(current, e, h_per_edge, measure, alpha):
                if cand in new_edges or cand in added_now:
                    continue
                added_now.add(cand)
                new_edges.add(cand)
                plan.additions.append((cand, e, it))
        after_add = Graph(current.num_nodes, sorted(new_edges), current.node_features)

        removed = 0
        working = after_add
        # highest curvature first, lexicographic tie-break
        for e, _ in sorted(curvs.values.items(), key=lambda kv: (-kv[1], kv[0])):
            if removed == k_remove:
                break
            if e in added_now:
                continue
            u, v = e
            if not working.has_edge(u, v):
                continue
            if not is_connected_without_edge(working, u, v):
                continue  # bridge: removal would disconnect
            es = set(working.edges())
            es.remove(e)
            if not es:
                raise GraphError("rewiring parameters would empty the edge set")
            working = Graph(working.num_nodes, sorted(es), working.node_features)
            plan.removals.append((e, it))
            removed += 1
        current = working
        plan.iterations = it + 1
    return current, plan
