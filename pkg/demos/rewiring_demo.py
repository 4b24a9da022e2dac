"""Curvature rewiring on a barbell graph.

The bridge between the two cliques is the bottleneck: it carries the most
negative Ollivier curvature, so the rewiring pass supports it with a new
edge between the cliques, while removals target the positively curved
intra-clique edges (and never the bridge itself).

Run: python3 demos/rewiring_demo.py
"""

import graphcurv as gc


def barbell():
    edges = []
    for base in (0, 5):
        for i in range(5):
            for j in range(i + 1, 5):
                edges.append((base + i, base + j))
    edges.append((4, 5))
    return gc.Graph(10, edges)


def main():
    g = barbell()
    curv = gc.orc_all(g)
    ranked = sorted(curv.values.items(), key=lambda kv: kv[1])
    print("most negative edges:")
    for e, k in ranked[:3]:
        print(f"  {e}: {k:+.4f}")
    print("most positive edges:")
    for e, k in ranked[-3:]:
        print(f"  {e}: {k:+.4f}")

    rewired, plan = gc.curvature_rewire(g, n_iters=1, k_add=1, k_remove=2)
    print(f"\nedges: {g.num_edges} -> {rewired.num_edges}")
    for added, trigger, it in plan.additions:
        print(f"  added {added} (triggered by {trigger}, iteration {it})")
    for removed, it in plan.removals:
        print(f"  removed {removed} (iteration {it})")

    replayed = gc.replay_plan(g, plan)
    print("plan replays to the same graph:", replayed == rewired)


if __name__ == "__main__":
    main()
