"""Feature-matrix walkthrough: LCP variants, LDP, LAPE, RWPE, assembly.

Run: python3 demos/encodings_tour.py
"""

import numpy as np

import graphcurv as gc


def main():
    g = gc.star(4)
    curv = gc.orc_all(g)

    print("star(4) per-edge curvature:")
    for e, k in curv.values.items():
        print(f"  {e}: {k:+.4f}")

    print("\nLCP summary [min, max, mean, std, median] per node:")
    print(np.round(gc.lcp_summary(g, curv).data, 4))

    print("\nLCP combinatorial-bound variant (no transport solves):")
    print(np.round(gc.lcp_combinatorial(g).data, 4))

    print("\nLDP [deg, min, max, mean, std of neighbor degrees]:")
    print(gc.ldp(g).data)

    c6 = gc.cycle(6)
    print("\ncycle(6) RWPE (odd walk lengths vanish, the graph is bipartite):")
    print(np.round(gc.rwpe(c6, 6).data[0], 4), "<- node 0, lengths 1..6")

    print("\ncycle(6) LAPE, 3 eigenvectors (unit columns, sign-fixed):")
    fm = gc.lape(c6, 3)
    print(np.round(fm.data, 3))
    print("column norms:", np.round(np.linalg.norm(fm.data, axis=0), 6))

    combined = gc.assemble([gc.lcp_summary(c6, gc.orc_all(c6)), gc.rwpe(c6, 16), gc.lape(c6, 8)])
    print(f"\nassembled matrix: {combined.data.shape}, groups {combined.groups}")


if __name__ == "__main__":
    main()
