"""1-WL color refinement with pluggable initial node labels.

Colors are canonical integer ids assigned by sorting the distinct
refinement keys each round, never truncated hashes, so two graphs refined
jointly have directly comparable histograms and collisions are impossible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graph import GraphError

DISCRETIZE_DECIMALS = 6


@dataclass
class ColorHistogram:
    """Multiset of stable color ids; comparable across jointly refined graphs."""

    counts: Counter
    rounds: int

    def __eq__(self, other):
        return self.counts == other.counts

    @property
    def num_colors(self):
        return len(self.counts)


def _refine_joint(graphs, init_labels, max_rounds):
    """Refine several graphs against a shared color table.

    Returns (per-graph color arrays, rounds used). Stops when the joint
    partition stabilizes (no node pair anywhere splits further).
    """
    colorings = []
    table = {}
    for g, labels in zip(graphs, init_labels):
        if labels is None:
            labels = [0] * g.num_nodes
        if len(labels) != g.num_nodes:
            raise GraphError("init_labels length must equal num_nodes")
        colorings.append(list(labels))
    # canonical initial ids: sort distinct labels
    distinct = sorted({l for c in colorings for l in c}, key=repr)
    table = {l: i for i, l in enumerate(distinct)}
    colorings = [[table[l] for l in c] for c in colorings]

    rounds = 0
    while max_rounds is None or rounds < max_rounds:
        keys = []
        for g, colors in zip(graphs, colorings):
            keys.append(
                [
                    (colors[v], tuple(sorted(colors[int(w)] for w in g.neighbors(v))))
                    for v in range(g.num_nodes)
                ]
            )
        distinct = sorted({k for ks in keys for k in ks})
        new_table = {k: i for i, k in enumerate(distinct)}
        new_colorings = [[new_table[k] for k in ks] for ks in keys]
        rounds += 1
        if _same_partition(colorings, new_colorings):
            colorings = new_colorings
            break
        colorings = new_colorings
    return colorings, rounds


def _same_partition(old, new):
    pair_map = {}
    for o, n in zip(old, new):
        for a, b in zip(o, n):
            if a in pair_map:
                if pair_map[a] != b:
                    return False
            else:
                pair_map[a] = b
    # partition is stable iff the refinement is a bijection old -> new
    return len(set(pair_map.values())) == len(pair_map)


def wl_refine(g, init_labels=None, max_rounds=None):
    """Standard 1-WL refinement of one graph; returns the final histogram."""
    colorings, rounds = _refine_joint([g], [init_labels], max_rounds)
    return ColorHistogram(Counter(colorings[0]), rounds)


def wl_refine_pair(g1, g2, labels1=None, labels2=None, max_rounds=None):
    """Joint refinement of two graphs over a shared color table."""
    colorings, rounds = _refine_joint([g1, g2], [labels1, labels2], max_rounds)
    return (
        ColorHistogram(Counter(colorings[0]), rounds),
        ColorHistogram(Counter(colorings[1]), rounds),
    )


def discretize_features(fm, decimals=DISCRETIZE_DECIMALS):
    """Per-node discrete labels from a feature matrix: rows rounded to
    `decimals` places; equal rounded rows get equal labels.

    Labels are the rounded tuples themselves (hashable), so labels from
    different graphs are directly comparable.
    """
    rounded = np.round(fm.data, decimals)
    rounded += 0.0  # normalize -0.0 to 0.0
    return [tuple(row) for row in rounded]


def _encoding_labels(g, encoding, decimals=DISCRETIZE_DECIMALS):
    from . import encodings as enc
    from .curvature import orc_all

    if encoding == "none":
        return None
    if encoding in ("lcp", "lcp_summary"):
        return discretize_features(enc.lcp_summary(g, orc_all(g)), decimals)
    if encoding == "lcp_extremes":
        return discretize_features(enc.lcp_extremes(g, orc_all(g)), decimals)
    if encoding == "lcp_minmax":
        return discretize_features(enc.lcp_minmax(g, orc_all(g)), decimals)
    if encoding == "lcp_combinatorial":
        return discretize_features(enc.lcp_combinatorial(g), decimals)
    if encoding == "ldp":
        return discretize_features(enc.ldp(g), decimals)
    if encoding == "rwpe":
        return discretize_features(enc.rwpe(g), decimals)
    if encoding == "lape":
        return discretize_features(enc.lape(g), decimals)
    raise GraphError(f"unknown encoding {encoding!r}")


def distinguishable(g1, g2, encoding="none", max_rounds=None, decimals=DISCRETIZE_DECIMALS):
    """1-WL verdict for a graph pair under an initial-label encoding.

    Returns (separated, rounds): separated is True iff the final color
    histograms differ.
    """
    l1 = _encoding_labels(g1, encoding, decimals)
    l2 = _encoding_labels(g2, encoding, decimals)
    h1, h2 = wl_refine_pair(g1, g2, l1, l2, max_rounds)
    return h1 != h2, max(h1.rounds, h2.rounds)
