"""Node-level structural and positional encodings.

Local Curvature Profiles (four variants), Local Degree Profiles,
Laplacian-eigenvector and random-walk positional encodings, and feature
assembly. All encoders emit a FeatureMatrix with named column groups;
isolated nodes always get zero rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh

from .curvature import bounds_all
from .graph import GraphError, canonical_edge, connected_components

LAPE_DEFAULT_K = 8
RWPE_DEFAULT_K = 16


@dataclass
class FeatureMatrix:
    """Dense |V| x d feature block with named column groups."""

    data: np.ndarray
    groups: list  # [(name, width), ...] in column order

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.data.ndim != 2:
            raise GraphError("feature data must be 2-D")
        if sum(w for _, w in self.groups) != self.data.shape[1]:
            raise GraphError("column-group widths do not sum to matrix width")
        if not np.isfinite(self.data).all():
            raise GraphError("feature matrix contains NaN/Inf")

    @property
    def width(self):
        return self.data.shape[1]

    def column_names(self):
        names = []
        for name, w in self.groups:
            names.extend(f"{name}_{i}" for i in range(w))
        return names


def _cms_rows(g, curvs, stat_fn, width, group):
    out = np.zeros((g.num_nodes, width))
    for v in range(g.num_nodes):
        nbrs = g.neighbors(v)
        if len(nbrs) == 0:
            continue
        cms = np.array([curvs.values[canonical_edge(v, int(w))] for w in nbrs])
        out[v] = stat_fn(cms)
    return FeatureMatrix(out, [(group, width)])


def lcp_summary(g, curvs):
    """LCP summary statistics [min, max, mean, std, median] of the
    curvature multiset of each node; population std."""

    def stats(cms):
        return [cms.min(), cms.max(), cms.mean(), cms.std(), np.median(cms)]

    return _cms_rows(g, curvs, stats, 5, "lcp")


def lcp_extremes(g, curvs):
    """LCP from sorted order statistics (1st, 2nd, 3rd smallest, 2nd largest,
    largest); for degree < 5 the indices are clamped into range, so values
    repeat."""

    def stats(cms):
        s = np.sort(cms)
        n = len(s)
        if n >= 5:
            idx = [0, 1, 2, n - 2, n - 1]
        else:
            # interpolated-rank fill: slot j maps to the nearest existing
            # order statistic at its position on the 5-slot scale, ties down
            idx = [int(np.floor(j * (n - 1) / 4 + 0.5 - 1e-9)) for j in range(5)]
        return s[idx]

    return _cms_rows(g, curvs, stats, 5, "lcp_ext")


def lcp_minmax(g, curvs):
    """LCP reduced to [min, max] of the curvature multiset."""
    return _cms_rows(g, curvs, lambda cms: [cms.min(), cms.max()], 2, "lcp_mm")


def lcp_combinatorial(g):
    """[min of Jost-Liu lower bounds, max of upper bounds] over incident
    edges; never solves a transport problem."""
    bounds = bounds_all(g)
    out = np.zeros((g.num_nodes, 2))
    for v in range(g.num_nodes):
        nbrs = g.neighbors(v)
        if len(nbrs) == 0:
            continue
        bs = [bounds[canonical_edge(v, int(w))] for w in nbrs]
        out[v] = [min(b.lower for b in bs), max(b.upper for b in bs)]
    return FeatureMatrix(out, [("lcp_comb", 2)])


def ldp(g):
    """Local Degree Profile: [deg, min, max, mean, std] of neighbor degrees."""
    degs = g.degrees().astype(np.float64)
    out = np.zeros((g.num_nodes, 5))
    for v in range(g.num_nodes):
        nbrs = g.neighbors(v)
        if len(nbrs) == 0:
            continue
        nd = degs[nbrs]
        out[v] = [degs[v], nd.min(), nd.max(), nd.mean(), nd.std()]
    return FeatureMatrix(out, [("ldp", 5)])


def lape(g, k=LAPE_DEFAULT_K):
    """Eigenvectors of the symmetric normalized Laplacian for the k smallest
    nontrivial eigenvalues.

    Computed per connected component; each component's constant vector is
    the excluded trivial mode, and rows outside a component are zero in its
    columns. Columns are unit-norm with the sign fixed so the entry of
    largest magnitude is positive. Missing modes (small components) are
    zero-padded.
    """
    if k < 1:
        raise GraphError("lape k must be >= 1")
    out = np.zeros((g.num_nodes, k))
    for comp in connected_components(g):
        n = len(comp)
        if n < 2:
            continue
        idx = {node: i for i, node in enumerate(comp)}
        A = np.zeros((n, n))
        for u in comp:
            for w in g.neighbors(u):
                A[idx[u], idx[int(w)]] = 1.0
        d = A.sum(axis=1)
        inv_sqrt = 1.0 / np.sqrt(d)
        L = np.eye(n) - inv_sqrt[:, None] * A * inv_sqrt[None, :]
        vals, vecs = eigh(L)
        # first eigenvalue is the component's trivial 0 mode
        take = min(k, n - 1)
        for j in range(take):
            vec = vecs[:, 1 + j]
            pivot = np.argmax(np.abs(vec))
            if vec[pivot] < 0:
                vec = -vec
            out[comp, j] = vec
    return FeatureMatrix(out, [("lape", k)])


def lape_eigenvalues(g):
    """Sorted normalized-Laplacian eigenvalues per component (diagnostics)."""
    result = {}
    for ci, comp in enumerate(connected_components(g)):
        n = len(comp)
        if n < 2:
            result[ci] = np.zeros(1)
            continue
        idx = {node: i for i, node in enumerate(comp)}
        A = np.zeros((n, n))
        for u in comp:
            for w in g.neighbors(u):
                A[idx[u], idx[int(w)]] = 1.0
        d = A.sum(axis=1)
        inv_sqrt = 1.0 / np.sqrt(d)
        L = np.eye(n) - inv_sqrt[:, None] * A * inv_sqrt[None, :]
        result[ci] = np.linalg.eigvalsh(L)
    return result


def rwpe(g, K=RWPE_DEFAULT_K):
    """Random-walk positional encoding: column k holds each node's k-step
    return probability, the diagonal of (D^-1 A)^k.

    Implemented as K repeated sparse-times-dense passes; isolated nodes
    stay at zero throughout.
    """
    if K < 1:
        raise GraphError("rwpe K must be >= 1")
    n = g.num_nodes
    rows, cols, vals = [], [], []
    for u in range(n):
        nbrs = g.neighbors(u)
        if len(nbrs) == 0:
            continue
        w = 1.0 / len(nbrs)
        for x in nbrs:
            rows.append(u)
            cols.append(int(x))
            vals.append(w)
    P = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    out = np.zeros((n, K))
    X = np.eye(n)
    for k in range(K):
        X = P @ X
        out[:, k] = np.diag(X)
    return FeatureMatrix(out, [("rwpe", K)])


def assemble(parts, graph=None, include_input_features=False):
    """Horizontal concatenation of feature blocks, preserving group
    provenance; optionally prepends the graph's input node features."""
    blocks = []
    groups = []
    if include_input_features:
        if graph is None or graph.node_features is None:
            raise GraphError("include_input_features requires a graph with features")
        blocks.append(graph.node_features)
        groups.append(("input", graph.node_features.shape[1]))
    for fm in parts:
        blocks.append(fm.data)
        groups.extend(fm.groups)
    if not blocks:
        raise GraphError("nothing to assemble")
    rows = {b.shape[0] for b in blocks}
    if len(rows) != 1:
        raise GraphError(f"row-count mismatch across blocks: {sorted(rows)}")
    return FeatureMatrix(np.hstack(blocks), groups)
