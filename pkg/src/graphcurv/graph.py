"""Immutable simple undirected graphs: construction, parsing, generators,
and the local-structure primitives (BFS distances, triangle/quadrangle
counts) everything else is built on.

Node ids are dense and 0-based. Neighbor lists are sorted ascending and
stored as numpy int64 arrays.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

UNREACHABLE = -1


class GraphError(Exception):
    """Invalid graph construction or query."""


class ParseError(GraphError):
    """Malformed graph input; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def canonical_edge(u, v):
    """Canonical (min, max) key for an undirected edge."""
    if u == v:
        raise GraphError(f"self-loop ({u},{u}) has no canonical edge key")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph in compressed adjacency form.

    Immutable after construction: the adjacency arrays are write-locked,
    so instances are safe to share across threads.
    """

    __slots__ = ("num_nodes", "_adj", "node_features")

    def __init__(self, num_nodes, edges, node_features=None):
        if num_nodes < 0:
            raise GraphError("num_nodes must be nonnegative")
        neighbors = [[] for _ in range(num_nodes)]
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop ({u},{u}) not allowed")
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise GraphError(f"edge ({u},{v}) out of range for {num_nodes} nodes")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            neighbors[u].append(v)
            neighbors[v].append(u)
        self.num_nodes = num_nodes
        adj = []
        for lst in neighbors:
            a = np.array(sorted(lst), dtype=np.int64)
            a.setflags(write=False)
            adj.append(a)
        self._adj = tuple(adj)
        if node_features is not None:
            node_features = np.asarray(node_features, dtype=np.float64)
            if node_features.ndim != 2 or node_features.shape[0] != num_nodes:
                raise GraphError("node_features must be a |V| x m matrix")
            node_features.setflags(write=False)
        self.node_features = node_features

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def degrees(self):
        return np.array([len(a) for a in self._adj], dtype=np.int64)

    @property
    def num_edges(self):
        return sum(len(a) for a in self._adj) // 2

    def edges(self):
        """Canonical (u, v) pairs with u < v, in lexicographic order."""
        for u in range(self.num_nodes):
            for v in self._adj[u]:
                if u < v:
                    yield (u, int(v))

    def has_edge(self, u, v):
        if not (0 <= u < self.num_nodes and 0 <= v < self.num_nodes):
            return False
        a = self._adj[u]
        i = np.searchsorted(a, v)
        return i < len(a) and a[i] == v

    def neighbor_set(self, v):
        return set(int(x) for x in self._adj[v])

    # -- serialization ----------------------------------------------------

    def to_json_dict(self):
        d = {"num_nodes": self.num_nodes, "edges": [[u, v] for u, v in self.edges()]}
        if self.node_features is not None:
            d["features"] = self.node_features.tolist()
        return d

    def to_json(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d):
        return cls(d["num_nodes"], d["edges"], d.get("features"))

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))

    def to_edge_list(self):
        return "\n".join(f"{u} {v}" for u, v in self.edges()) + "\n"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self.num_nodes != other.num_nodes:
            return False
        if any(not np.array_equal(a, b) for a, b in zip(self._adj, other._adj)):
            return False
        if (self.node_features is None) != (other.node_features is None):
            return False
        if self.node_features is not None:
            return np.array_equal(self.node_features, other.node_features)
        return True

    def __repr__(self):
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


@dataclass
class ParseReport:
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0


@dataclass
class GraphCollection:
    """Ordered list of graphs with optional per-graph integer labels."""

    graphs: list
    labels: list | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.graphs):
            raise GraphError("labels must have one entry per graph")

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)


@dataclass(frozen=True)
class EdgeMotifCounts:
    triangles: int
    quadrangles: int


def parse_edge_list(text, one_indexed=False, comment_prefix="#"):
    """Parse whitespace-separated edge pairs into a Graph.

    Duplicate lines (either orientation) collapse to one edge; self-loops
    are dropped. Returns (graph, report) where the report counts what was
    dropped or collapsed.
    """
    if hasattr(text, "read"):
        text = text.read()
    edges = set()
    report = ParseReport()
    max_id = -1
    saw_line = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(comment_prefix, 1)[0].strip()
        if not line:
            continue
        saw_line = True
        toks = line.replace(",", " ").split()
        if len(toks) != 2:
            raise ParseError(f"expected two integer tokens, got {toks!r}", line=lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"non-integer token in {toks!r}", line=lineno)
        if one_indexed:
            u, v = u - 1, v - 1
        if u < 0 or v < 0:
            raise ParseError(f"negative node id in ({u},{v})", line=lineno)
        if u == v:
            report.self_loops_dropped += 1
            max_id = max(max_id, u)
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            report.duplicates_collapsed += 1
        else:
            edges.add(key)
        max_id = max(max_id, u, v)
    if not saw_line:
        raise ParseError("empty input: no edge lines found")
    return Graph(max_id + 1, sorted(edges)), report


def _read_int_lines(path):
    with open(path) as f:
        return [int(line.strip()) for line in f if line.strip()]


def parse_tu_dataset(dir_path):
    """Parse a TUDataset-style directory into a GraphCollection.

    Expects DS_A.txt (1-indexed edge pairs) and DS_graph_indicator.txt;
    DS_graph_labels.txt, DS_node_labels.txt and DS_node_attributes.txt are
    optional. Node labels are one-hot encoded into node_features; real
    attributes are appended as-is.
    """
    dir_path = Path(dir_path)
    a_files = sorted(dir_path.glob("*_A.txt"))
    if not a_files:
        raise ParseError(f"no *_A.txt edge file in {dir_path}")
    prefix = a_files[0].name[: -len("_A.txt")]

    def opt(name):
        p = dir_path / f"{prefix}_{name}.txt"
        return p if p.exists() else None

    indicator_path = dir_path / f"{prefix}_graph_indicator.txt"
    if not indicator_path.exists():
        raise ParseError(f"missing {indicator_path.name}")
    indicator = _read_int_lines(indicator_path)
    num_nodes_total = len(indicator)

    # node -> (graph index, local id), graphs keyed by 1-based indicator value
    graph_ids = sorted(set(indicator))
    gidx = {g: i for i, g in enumerate(graph_ids)}
    local_id = np.zeros(num_nodes_total, dtype=np.int64)
    sizes = Counter()
    node_graph = np.zeros(num_nodes_total, dtype=np.int64)
    for node, g in enumerate(indicator):
        node_graph[node] = gidx[g]
        local_id[node] = sizes[g]
        sizes[g] += 1

    edges_per_graph = [set() for _ in graph_ids]
    with open(a_files[0]) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            toks = line.replace(",", " ").split()
            if len(toks) != 2:
                raise ParseError(f"expected two tokens in {a_files[0].name}", line=lineno)
            u, v = int(toks[0]) - 1, int(toks[1]) - 1
            if not (0 <= u < num_nodes_total and 0 <= v < num_nodes_total):
                raise ParseError(
                    f"node id out of range in edge ({u + 1},{v + 1})", line=lineno
                )
            if node_graph[u] != node_graph[v]:
                raise ParseError(
                    f"edge ({u + 1},{v + 1}) crosses graph boundary", line=lineno
                )
            if u == v:
                continue
            a, b = local_id[u], local_id[v]
            if a > b:
                a, b = b, a
            edges_per_graph[node_graph[u]].add((int(a), int(b)))

    features = None
    labels_path = opt("node_labels")
    attrs_path = opt("node_attributes")
    cols = []
    if labels_path is not None:
        node_labels = _read_int_lines(labels_path)
        if len(node_labels) != num_nodes_total:
            raise ParseError("node label count does not match indicator length")
        uniq = sorted(set(node_labels))
        pos = {l: i for i, l in enumerate(uniq)}
        onehot = np.zeros((num_nodes_total, len(uniq)))
        for i, l in enumerate(node_labels):
            onehot[i, pos[l]] = 1.0
        cols.append(onehot)
    if attrs_path is not None:
        attrs = np.loadtxt(attrs_path, delimiter=",", ndmin=2)
        if attrs.shape[0] != num_nodes_total:
            raise ParseError("node attribute count does not match indicator length")
        cols.append(attrs)
    if cols:
        features = np.hstack(cols)

    graphs = []
    for i, g in enumerate(graph_ids):
        n = sizes[g]
        feat = None
        if features is not None:
            feat = features[node_graph == i]
        graphs.append(Graph(n, sorted(edges_per_graph[i]), feat))

    labels = None
    gl_path = opt("graph_labels")
    if gl_path is not None:
        labels = _read_int_lines(gl_path)
        if len(labels) != len(graphs):
            raise ParseError("graph label count does not match graph count")
    return GraphCollection(graphs, labels)


# -- generators -----------------------------------------------------------


def rook4x4():
    """Cartesian product K4 x K4: 16 nodes, 48 edges, strongly regular (16,6,2,2)."""
    edges = []
    for r in range(4):
        for c in range(4):
            u = 4 * r + c
            for c2 in range(c + 1, 4):
                edges.append((u, 4 * r + c2))
            for r2 in range(r + 1, 4):
                edges.append((u, 4 * r2 + c))
    return Graph(16, edges)


def shrikhande():
    """Cayley graph of Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = set()
    for x in range(4):
        for y in range(4):
            u = 4 * x + y
            for dx, dy in conn:
                v = 4 * ((x + dx) % 4) + ((y + dy) % 4)
                if u != v:
                    edges.add((u, v) if u < v else (v, u))
    return Graph(16, sorted(edges))


def complete(n):
    _check_n(n)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n):
    _check_n(n, lo=3)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    _check_n(n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n):
    """Star with n leaves: node 0 is the hub, n+1 nodes total."""
    _check_n(n, lo=1)
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def _check_n(n, lo=2):
    if not (lo <= n <= 10**6):
        raise GraphError(f"size {n} out of range [{lo}, 1e6]")


_NAMED = {"rook4x4": rook4x4, "shrikhande": shrikhande}
_PARAM = {"complete": complete, "cycle": cycle, "path": path, "star": star}


def generate_named(name):
    """Build a reference graph from a name like 'rook4x4' or 'cycle(6)'."""
    name = name.strip()
    if name in _NAMED:
        return _NAMED[name]()
    if "(" in name and name.endswith(")"):
        base, arg = name[:-1].split("(", 1)
        base = base.strip()
        if base in _PARAM:
            try:
                n = int(arg)
            except ValueError:
                raise GraphError(f"bad size argument in {name!r}")
            return _PARAM[base](n)
    raise GraphError(f"unknown graph name {name!r}")


# -- local structure ------------------------------------------------------


def edge_motif_counts(g, e):
    """Triangle and quadrangle counts for an edge.

    Triangles: |N(u) & N(v)|. Quadrangles: 4-cycles u-p-q-v-u with
    p in N(u)\\N[v], q in N(v)\\N[u], p != q, (p,q) an edge -- the
    "no common neighbor" convention, so chords through shared
    neighbors are excluded.
    """
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    nu, nv = g.neighbor_set(u), g.neighbor_set(v)
    common = nu & nv
    triangles = len(common)
    ps = nu - nv - {v}
    qs = nv - nu - {u}
    quad = 0
    for p in ps:
        np_set = g.neighbor_set(p)
        quad += len(np_set & qs)
    return EdgeMotifCounts(triangles=triangles, quadrangles=quad)


def bfs_distances(g, source, radius):
    """Hop distances from one source, truncated at radius.

    Nodes farther than radius (or disconnected) get UNREACHABLE.
    """
    if not (0 <= source < g.num_nodes):
        raise GraphError(f"source {source} out of range")
    dist = np.full(g.num_nodes, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier and d < radius:
        d += 1
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if dist[y] == UNREACHABLE:
                    dist[y] = d
                    nxt.append(int(y))
        frontier = nxt
    return dist


def local_distances(g, sources, radius):
    """BFS distance table from each source, truncated at radius.

    Returns {source: distance array}; unreachable-within-radius entries
    hold the UNREACHABLE sentinel.
    """
    if radius < 1:
        raise GraphError("radius must be >= 1")
    return {s: bfs_distances(g, s, radius) for s in sources}


def connected_components(g):
    """List of sorted node lists, one per connected component."""
    seen = np.zeros(g.num_nodes, dtype=bool)
    comps = []
    for s in range(g.num_nodes):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    stack.append(int(y))
        comps.append(sorted(comp))
    return comps


def is_connected_without_edge(g, u, v):
    """True if u and v stay connected after removing edge (u,v)."""
    seen = np.zeros(g.num_nodes, dtype=bool)
    seen[u] = True
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            y = int(y)
            if (x == u and y == v) or (x == v and y == u):
                continue
            if y == v:
                return True
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return False
