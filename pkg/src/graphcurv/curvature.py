"""Per-edge discrete Ricci curvatures.

Five regimes: exact Ollivier-Ricci (optimal transport over neighborhood
measures), an idleness-parameterized variant with self-mass, a Sinkhorn
approximation, the Jost-Liu combinatorial bounds, and the Forman /
augmented-Forman closed forms.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .graph import (
    GraphError,
    bfs_distances,
    canonical_edge,
    edge_motif_counts,
)

OPEN_UNIFORM = "open_uniform"
IDLENESS = "idleness"

# Ollivier-Ricci methods accepted by orc_all / the CLI.
ORC_METHODS = ("orc_exact", "orc_sinkhorn")
CLOSED_FORM_METHODS = ("frc", "afrc3", "afrc4")


@dataclass
class EdgeCurvatureMap:
    """Curvature value per canonical edge, plus the method that produced it."""

    values: dict
    method: str
    converged: dict | None = None  # per-edge flag, Sinkhorn only

    def __getitem__(self, e):
        return self.values[canonical_edge(*e)]

    def node_multiset(self, g, v):
        """Curvature multiset CMS(v): one value per incident edge."""
        return [self.values[canonical_edge(v, int(w))] for w in g.neighbors(v)]

    def pooled(self):
        return np.array([self.values[e] for e in sorted(self.values)])


@dataclass(frozen=True)
class CurvatureBounds:
    lower: float
    upper: float


@dataclass
class TransportProblem:
    """Balanced OT instance between the neighborhood measures of an edge."""

    source_support: np.ndarray
    target_support: np.ndarray
    source_mass: np.ndarray
    target_mass: np.ndarray
    cost: np.ndarray


def _measure(g, node, measure, alpha):
    """Support node ids and probability masses for one endpoint."""
    nbrs = g.neighbors(node)
    deg = len(nbrs)
    if deg == 0:
        raise GraphError(f"node {node} has degree 0")
    if measure == OPEN_UNIFORM:
        support = np.asarray(nbrs, dtype=np.int64)
        mass = np.full(deg, 1.0 / deg)
    elif measure == IDLENESS:
        if not (0.0 <= alpha < 1.0):
            raise GraphError(f"idleness alpha must be in [0,1), got {alpha}")
        support = np.concatenate(([node], np.asarray(nbrs, dtype=np.int64)))
        mass = np.concatenate(([alpha], np.full(deg, (1.0 - alpha) / deg)))
    else:
        raise GraphError(f"unknown measure {measure!r}")
    return support, mass


def build_transport_problem(g, e, measure=OPEN_UNIFORM, alpha=0.5):
    """Assemble supports, masses, and the hop-distance cost matrix for an edge.

    For adjacent endpoints every source-target distance is at most 3
    (z - u - v - z'), so radius-3 BFS is lossless; a sentinel leaking into
    the cost matrix would be a bug and is asserted against.
    """
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    src, a = _measure(g, u, measure, alpha)
    tgt, b = _measure(g, v, measure, alpha)
    cost = np.empty((len(src), len(tgt)), dtype=np.float64)
    for i, z in enumerate(src):
        dist = bfs_distances(g, int(z), 3)
        row = dist[tgt]
        assert (row >= 0).all(), "support node unreachable within radius 3"
        cost[i] = row
    return TransportProblem(src, tgt, a, b, cost)


# instrumentation: number of exact OT solves since last reset
_ot_solve_count = [0]


def ot_solve_count():
    return _ot_solve_count[0]


def reset_ot_solve_count():
    _ot_solve_count[0] = 0


def _w1_lp(a, b, cost):
    """Exact Wasserstein-1 as a balanced transportation LP (HiGHS dual simplex).

    Returns (value, plan) where plan has the supports' shape.
    """
    _ot_solve_count[0] += 1
    ns, nt = cost.shape
    c = cost.reshape(-1)
    # Row-sum and column-sum equality constraints; drop one redundant row.
    rows = []
    rhs = []
    for i in range(ns):
        r = np.zeros(ns * nt)
        r[i * nt : (i + 1) * nt] = 1.0
        rows.append(r)
        rhs.append(a[i])
    for j in range(nt):
        r = np.zeros(ns * nt)
        r[j::nt] = 1.0
        rows.append(r)
        rhs.append(b[j])
    A_eq = np.array(rows[:-1])
    b_eq = np.array(rhs[:-1])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs-ds")
    if not res.success:
        raise GraphError(f"transportation LP failed: {res.message}")
    return float(res.fun), res.x.reshape(ns, nt)


def w1_exact(problem):
    value, _ = _w1_lp(problem.source_mass, problem.target_mass, problem.cost)
    return value


def optimal_plan(problem):
    """One fixed optimal transport plan (deterministic for fixed input)."""
    _, plan = _w1_lp(problem.source_mass, problem.target_mass, problem.cost)
    return plan


def orc_exact(g, e, measure=OPEN_UNIFORM, alpha=0.5):
    """Ollivier-Ricci curvature 1 - W1(m_u, m_v) with W1 solved exactly."""
    problem = build_transport_problem(g, e, measure, alpha)
    return 1.0 - w1_exact(problem)


def sinkhorn_w1(a, b, cost, eps, max_iters=5000, residual_tol=1e-9):
    """Entropic-regularized W1 by log-domain Sinkhorn iterations.

    Returns (transport cost of the rounded-marginal plan, converged flag);
    converged means the worst marginal violation is <= 1e-6.
    """
    if eps <= 0:
        raise GraphError("sinkhorn eps must be > 0")
    if max_iters < 1:
        raise GraphError("sinkhorn iteration cap must be >= 1")
    _ot_solve_count[0] += 1
    log_a = np.log(a)
    log_b = np.log(b)
    f = np.zeros_like(a)
    g_pot = np.zeros_like(b)
    converged = False
    for _ in range(max_iters):
        f = eps * log_a - eps * _lse_rows((g_pot[None, :] - cost) / eps)
        g_pot = eps * log_b - eps * _lse_rows(((f[:, None] - cost) / eps).T)
        P = np.exp((f[:, None] + g_pot[None, :] - cost) / eps)
        err = np.abs(P.sum(axis=1) - a).max()
        if err <= residual_tol:
            converged = True
            break
    P = np.exp((f[:, None] + g_pot[None, :] - cost) / eps)
    violation = max(np.abs(P.sum(axis=1) - a).max(), np.abs(P.sum(axis=0) - b).max())
    return float((P * cost).sum()), bool(violation <= 1e-6 or converged)


def _lse_rows(M):
    mx = M.max(axis=1, keepdims=True)
    return (mx + np.log(np.exp(M - mx).sum(axis=1, keepdims=True))).ravel()


def orc_sinkhorn(g, e, eps, measure=OPEN_UNIFORM, alpha=0.5, max_iters=5000):
    problem = build_transport_problem(g, e, measure, alpha)
    w1, converged = sinkhorn_w1(
        problem.source_mass, problem.target_mass, problem.cost, eps, max_iters
    )
    return 1.0 - w1, converged


def orc_all(
    g,
    measure=OPEN_UNIFORM,
    alpha=0.5,
    solver="exact",
    eps=0.01,
    max_iters=5000,
    threads=None,
):
    """Curvature of every edge; the exact path is parallel over edges with
    results assembled in canonical edge order, so output is deterministic
    regardless of thread count."""
    edges = list(g.edges())
    if solver == "exact":
        def work(e):
            return orc_exact(g, e, measure, alpha)

        if threads is not None and threads > 1 and len(edges) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                vals = list(pool.map(work, edges))
        else:
            vals = [work(e) for e in edges]
        return EdgeCurvatureMap(dict(zip(edges, vals)), method="orc_exact")
    if solver == "sinkhorn":
        values, flags = {}, {}
        for e in edges:
            k, ok = orc_sinkhorn(g, e, eps, measure, alpha, max_iters)
            values[e] = k
            flags[e] = ok
        return EdgeCurvatureMap(values, method="orc_sinkhorn", converged=flags)
    raise GraphError(f"unknown solver {solver!r}")


# -- combinatorial bounds and Forman variants -----------------------------


def orc_bounds(g, e):
    """Jost-Liu lower/upper bounds on open-neighborhood ORC from degrees
    and the triangle count of the edge."""
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    du, dv = g.degree(u), g.degree(v)
    tri = edge_motif_counts(g, (u, v)).triangles
    dmin, dmax = min(du, dv), max(du, dv)
    pos = lambda x: max(x, 0.0)
    lower = (
        -pos(1.0 - 1.0 / du - 1.0 / dv - tri / dmin)
        - pos(1.0 - 1.0 / du - 1.0 / dv - tri / dmax)
        + tri / dmax
    )
    upper = tri / dmax
    return CurvatureBounds(lower=lower, upper=upper)


def frc(g, e):
    """Forman-Ricci curvature 4 - deg(u) - deg(v)."""
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    return float(4 - g.degree(u) - g.degree(v))


def afrc3(g, e):
    """Forman curvature augmented with triangle contributions."""
    u, v = canonical_edge(*e)
    counts = edge_motif_counts(g, (u, v))
    return float(4 - g.degree(u) - g.degree(v) + 3 * counts.triangles)


def afrc4(g, e):
    """Forman curvature augmented with triangle and quadrangle contributions."""
    u, v = canonical_edge(*e)
    counts = edge_motif_counts(g, (u, v))
    return float(
        4 - g.degree(u) - g.degree(v) + 3 * counts.triangles + 2 * counts.quadrangles
    )


def closed_form_all(g, method):
    fn = {"frc": frc, "afrc3": afrc3, "afrc4": afrc4}[method]
    return EdgeCurvatureMap({e: fn(g, e) for e in g.edges()}, method=method)


def bounds_all(g):
    return {e: orc_bounds(g, e) for e in g.edges()}


# -- dataset-level statistics ---------------------------------------------


@dataclass
class CurvatureStats:
    num_edges: int
    minimum: float | None
    maximum: float | None
    mean: float | None
    std: float | None

    def as_dict(self):
        if self.num_edges == 0:
            return {"num_edges": 0, "note": "no edges"}
        return {
            "num_edges": self.num_edges,
            "min": self.minimum,
            "max": self.maximum,
            "mean": self.mean,
            "std": self.std,
        }


def pooled_stats(curvature_maps):
    """Min/max/mean/std of edge curvatures pooled over a collection."""
    vals = np.concatenate(
        [m.pooled() for m in curvature_maps if len(m.values)] or [np.empty(0)]
    )
    if vals.size == 0:
        return CurvatureStats(0, None, None, None, None)
    return CurvatureStats(
        num_edges=int(vals.size),
        minimum=float(vals.min()),
        maximum=float(vals.max()),
        mean=float(vals.mean()),
        std=float(vals.std()),
    )
