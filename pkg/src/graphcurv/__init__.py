"""graphcurv: discrete Ricci curvature, curvature-based node encodings,
rewiring, and a 1-WL expressivity harness for simple undirected graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: F401
    Graph,
    GraphCollection,
    GraphError,
    ParseError,
    canonical_edge,
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
from .curvature import (  # noqa: F401
    EdgeCurvatureMap,
    afrc3,
    afrc4,
    frc,
    orc_all,
    orc_bounds,
    orc_exact,
    orc_sinkhorn,
    pooled_stats,
)
from .encodings import (  # noqa: F401
    FeatureMatrix,
    assemble,
    lape,
    lcp_combinatorial,
    lcp_extremes,
    lcp_minmax,
    lcp_summary,
    ldp,
    rwpe,
)
from .rewiring import RewiringPlan, curvature_rewire, replay_plan  # noqa: F401
from .wl import discretize_features, distinguishable, wl_refine  # noqa: F401
