"""Stable on-disk formats: curvature dumps, feature matrices with
manifests, rewiring plans, and graph round-trips.

Every writer is deterministic for fixed inputs so reruns are
byte-identical; curvature values are printed with 12 significant digits.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from . import __version__
from .graph import Graph, parse_edge_list


def fmt12(x):
    """12-significant-digit decimal rendering."""
    return f"{x:.12g}"


def curvature_csv(curv_map):
    """CSV dump `u,v,kappa,method`; Sinkhorn maps get a converged column."""
    has_flags = curv_map.converged is not None
    header = "u,v,kappa,method" + (",converged" if has_flags else "")
    lines = [header]
    for e in sorted(curv_map.values):
        row = f"{e[0]},{e[1]},{fmt12(curv_map.values[e])},{curv_map.method}"
        if has_flags:
            row += f",{int(curv_map.converged[e])}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def curvature_json(curv_map):
    has_flags = curv_map.converged is not None
    edges = []
    for e in sorted(curv_map.values):
        rec = {"u": e[0], "v": e[1], "kappa": float(fmt12(curv_map.values[e]))}
        if has_flags:
            rec["converged"] = bool(curv_map.converged[e])
        edges.append(rec)
    return json.dumps({"method": curv_map.method, "edges": edges}, indent=2) + "\n"


def features_csv(fm, node_ids=None):
    """CSV dump `node_id,<group>_<i>,...` in node-id row order."""
    names = fm.column_names()
    lines = ["node_id," + ",".join(names)]
    ids = node_ids if node_ids is not None else range(fm.data.shape[0])
    for nid, row in zip(ids, fm.data):
        lines.append(str(nid) + "," + ",".join(fmt12(x) for x in row))
    return "\n".join(lines) + "\n"


def features_binary(fm):
    """Column-major float64 dump; layout described by the manifest."""
    return np.asfortranarray(fm.data).tobytes(order="F")


def feature_manifest(fm, params=None, curvature_method=None):
    return {
        "rows": int(fm.data.shape[0]),
        "groups": [name for name, _ in fm.groups],
        "widths": [int(w) for _, w in fm.groups],
        "total_width": int(fm.width),
        "params": params or {},
        "curvature_method": curvature_method,
        "binary_layout": "float64 column-major",
    }


def write_with_manifest(path, content, config=None, extra=None):
    """Write an output file plus a `<path>.manifest.json` sidecar echoing
    the run configuration and tool version."""
    path = Path(path)
    mode = "wb" if isinstance(content, bytes) else "w"
    with open(path, mode) as f:
        f.write(content)
    manifest = {"tool": "graphcurv", "version": __version__, "config": config or {}}
    if extra:
        manifest.update(extra)
    with open(path.with_name(path.name + ".manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


def load_graph(path, fmt=None, one_indexed=False):
    """Read a graph from an edge-list or JSON file; format sniffed from the
    extension unless given."""
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "edgelist"
    text = path.read_text()
    if fmt == "json":
        return Graph.from_json(text)
    g, _ = parse_edge_list(text, one_indexed=one_indexed)
    return g
