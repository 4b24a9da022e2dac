"""Command-line front door.

Subcommands: curvature | encode | rewire | stats | wl | generate.
A flat key=value config file can seed any option; explicit flags override
it. Every output file gets a manifest sidecar echoing the effective
configuration, and equal configurations produce byte-identical outputs.

Exit codes: 0 success, 2 input error, 3 numerical failure (non-converged
Sinkhorn under --strict).
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import __version__, curvature as curv, encodings as enc, io as gio
from .graph import (
    GraphCollection,
    GraphError,
    ParseError,
    generate_named,
    parse_tu_dataset,
)
from .rewiring import curvature_rewire
from .wl import distinguishable

EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL = 3

CURVATURE_METHODS = ["orc-exact", "orc-sinkhorn", "frc", "afrc3", "afrc4"]


def _read_config_file(path):
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", line=lineno)
        k, v = line.split("=", 1)
        cfg[k.strip().replace("-", "_")] = v.strip()
    return cfg


def _apply_config(ctx, param, value):
    """--config callback: file values become defaults, flags still win."""
    if value:
        ctx.default_map = dict(ctx.default_map or {})
        ctx.default_map.update(_read_config_file(value))
    return value


def config_option(f):
    return click.option(
        "--config",
        type=click.Path(exists=True, dir_okay=False),
        callback=_apply_config,
        expose_value=True,
        is_eager=True,
        help="Flat key=value config file; flags override file values.",
    )(f)


def _load_input(graph, dataset, one_indexed):
    """Graph path or TU dataset dir -> GraphCollection."""
    if (graph is None) == (dataset is None):
        raise GraphError("give exactly one of --graph or --dataset")
    if graph is not None:
        return GraphCollection([gio.load_graph(graph, one_indexed=one_indexed)])
    return parse_tu_dataset(dataset)


def _compute_curvature(g, method, alpha, eps, iters, threads):
    if method == "orc-exact":
        measure, a = ("open_uniform", 0.5) if alpha is None else ("idleness", alpha)
        return curv.orc_all(g, measure=measure, alpha=a, solver="exact", threads=threads)
    if method == "orc-sinkhorn":
        measure, a = ("open_uniform", 0.5) if alpha is None else ("idleness", alpha)
        return curv.orc_all(
            g, measure=measure, alpha=a, solver="sinkhorn", eps=eps, max_iters=iters
        )
    if method in ("frc", "afrc3", "afrc4"):
        return curv.closed_form_all(g, method)
    raise GraphError(f"unknown curvature method {method!r}")


@click.group()
@click.version_option(__version__)
def main():
    """Discrete Ricci curvatures, node encodings, rewiring, and WL tests."""


def _run(fn):
    try:
        fn()
    except (GraphError, ParseError, OSError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


@main.command("curvature")
@config_option
@click.option("--graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--dataset", type=click.Path(exists=True, file_okay=False))
@click.option("--one-indexed", is_flag=True, default=False)
@click.option("--method", type=click.Choice(CURVATURE_METHODS), default="orc-exact", show_default=True)
@click.option("--alpha", type=float, default=None, help="Idleness: self-mass fraction; omit for open-neighborhood measures.")
@click.option("--eps", type=float, default=0.01, show_default=True)
@click.option("--iters", type=int, default=5000, show_default=True)
@click.option("--threads", type=int, default=None, help="Worker threads (default: available cores).")
@click.option("--out", type=click.Path(), required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--strict", is_flag=True, default=False, help="Exit 3 when any Sinkhorn edge fails to converge.")
def cmd_curvature(config, graph, dataset, one_indexed, method, alpha, eps, iters, threads, out, fmt, strict):
    """Per-edge curvature dump (CSV or JSON)."""

    def run():
        threads_n = threads or os.cpu_count()
        cfg = {
            "command": "curvature", "graph": graph, "dataset": dataset,
            "one_indexed": one_indexed, "method": method, "alpha": alpha,
            "eps": eps, "iters": iters, "threads": threads_n, "out": out,
            "format": fmt, "strict": strict,
        }
        collection = _load_input(graph, dataset, one_indexed)
        outputs = []
        failed = False
        for g in collection:
            cm = _compute_curvature(g, method, alpha, eps, iters, threads_n)
            if cm.converged is not None and not all(cm.converged.values()):
                failed = True
            outputs.append(gio.curvature_csv(cm) if fmt == "csv" else gio.curvature_json(cm))
        if len(outputs) == 1:
            gio.write_with_manifest(out, outputs[0], cfg)
        else:
            base = Path(out)
            index = []
            for i, text in enumerate(outputs):
                p = base.with_name(f"{base.stem}_{i:05d}{base.suffix}")
                gio.write_with_manifest(p, text, cfg, extra={"graph_index": i})
                index.append(p.name)
            base.with_suffix(".index.json").write_text(json.dumps(index, indent=2) + "\n")
        if strict and failed:
            click.echo("error: sinkhorn failed to converge on some edges", err=True)
            sys.exit(EXIT_NUMERICAL)

    _run(run)


LCP_VARIANTS = {
    "summary": "lcp",
    "extremes": "lcp_ext",
    "minmax": "lcp_mm",
    "combinatorial": "lcp_comb",
}


def _encode_one(g, lcp, lape_k, rwpe_k, with_ldp, method, alpha, eps, iters, threads):
    parts = []
    curvature_method = None
    if lcp is not None:
        if lcp == "combinatorial":
            parts.append(enc.lcp_combinatorial(g))
            curvature_method = "jost_liu_bounds"
        else:
            cm = _compute_curvature(g, method, alpha, eps, iters, threads)
            curvature_method = cm.method
            fn = {"summary": enc.lcp_summary, "extremes": enc.lcp_extremes, "minmax": enc.lcp_minmax}[lcp]
            parts.append(fn(g, cm))
    if with_ldp:
        parts.append(enc.ldp(g))
    if lape_k:
        parts.append(enc.lape(g, lape_k))
    if rwpe_k:
        parts.append(enc.rwpe(g, rwpe_k))
    include_input = g.node_features is not None
    fm = enc.assemble(parts, graph=g, include_input_features=include_input)
    return fm, curvature_method


@main.command("encode")
@config_option
@click.option("--graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--dataset", type=click.Path(exists=True, file_okay=False))
@click.option("--one-indexed", is_flag=True, default=False)
@click.option("--lcp", type=click.Choice(list(LCP_VARIANTS)), default=None, help="LCP variant to include (default variant: summary).")
@click.option("--ldp", "with_ldp", is_flag=True, default=False)
@click.option("--lape", "lape_k", type=int, default=0, help="Laplacian eigenvector count (paper-tuned default 8).")
@click.option("--rwpe", "rwpe_k", type=int, default=0, help="Random-walk length (paper-tuned default 16).")
@click.option("--method", type=click.Choice(CURVATURE_METHODS), default="orc-exact", show_default=True)
@click.option("--alpha", type=float, default=None)
@click.option("--eps", type=float, default=0.01, show_default=True)
@click.option("--iters", type=int, default=5000, show_default=True)
@click.option("--threads", type=int, default=None)
@click.option("--out", type=click.Path(), required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "bin"]), default="csv", show_default=True)
def cmd_encode(config, graph, dataset, one_indexed, lcp, with_ldp, lape_k, rwpe_k, method, alpha, eps, iters, threads, out, fmt):
    """Per-node feature matrix with a JSON manifest sidecar."""

    def run():
        threads_n = threads or os.cpu_count()
        if lcp is None and not with_ldp and not lape_k and not rwpe_k:
            raise GraphError("select at least one encoder (--lcp/--ldp/--lape/--rwpe)")
        cfg = {
            "command": "encode", "graph": graph, "dataset": dataset,
            "one_indexed": one_indexed, "lcp": lcp, "ldp": with_ldp,
            "lape": lape_k, "rwpe": rwpe_k, "method": method, "alpha": alpha,
            "eps": eps, "iters": iters, "threads": threads_n, "out": out, "format": fmt,
        }
        collection = _load_input(graph, dataset, one_indexed)
        results = []
        for g in collection:
            fm, cmethod = _encode_one(g, lcp, lape_k, rwpe_k, with_ldp, method, alpha, eps, iters, threads_n)
            results.append((fm, cmethod))
        base = Path(out)
        if len(results) == 1:
            fm, cmethod = results[0]
            body = gio.features_csv(fm) if fmt == "csv" else gio.features_binary(fm)
            gio.write_with_manifest(out, body, cfg, extra=gio.feature_manifest(fm, cfg, cmethod))
        else:
            index = []
            for i, (fm, cmethod) in enumerate(results):
                p = base.with_name(f"{base.stem}_{i:05d}{base.suffix}")
                body = gio.features_csv(fm) if fmt == "csv" else gio.features_binary(fm)
                gio.write_with_manifest(p, body, cfg, extra={**gio.feature_manifest(fm, cfg, cmethod), "graph_index": i})
                index.append(p.name)
            base.with_suffix(".index.json").write_text(json.dumps(index, indent=2) + "\n")

    _run(run)


@main.command("stats")
@config_option
@click.option("--graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--dataset", type=click.Path(exists=True, file_okay=False))
@click.option("--one-indexed", is_flag=True, default=False)
@click.option("--method", type=click.Choice(CURVATURE_METHODS), default="orc-exact", show_default=True)
@click.option("--alpha", type=float, default=None)
@click.option("--eps", type=float, default=0.01, show_default=True)
@click.option("--iters", type=int, default=5000, show_default=True)
@click.option("--threads", type=int, default=None)
@click.option("--out", type=click.Path(), default=None, help="Optional JSON output path.")
def cmd_stats(config, graph, dataset, one_indexed, method, alpha, eps, iters, threads, out):
    """Min/max/mean/std of the edge-curvature distribution pooled over all
    graphs of the input."""

    def run():
        threads_n = threads or os.cpu_count()
        cfg = {
            "command": "stats", "graph": graph, "dataset": dataset,
            "one_indexed": one_indexed, "method": method, "alpha": alpha,
            "eps": eps, "iters": iters, "threads": threads_n, "out": out,
        }
        collection = _load_input(graph, dataset, one_indexed)
        maps = [
            _compute_curvature(g, method, alpha, eps, iters, threads_n)
            for g in collection
        ]
        stats = curv.pooled_stats(maps)
        d = stats.as_dict()
        if stats.num_edges == 0:
            click.echo("no edges")
        else:
            click.echo(f"{'metric':<8} value")
            for key in ("min", "max", "mean", "std"):
                click.echo(f"{key:<8} {gio.fmt12(d[key])}")
            click.echo(f"{'edges':<8} {d['num_edges']}")
        payload = json.dumps({"stats": d, "config": cfg}, indent=2) + "\n"
        if out:
            gio.write_with_manifest(out, payload, cfg)
        else:
            click.echo(payload, nl=False)

    _run(run)


@main.command("rewire")
@config_option
@click.option("--graph", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--one-indexed", is_flag=True, default=False)
@click.option("--n-iters", type=int, default=3, show_default=True)
@click.option("--k-add", type=int, default=4, show_default=True)
@click.option("--k-remove", type=int, default=4, show_default=True)
@click.option("--h-per-edge", type=int, default=1, show_default=True)
@click.option("--alpha", type=float, default=None)
@click.option("--threads", type=int, default=None)
@click.option("--out", type=click.Path(), required=True, help="Rewired graph (JSON).")
@click.option("--plan-out", type=click.Path(), default=None, help="Plan dump (JSON lines).")
def cmd_rewire(config, graph, one_indexed, n_iters, k_add, k_remove, h_per_edge, alpha, threads, out, plan_out):
    """Curvature rewiring: returns the rewired graph and the action plan."""

    def run():
        threads_n = threads or os.cpu_count()
        cfg = {
            "command": "rewire", "graph": graph, "one_indexed": one_indexed,
            "n_iters": n_iters, "k_add": k_add, "k_remove": k_remove,
            "h_per_edge": h_per_edge, "alpha": alpha, "threads": threads_n,
            "out": out, "plan_out": plan_out,
        }
        g = gio.load_graph(graph, one_indexed=one_indexed)
        measure, a = ("open_uniform", 0.5) if alpha is None else ("idleness", alpha)
        rewired, plan = curvature_rewire(
            g, n_iters=n_iters, k_add=k_add, k_remove=k_remove,
            h_per_edge=h_per_edge, measure=measure, alpha=a, threads=threads_n,
        )
        gio.write_with_manifest(out, rewired.to_json() + "\n", cfg)
        if plan_out:
            gio.write_with_manifest(plan_out, plan.to_jsonl(), cfg)

    _run(run)


@main.command("wl")
@config_option
@click.option("--a", "graph_a", required=True, help="Graph path or generator name (e.g. rook4x4, cycle(6)).")
@click.option("--b", "graph_b", required=True)
@click.option("--encoding", type=click.Choice(["none", "lcp", "lcp_extremes", "lcp_minmax", "lcp_combinatorial", "ldp", "rwpe", "lape"]), default="none", show_default=True)
@click.option("--max-rounds", type=int, default=None)
@click.option("--out", type=click.Path(), default=None)
def cmd_wl(config, graph_a, graph_b, encoding, max_rounds, out):
    """1-WL separation verdict for a pair of graphs."""

    def run():
        cfg = {
            "command": "wl", "graph_a": graph_a, "graph_b": graph_b,
            "encoding": encoding, "max_rounds": max_rounds, "out": out,
        }

        def load(spec):
            if Path(spec).exists():
                return gio.load_graph(spec)
            return generate_named(spec)

        g1, g2 = load(graph_a), load(graph_b)
        separated, rounds = distinguishable(g1, g2, encoding, max_rounds)
        verdict = {
            "graph_a": graph_a, "graph_b": graph_b, "encoding": encoding,
            "rounds": rounds, "separated": separated,
        }
        payload = json.dumps(verdict, indent=2) + "\n"
        click.echo(payload, nl=False)
        if out:
            gio.write_with_manifest(out, payload, cfg)

    _run(run)


@main.command("generate")
@config_option
@click.option("--name", required=True, help="rook4x4 | shrikhande | complete(n) | cycle(n) | path(n) | star(n)")
@click.option("--out", type=click.Path(), required=True)
@click.option("--format", "fmt", type=click.Choice(["edgelist", "json"]), default="edgelist", show_default=True)
def cmd_generate(config, name, out, fmt):
    """Emit a named reference graph."""

    def run():
        cfg = {"command": "generate", "name": name, "out": out, "format": fmt}
        g = generate_named(name)
        body = g.to_edge_list() if fmt == "edgelist" else g.to_json() + "\n"
        gio.write_with_manifest(out, body, cfg)

    _run(run)


if __name__ == "__main__":
    main()
