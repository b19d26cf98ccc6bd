"""Command-line front end for the tiling experiments.

Every subcommand works on one point configuration (from --points or the
default a_i = i via --n), prints a short summary, and can write JSON / DOT /
SVG artifacts into --out.  Outputs carry the coordinates in their header and
are byte-stable for fixed inputs and seed regardless of --threads.  With
--strict the exit status is nonzero whenever a theorem check fails or a
structural finding is recorded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .core import Finding, PointConfig, make_config, standard_config
from .flipgraph import (
    FlipGraph,
    enumerate_tilings,
    expected_level_census,
    graph_to_dot,
    graph_to_json,
    level_census,
    sample_chain,
)
from .hypertri import cross_section, hypertri_diameters, reduced_cross_section
from .oracle import commutation_census
from .regularity import classify_graph, regular_node_set
from .secondary import diameter_report, potential, modified_potential
from .tiling import tiling_to_svg


@dataclass
class RunConfig:
    """Resolved common options shared by all subcommands."""

    config: PointConfig
    out: Path | None
    seed: int
    threads: int
    cap: int
    strict: bool
    fmt: str
    findings: list[str] = field(default_factory=list)

    def finding(self, message: str) -> None:
        self.findings.append(message)
        print(f"FINDING: {message}")


def _add_common(parser: argparse.ArgumentParser, needs_points: bool = True) -> None:
    if needs_points:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--n", type=int, help="use the configuration a_i = i")
        group.add_argument(
            "--points",
            type=str,
            help="comma-separated exact coordinates, e.g. -1,0,1/2,2",
        )
    parser.add_argument("--out", type=str, default=None, help="artifact directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--cap", type=int, default=8, help="enumeration cap on n")
    parser.add_argument("--strict", action="store_true")
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "dot", "svg"),
        default="json",
    )


def _resolve(ns: argparse.Namespace) -> RunConfig:
    if getattr(ns, "points", None):
        config = make_config(ns.points.split(","))
    else:
        if ns.n is None:
            raise ValueError("one of --n or --points is required")
        config = standard_config(ns.n)
    return RunConfig(
        config=config,
        out=Path(ns.out) if ns.out else None,
        seed=ns.seed,
        threads=ns.threads,
        cap=ns.cap,
        strict=ns.strict,
        fmt=ns.fmt,
    )


def _write(run: RunConfig, name: str, payload) -> None:
    if run.out is None:
        return
    run.out.mkdir(parents=True, exist_ok=True)
    path = run.out / name
    if isinstance(payload, str):
        path.write_text(payload + ("" if payload.endswith("\n") else "\n"))
    else:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


def _graph(run: RunConfig) -> FlipGraph:
    return enumerate_tilings(run.config, cap=run.cap)


def _header(run: RunConfig) -> dict:
    return {
        "n": run.config.n,
        "points": [str(a) for a in run.config.coords],
    }


# ---------------------------------------------------------------------------
# subcommands

def cmd_enumerate(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    graph = _graph(run)
    print(f"{len(graph)} tilings, {graph.edge_count()} flip edges")
    if run.fmt == "dot":
        _write(run, f"graph_n{run.config.n}.dot", graph_to_dot(graph))
    else:
        _write(run, f"graph_n{run.config.n}.json", graph_to_json(graph))
    return _exit(run)


def cmd_classify(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    graph = _graph(run)
    certs = classify_graph(run.config, graph)
    regular = sum(c.regular for c in certs)
    irregular = len(certs) - regular
    print(f"{len(certs)} tilings: {regular} regular, {irregular} irregular")
    payload = _header(run) | {
        "total": len(certs),
        "regular": regular,
        "irregular": irregular,
        "certificates": [c.to_json() for c in certs],
    }
    _write(run, f"classify_n{run.config.n}.json", payload)
    return _exit(run)


def cmd_diameters(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    graph = _graph(run)
    regs = regular_node_set(classify_graph(run.config, graph))
    ks = range(1, run.config.n - 1) if ns.all else [ns.k]
    if not ns.all and ns.k is None:
        raise ValueError("provide --k K or --all")
    records = []
    print(" k | sigma_k: cls diam formula ok | sum: cls diam formula ok")
    for k in ks:
        rep = diameter_report(
            run.config, k, graph=graph, regular_nodes=regs, threads=run.threads
        )
        records.append(rep)
        sk, ss = rep["sigma_k"], rep["sigma_k_plus_prev"]
        print(
            f"{k:2d} | {sk['classes']:5d} {sk['diameter']:4d} {sk['formula']:7d} "
            f"{str(sk['match']):5s} | {ss['classes']:5d} {ss['diameter']:4d} "
            f"{ss['formula']:7d} {ss['match']}"
        )
        for label, ok in (
            ("sigma_k diameter", sk["match"]),
            ("sum diameter", ss["match"]),
            ("duality", rep["duality_ok"]),
            ("vert_k distinctness", rep["vertk_distinct_ok"]),
        ):
            if not ok:
                run.finding(f"k={k}: {label} check failed")
    _write(run, f"diameters_n{run.config.n}.json", _header(run) | {"reports": records})
    if run.fmt == "dot":
        from .secondary import skeleton

        for k in ks:
            sk = skeleton(graph, k, "sigma_k", regs)
            _write(run, f"sigma_{k}_n{run.config.n}.dot", sk.to_dot(f"sigma_{k}"))
    return _exit(run)


def cmd_hypertri(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    if ns.k is None:
        raise ValueError("provide --k K")
    graph = _graph(run)
    record = hypertri_diameters(run.config, ns.k, graph=graph, threads=run.threads)
    lift, red = record["lifting"], record["reduced"]
    print(
        f"lifting level {ns.k}: {lift['classes']} classes, diameter "
        f"{lift['diameter']} vs {lift['formula']} ({lift['match']})"
    )
    print(
        f"reduced level {ns.k + 1}: {red['classes']} classes, diameter "
        f"{red['diameter']} vs {red['formula']} ({red['match']})"
    )
    for label in (
        "path_quotient_equal",
        "reduced_quotient_equal",
        "lifting_single_vertex_ok",
        "reduced_path_changes_ok",
    ):
        if not record[label]:
            run.finding(f"hypertri check {label} failed")
    if not (lift["match"] and red["match"]):
        run.finding("hypertri diameter mismatch")

    fixtures = {}
    if run.config.n == 4:
        paths = {cross_section(t, 2).vertices for t in graph.nodes}
        fixtures["nonlifting_path_absent"] = (
            (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)
        ) not in paths
        fixtures["lifting_path_present"] = ((1, 2), (1, 3), (1, 4), (3, 4)) in paths
    if run.config.n == 5 and ns.k == 1:
        target = ((1, 2), (1, 3), (3, 4), (3, 5), (4, 5))
        nodes = [
            v
            for v in range(len(graph))
            if cross_section(graph.nodes[v], 2).vertices == target
        ]
        if nodes:
            reduced_path = reduced_cross_section(graph, nodes[0], 1)
            fixtures["figure_path_nodes"] = nodes
            fixtures["figure_reduced_path"] = [list(v) for v in reduced_path.vertices]
    for name, ok in fixtures.items():
        if ok is False:
            run.finding(f"fixture {name} failed")
    record = record | {"fixtures": fixtures}
    _write(run, f"hypertri_n{run.config.n}_k{ns.k}.json", record)
    return _exit(run)


def cmd_potential(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    if ns.k is None and not ns.all:
        raise ValueError("provide --k K or --all")
    graph = _graph(run)
    ks = range(1, run.config.n - 1) if ns.all else [ns.k]
    reports = []
    for k in ks:
        for maker, bound_levels in ((potential, {k - 1, k}), (modified_potential, {k})):
            rep = maker(graph, ns.ref, k, thresholds=ns.thresholds)
            reports.append(rep.to_json())
            print(
                f"{rep.kind} potential k={k} ref={ns.ref}: max per-edge delta "
                f"{rep.max_edge_delta}, by level {rep.max_edge_delta_by_level}"
            )
            if rep.max_edge_delta > 1:
                run.finding(f"{rep.kind} potential k={k} moves by more than 1")
            for level, delta in rep.max_edge_delta_by_level:
                if level not in bound_levels and delta != 0:
                    run.finding(
                        f"{rep.kind} potential k={k} changed across a "
                        f"level-{level} edge"
                    )
    _write(
        run,
        f"potential_n{run.config.n}_ref{ns.ref}.json",
        _header(run) | {"reports": reports},
    )
    return _exit(run)


def cmd_chains(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    graph = _graph(run)
    n = run.config.n
    expected = expected_level_census(n)
    censuses: dict[tuple[int, ...], int] = {}
    first = None
    for s in range(ns.samples):
        try:
            chain = sample_chain(graph, seed=run.seed + s)
        except Finding as exc:
            run.finding(str(exc))
            continue
        if first is None:
            first = chain
        census = level_census(chain, n)
        censuses[census] = censuses.get(census, 0) + 1
        if census != expected:
            run.finding(f"chain census {census} differs from {expected}")
    print(f"{ns.samples} chains sampled; census {expected} expected")
    for census, count in sorted(censuses.items()):
        print(f"  census {census}: {count} chains")
    payload = _header(run) | {
        "samples": ns.samples,
        "seed": run.seed,
        "expected_census": list(expected),
        "censuses": [
            {"census": list(c), "chains": m} for c, m in sorted(censuses.items())
        ],
        "example_chain": list(first.nodes) if first else None,
    }
    _write(run, f"chains_n{n}.json", payload)
    return _exit(run)


def cmd_render(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    if ns.tiling in ("min", "max"):
        from .tiling import extremal_tiling

        tiling = extremal_tiling(run.config, ns.tiling)
        label = ns.tiling
    else:
        graph = _graph(run)
        tiling = graph.nodes[int(ns.tiling)]
        label = ns.tiling
    svg = tiling_to_svg(run.config, tiling)
    if run.out is None:
        print(svg)
    else:
        _write(run, f"tiling_n{run.config.n}_{label}.svg", svg)
    return _exit(run)


def cmd_oracle_count(ns: argparse.Namespace) -> int:
    run = _resolve(ns)
    result = commutation_census(run.config.n)
    print(
        f"n={result.n}: {result.reduced_words} reduced words, "
        f"{result.commutation_classes} commutation classes"
    )
    _write(
        run,
        f"oracle_n{result.n}.json",
        {
            "n": result.n,
            "reduced_words": result.reduced_words,
            "commutation_classes": result.commutation_classes,
        },
    )
    return _exit(run)


def _exit(run: RunConfig) -> int:
    if run.findings and run.strict:
        return 1
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonotiling",
        description="exact flip-graph experiments for zonotopal tilings of a line configuration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate all tilings into a flip graph")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="regularity census with certificates")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("diameters", help="quotient-skeleton diameters vs closed forms")
    _add_common(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_diameters)

    p = sub.add_parser("hypertri", help="lifting/reduced path diameters and fixtures")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_hypertri)

    p = sub.add_parser("potential", help="per-edge potential audit")
    _add_common(p)
    p.add_argument("--ref", type=int, default=0, help="reference node id")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument(
        "--thresholds", choices=("definition", "shifted"), default="definition"
    )
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("chains", help="sample maximal chains and their level censuses")
    _add_common(p)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("render", help="draw one tiling as SVG")
    _add_common(p)
    p.add_argument("--tiling", type=str, default="min", help="node id, 'min', or 'max'")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle-count", help="independent commutation-class count")
    _add_common(p)
    p.set_defaults(func=cmd_oracle_count)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (ValueError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
