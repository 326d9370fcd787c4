"""Command-line entry point.

One subcommand per analysis; every run writes its outputs plus a
manifest into ``--out`` and nothing anywhere else (the optional load
report goes to stderr unless ``--report`` redirects it).  Exit codes:
0 success, 1 data error (single machine-parsable line on stderr),
2 usage error.

Defaults follow the measurement protocol: sample size 2000,
30 repetitions, 30 null networks, 10000 anchors, removal fractions
0.005 and 0.05.  CITEGRAPH_THREADS caps parallelism; --threads
overrides the environment.  Thread count never changes any output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__, backend
from .clustering import (
    FILTERS,
    clustering_distribution,
    edge_category_relations,
    edge_clustering_table,
)
from .corpus import corpus_summary, load_corpus, write_corpus
from .distance import fit_gaussian, sampled_mean_distance, weighted_distance_summary
from .errors import CitegraphError
from .fields import (
    CategoryTable,
    FieldMatrix,
    category_distance_matrix,
    citation_counts,
    citation_matrix,
    hh_by_category,
    load_universe,
    pct_change_distribution,
    within_field_share_distribution,
)
from .graph import build_graph, save_snapshot
from .impact import lorenz_gini, removal_robustness, top_share
from .manifest import build_manifest, write_manifest
from .nullmodel import null_distance_baseline
from .synth import SynthConfig, generate_series

SUBCOMMANDS = (
    "ingest-report",
    "distances",
    "weighted-distances",
    "nullmodel",
    "clustering",
    "impact",
    "robustness",
    "fields",
    "field-distances",
    "pct-change",
    "synth",
)


def _add_corpus_args(p, with_year=True):
    p.add_argument("--nodes", required=True, help="nodes.tsv: paper_id, year, categories")
    p.add_argument("--edges", required=True, help="edges.tsv: source_id, target_id")
    if with_year:
        p.add_argument("--year", required=True, type=int, help="sampled year selecting sources")
    p.add_argument("--report", help="write the load report JSON here instead of stderr")


def _add_common_args(p):
    p.add_argument("--out", required=True, help="output directory for this run")
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: CITEGRAPH_THREADS or 1)")


def _add_sampling_args(p):
    p.add_argument("--sample-size", type=int, default=2000)
    p.add_argument("--reps", type=int, default=30)


def _add_format_arg(p):
    p.add_argument("--format", choices=("json", "csv", "both"), default="both",
                   help="restrict which result representations are written")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citegraph",
        description="Citation-network distance, inequality and field analytics",
    )
    parser.add_argument("--version", action="version", version=f"citegraph {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ingest-report", help="load a corpus and emit counts")
    _add_corpus_args(p, with_year=False)
    _add_common_args(p)

    for name, help_text in (
        ("distances", "sampled mean halved distances"),
        ("weighted-distances", "sampled overlap-weighted distances"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_corpus_args(p)
        _add_common_args(p)
        _add_sampling_args(p)
        _add_format_arg(p)

    p = sub.add_parser("nullmodel", help="degree-preserving random baseline")
    _add_corpus_args(p)
    _add_common_args(p)
    p.add_argument("--sample-size", type=int, default=2000)
    p.add_argument("--networks", type=int, default=30)
    p.add_argument("--swap-multiplier", type=int, default=10)
    p.add_argument("--export-networks", type=int, default=0,
                   help="also write the first N rewired graphs as snapshots")
    _add_format_arg(p)

    p = sub.add_parser("clustering", help="edge clustering coefficients")
    _add_corpus_args(p)
    _add_common_args(p)
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--per-edge", action="store_true", help="write the per-edge CSV")

    p = sub.add_parser("impact", help="Lorenz curve, Gini, top shares")
    _add_corpus_args(p)
    _add_common_args(p)
    p.add_argument("--top-fractions", default="0.04",
                   help="comma-separated top shares to report")
    _add_format_arg(p)

    p = sub.add_parser("robustness", help="distances under top-impact removal")
    _add_corpus_args(p)
    _add_common_args(p)
    _add_sampling_args(p)
    p.add_argument("--fractions", default="0,0.005,0.05",
                   help="comma-separated removal fractions, ascending")
    _add_format_arg(p)

    p = sub.add_parser("fields", help="citation matrix, within-share, concentration")
    _add_corpus_args(p)
    _add_common_args(p)
    p.add_argument("--category-universe", help="fixed label universe, one per line")
    p.add_argument("--include-unclassified", action="store_true")

    p = sub.add_parser("field-distances", help="category-pair mean distances")
    _add_corpus_args(p)
    _add_common_args(p)
    p.add_argument("--category-universe", help="fixed label universe, one per line")
    p.add_argument("--anchor-sample", type=int, default=10000)

    p = sub.add_parser("pct-change", help="cell-wise change between two matrices")
    p.add_argument("--early", required=True, help="earlier FieldMatrix CSV")
    p.add_argument("--late", required=True, help="later FieldMatrix CSV")
    _add_common_args(p)
    _add_format_arg(p)

    p = sub.add_parser("synth", help="generate a synthetic multi-epoch corpus")
    p.add_argument("--config", required=True, help="SynthConfig JSON")
    _add_common_args(p)

    return parser


def _check_inputs(parser, args, names):
    for name in names:
        path = getattr(args, name.replace("-", "_"), None)
        if path is not None and not Path(path).is_file():
            parser.error(f"input file not found: {path}")


def _load(args):
    papers, citations, report = load_corpus(args.nodes, args.edges)
    line = report.to_json()
    if getattr(args, "report", None):
        Path(args.report).write_text(line + "\n", encoding="utf-8")
    else:
        print(line, file=sys.stderr)
    return papers, citations, report


def _graph(args):
    papers, citations, _ = _load(args)
    return papers, citations, build_graph(papers, citations, args.year)


def _categories(papers, args) -> CategoryTable:
    universe = None
    if getattr(args, "category_universe", None):
        universe = load_universe(args.category_universe)
    return CategoryTable.from_papers(papers, universe=universe)


def _want(args, kind):
    fmt = getattr(args, "format", "both")
    return fmt in (kind, "both")


def _write_json(out_dir, name, text, outputs):
    (out_dir / name).write_text(text + "\n", encoding="utf-8")
    outputs.append(name)


def _write_csv(out_dir, name, header, rows, outputs):
    with open(out_dir / name, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    outputs.append(name)


def _fmt(value):
    if value is None:
        return ""
    return repr(float(value))


def _histogram_rows(summary):
    return [[_fmt(d), _fmt(p)] for d, p in sorted(summary.histogram.items())]


# -- subcommand bodies ----------------------------------------------------


def _run_ingest_report(args, out_dir, outputs):
    papers, citations, report = _load(args)
    summary = corpus_summary(papers, citations)
    payload = {
        "load_report": json.loads(report.to_json()),
        "summary": {
            "source_papers": summary.source_papers,
            "distinct_targets": summary.distinct_targets,
            "edges": summary.edges,
            "mean_references": summary.mean_references,
        },
    }
    _write_json(out_dir, "report.json", json.dumps(payload, sort_keys=True, indent=2), outputs)


def _run_distances(args, out_dir, outputs, weighted: bool):
    _, _, graph = _graph(args)
    fn = weighted_distance_summary if weighted else sampled_mean_distance
    summary = fn(graph, sample_size=args.sample_size, repetitions=args.reps,
                 master_seed=args.seed, threads=args.threads)
    if _want(args, "json"):
        fit = fit_gaussian(summary.histogram) if summary.histogram else None
        payload = json.loads(summary.to_json())
        payload["gaussian_fit"] = (
            {"mu": fit.mu, "sigma": fit.sigma, "degenerate": fit.degenerate} if fit else None
        )
        _write_json(out_dir, "summary.json", json.dumps(payload, sort_keys=True, indent=2), outputs)
    if _want(args, "csv"):
        _write_csv(out_dir, "histogram.csv", ["distance", "probability"],
                   _histogram_rows(summary), outputs)


def _run_nullmodel(args, out_dir, outputs):
    _, _, graph = _graph(args)
    sample_size = min(args.sample_size, graph.n_sources)
    result = null_distance_baseline(
        graph, n_networks=args.networks, sample_size=sample_size,
        swap_multiplier=args.swap_multiplier, master_seed=args.seed,
        threads=args.threads, keep_networks=args.export_networks,
    )
    if args.export_networks:
        result, kept = result
        for i, net in enumerate(kept):
            name = f"network_{i:02d}.cgsnap"
            save_snapshot(net, out_dir / name)
            outputs.append(name)
    if _want(args, "json"):
        _write_json(out_dir, "null.json", result.to_json(), outputs)
    if _want(args, "csv"):
        rows = [
            [i, _fmt(m), a]
            for i, (m, a) in enumerate(
                zip(result.per_network_mean_distance, result.accepted_swaps)
            )
        ]
        _write_csv(out_dir, "per_network.csv",
                   ["network", "mean_distance", "accepted_swaps"], rows, outputs)


def _run_clustering(args, out_dir, outputs):
    papers, _, graph = _graph(args)
    categories = _categories(papers, args) if args.filter != "all" else None
    dist = clustering_distribution(graph, edge_filter=args.filter, categories=categories)
    _write_json(out_dir, "clustering.json", dist.to_json(), outputs)
    if args.per_edge:
        e_src, e_tgt, observed, expected, coeff = edge_clustering_table(graph)
        try:
            relations = edge_category_relations(graph, _categories(papers, args))
        except CitegraphError:
            relations = ["" for _ in range(graph.n_edges)]
        rows = []
        for e in range(graph.n_edges):
            c = coeff[e]
            rows.append([
                graph.source_ids[e_src[e]],
                graph.target_ids[e_tgt[e]],
                int(observed[e]),
                _fmt(expected[e]),
                "" if c != c else _fmt(c),  # NaN check
                relations[e],
            ])
        _write_csv(out_dir, "edges.csv",
                   ["source_id", "target_id", "observed", "expected",
                    "coefficient", "category_relation"], rows, outputs)


def _run_impact(args, out_dir, outputs):
    _, _, graph = _graph(args)
    degrees = graph.target_degrees()
    lorenz = lorenz_gini(degrees)
    fractions = [float(f) for f in args.top_fractions.split(",") if f]
    shares = {repr(f): top_share(degrees, f) for f in fractions}
    if _want(args, "json"):
        payload = {
            "gini": lorenz.gini,
            "excluded_degree_one_count": lorenz.excluded_degree_one_count,
            "top_shares": shares,
        }
        _write_json(out_dir, "impact.json", json.dumps(payload, sort_keys=True, indent=2), outputs)
    if _want(args, "csv"):
        _write_csv(out_dir, "lorenz.csv", ["population_share", "citation_share"],
                   [[_fmt(p), _fmt(v)] for p, v in lorenz.points], outputs)


def _run_robustness(args, out_dir, outputs):
    _, _, graph = _graph(args)
    fractions = [float(f) for f in args.fractions.split(",") if f]
    curve = removal_robustness(
        graph, fractions, sample_size=args.sample_size, repetitions=args.reps,
        master_seed=args.seed, threads=args.threads,
    )
    if _want(args, "json"):
        _write_json(out_dir, "robustness.json", curve.to_json(), outputs)
    if _want(args, "csv"):
        rows = [
            [_fmt(f), _fmt(m), _fmt(sd), _fmt(pct), _fmt(reach)]
            for f, m, sd, pct, reach in zip(
                curve.fractions, curve.mean_distances, curve.sds,
                curve.pct_increases, curve.reachable_fractions,
            )
        ]
        _write_csv(out_dir, "robustness.csv",
                   ["fraction", "mean_distance", "sd", "pct_increase",
                    "reachable_fraction"], rows, outputs)


def _run_fields(args, out_dir, outputs):
    papers, _, graph = _graph(args)
    categories = _categories(papers, args)
    counts = citation_counts(graph, categories)
    matrix = citation_matrix(graph, categories)
    counts.to_csv(out_dir / "citation_counts.csv")
    outputs.append("citation_counts.csv")
    matrix.to_csv(out_dir / "citation_matrix.csv")
    outputs.append("citation_matrix.csv")
    within = within_field_share_distribution(matrix, include_unclassified=args.include_unclassified)
    _write_json(out_dir, "within_share.json", within.to_json(), outputs)
    rows = [
        [cat, _fmt(hh_all), _fmt(hh_cross), n]
        for cat, hh_all, hh_cross, n in hh_by_category(
            counts, include_unclassified=args.include_unclassified
        )
    ]
    _write_csv(out_dir, "hh.csv", ["category", "hh_all", "hh_cross", "n_citations"],
               rows, outputs)


def _run_field_distances(args, out_dir, outputs):
    papers, _, graph = _graph(args)
    categories = _categories(papers, args)
    matrix = category_distance_matrix(
        graph, categories, anchor_sample=args.anchor_sample,
        master_seed=args.seed, threads=args.threads,
    )
    matrix.to_csv(out_dir / "distance_matrix.csv")
    outputs.append("distance_matrix.csv")


def _run_pct_change(args, out_dir, outputs):
    early = FieldMatrix.from_csv(args.early)
    late = FieldMatrix.from_csv(args.late)
    result = pct_change_distribution(early, late)
    if _want(args, "json"):
        _write_json(out_dir, "pct_change.json", result.to_json(), outputs)
    if _want(args, "csv"):
        n = len(result.changes)
        rows = [[_fmt(ch), _fmt((i + 1) / n)] for i, ch in enumerate(result.changes)]
        _write_csv(out_dir, "changes.csv", ["pct_change", "cumulative_fraction"],
                   rows, outputs)


def _run_synth(args, out_dir, outputs):
    config = SynthConfig.from_json(args.config)
    corpora, manifest = generate_series(config)
    for e, (papers, citations) in enumerate(corpora):
        epoch_dir = out_dir / f"epoch_{e:02d}"
        epoch_dir.mkdir(parents=True, exist_ok=True)
        write_corpus(papers, citations, epoch_dir / "nodes.tsv", epoch_dir / "edges.tsv")
        outputs.append(f"epoch_{e:02d}/nodes.tsv")
        outputs.append(f"epoch_{e:02d}/edges.tsv")
    _write_json(out_dir, "series.json", json.dumps(manifest, sort_keys=True, indent=2), outputs)


_INPUT_ARGS = {
    "ingest-report": ["nodes", "edges"],
    "distances": ["nodes", "edges"],
    "weighted-distances": ["nodes", "edges"],
    "nullmodel": ["nodes", "edges"],
    "clustering": ["nodes", "edges"],
    "impact": ["nodes", "edges"],
    "robustness": ["nodes", "edges"],
    "fields": ["nodes", "edges", "category-universe"],
    "field-distances": ["nodes", "edges", "category-universe"],
    "pct-change": ["early", "late"],
    "synth": ["config"],
}


def _validate_static(parser, args):
    sample = getattr(args, "sample_size", None)
    if sample is not None and sample < 2:
        parser.error(f"--sample-size must be >= 2, got {sample}")
    for name in ("reps", "networks", "swap_multiplier", "anchor_sample"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name.replace('_', '-')} must be >= 1, got {value}")
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error(f"--threads must be >= 1, got {args.threads}")
    fractions = getattr(args, "fractions", None)
    if fractions is not None:
        try:
            values = [float(f) for f in fractions.split(",") if f]
        except ValueError:
            parser.error(f"--fractions must be comma-separated numbers: {fractions!r}")
        if any(not 0 <= f < 1 for f in values) or sorted(values) != values:
            parser.error("--fractions must be ascending values in [0, 1)")
    top = getattr(args, "top_fractions", None)
    if top is not None:
        try:
            values = [float(f) for f in top.split(",") if f]
        except ValueError:
            parser.error(f"--top-fractions must be comma-separated numbers: {top!r}")
        if any(not 0 < f < 1 for f in values):
            parser.error("--top-fractions must lie in (0, 1)")


_RUNNERS = {
    "ingest-report": _run_ingest_report,
    "distances": lambda a, o, out: _run_distances(a, o, out, weighted=False),
    "weighted-distances": lambda a, o, out: _run_distances(a, o, out, weighted=True),
    "nullmodel": _run_nullmodel,
    "clustering": _run_clustering,
    "impact": _run_impact,
    "robustness": _run_robustness,
    "fields": _run_fields,
    "field-distances": _run_field_distances,
    "pct-change": _run_pct_change,
    "synth": _run_synth,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_inputs(parser, args, _INPUT_ARGS[args.subcommand])
    _validate_static(parser, args)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: list[str] = []
    try:
        _RUNNERS[args.subcommand](args, out_dir, outputs)
    except (CitegraphError, ValueError) as exc:
        line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
        print(f"citegraph-error {line}", file=sys.stderr)
        return 1

    parameters = {
        k: v for k, v in vars(args).items() if k not in ("subcommand", "out")
    }
    manifest = build_manifest(
        subcommand=args.subcommand,
        argv=argv,
        parameters=parameters,
        inputs=[
            getattr(args, name.replace("-", "_"))
            for name in _INPUT_ARGS[args.subcommand]
            if getattr(args, name.replace("-", "_"), None)
        ],
        outputs=outputs,
        master_seed=getattr(args, "seed", None),
    )
    write_manifest(out_dir, manifest)
    return 0


if __name__ == "__main__":
    sys.exit(main())
