"""Command line entry point: ``msextract {extract,decompose,evaluate,sweep}``.

Exit codes: 0 success, 1 usage, 2 input validation, 3 degenerate result.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cluster import epsilon_dbscan
from .config import RunConfig
from .errors import (
    ClassUniverseError,
    DegenerateVocabularyError,
    EmptyProjectError,
    FactsValidationError,
    UndefinedMetricError,
)
from .evaluate import load_truth, match, quality_report
from .export import (
    dumps_json,
    hierarchy_to_dict,
    hierarchy_to_dot,
    load_assignment,
    report_row,
    rows_to_csv,
    services_view,
)
from .extract import dumps_facts, load_facts, scan_sources
from .lexicon import load_stoplist
from .pipeline import SWEEPABLE, similarities, sweep, sweep_values
from .similarity import write_matrix_csv

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _emit(text: str, out_dir, filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
    else:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / filename).write_text(text, encoding="utf-8")


def _config(args) -> RunConfig:
    return RunConfig(
        alpha=args.alpha,
        max_epsilon=args.max_epsilon,
        step=args.step,
        min_samples=args.min_samples,
        stopwords=args.stopwords,
    )


def _match_or_none(assignment, truth):
    if truth is None:
        return None
    try:
        return match(assignment, truth)
    except UndefinedMetricError:
        return None


def _row(assignment, facts, truth):
    row = report_row(quality_report(assignment, facts.call_graph), _match_or_none(assignment, truth))
    if truth is not None and "precision" not in row:
        row.update({"precision": "NA", "sr@5": "NA", "sr@7": "NA", "sr@9": "NA"})
    return row


def cmd_extract(args) -> int:
    facts = scan_sources(args.root, profile=args.profile)
    for w in facts.warnings:
        _warn(w)
    text = dumps_facts(facts)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    print(f"{facts.n} classes, {int(facts.call_graph.inter_class().sum())} inter-class calls", file=sys.stderr)
    return EXIT_OK


def cmd_decompose(args) -> int:
    config = _config(args)
    facts = load_facts(args.facts)
    truth = load_truth(args.truth, facts.names) if args.truth else None
    if facts.call_graph.inter_class().sum() == 0:
        _warn("the call graph has no inter-class calls; structural similarity is 0 everywhere")
    sims = similarities(facts, config.alpha, load_stoplist(config.stopwords))
    h = epsilon_dbscan(sims.distance, config.step, config.max_epsilon, config.min_samples)
    final = h.final
    if final.k == 0:
        _warn(f"all {facts.n} classes are outliers at max_epsilon={config.max_epsilon:g}")

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    formats = {args.format} if args.format else {"json", "csv", "dot"}
    row = _row(final.assignment, facts, truth)
    if "json" in formats:
        (out / "hierarchy.json").write_text(dumps_json(hierarchy_to_dict(h, facts.names)), encoding="utf-8")
        (out / "services.json").write_text(dumps_json(services_view(final, facts.names)), encoding="utf-8")
        (out / "report.json").write_text(dumps_json(row), encoding="utf-8")
    if "csv" in formats:
        (out / "report.csv").write_text(rows_to_csv([row]), encoding="utf-8")
        write_matrix_csv(sims.fused.values, facts.names, out / "class_similarity.csv")
    if "dot" in formats:
        (out / "hierarchy.dot").write_text(hierarchy_to_dot(h, facts.names), encoding="utf-8")
    print(
        f"{len(h.layers)} layers; final eps={final.epsilon:g}: {final.k} services, {final.outlier_count} outliers",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    facts = load_facts(args.facts)
    assignment = load_assignment(args.decomposition, facts.names, layer=args.layer)
    truth = load_truth(args.truth, facts.names) if args.truth else None
    row = _row(assignment, facts, truth)
    if args.format == "csv":
        _emit(rows_to_csv([row]), args.out_dir, "report.csv")
    else:
        _emit(dumps_json(row), args.out_dir, "report.json")
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _config(args)
    facts = load_facts(args.facts)
    truth = load_truth(args.truth, facts.names) if args.truth else None
    start, stop, step = args.range
    values = sweep_values(args.param, start, stop, step)
    rows = []
    for value, final in sweep(facts, args.param, values, config, stoplist=load_stoplist(config.stopwords)):
        rows.append({args.param: value, **_row(final.assignment, facts, truth)})
    if args.format == "json":
        _emit(dumps_json(rows), args.out_dir, f"sweep_{args.param}.json")
    else:
        _emit(rows_to_csv(rows), args.out_dir, f"sweep_{args.param}.csv")
    return EXIT_OK


def _add_config_flags(p) -> None:
    d = RunConfig()
    p.add_argument("--alpha", type=float, default=d.alpha, help="weight of structural similarity (default %(default)s)")
    p.add_argument("--max-epsilon", type=float, default=d.max_epsilon, help="last epsilon layer (default %(default)s)")
    p.add_argument("--step", type=float, default=d.step, help="epsilon increment (default %(default)s)")
    p.add_argument("--min-samples", type=int, default=d.min_samples, help="DBSCAN MinSamples (default %(default)s)")
    p.add_argument("--stopwords", type=Path, default=None, help="extra stop words, one per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="msextract", description="Extract candidate microservices from a monolith.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="parse sources into a facts file")
    p.add_argument("root", type=Path)
    p.add_argument("-o", "--out", type=Path, default=None, help="facts file (default: stdout)")
    p.add_argument("--profile", default="java-like")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("decompose", help="run hierarchical DBSCAN on a facts file")
    p.add_argument("facts", type=Path)
    _add_config_flags(p)
    p.add_argument("--truth", type=Path, default=None, help="ground-truth services file")
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("--format", choices=("json", "csv", "dot"), default=None, help="write only this format")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("evaluate", help="score a decomposition")
    p.add_argument("facts", type=Path)
    p.add_argument("decomposition", type=Path, help="hierarchy, decomposition or services JSON")
    p.add_argument("--layer", type=int, default=None, help="hierarchy layer index (default: final)")
    p.add_argument("--truth", type=Path, default=None)
    p.add_argument("--out-dir", type=Path, default=None, help="write report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="metrics against one hyper-parameter")
    p.add_argument("facts", type=Path)
    p.add_argument("--param", choices=SWEEPABLE, required=True)
    p.add_argument("--range", type=float, nargs=3, metavar=("START", "STOP", "STEP"), required=True)
    _add_config_flags(p)
    p.add_argument("--truth", type=Path, default=None)
    p.add_argument("--out-dir", type=Path, default=None, help="write the table here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (EmptyProjectError, DegenerateVocabularyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (FactsValidationError, ClassUniverseError, json.JSONDecodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
