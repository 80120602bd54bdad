"""Command-line driver.

Subcommands: analyze (source tree -> provenance.log, report.json,
metrics.csv), classify (repository metadata -> maturity), evaluate
(report.json + ground truth -> precision/recall), compare (several
report.json files -> comparison.csv grouped by stack).

Exit codes: 0 success, 1 fatal error, 2 partial success (some files failed
to parse), 64 usage error. stdout carries the human-readable summary,
stderr the diagnostics.
"""

from __future__ import annotations

import argparse
import datetime as dt
import sys
from pathlib import Path

from . import __version__
from .evaluation import (
    DuplicateAnnotation,
    MalformedAnnotation,
    UnlabeledFinding,
    evaluate,
    load_ground_truth,
)
from .metrics import write_metrics_csv
from .pipeline import analyze_paths, find_java_files
from .report import (
    IoError,
    build_report,
    comparison,
    evaluation_lines,
    report_from_json,
    write_comparison_csv,
    write_evaluation_csv,
    write_provenance,
    write_report_json,
)
from .repometa import InvalidMetadata, classify, load_metadata
from .smells import ConfigError, RuleConfig, SmellKind

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _canonical_timestamp(text: str) -> str:
    try:
        stamp = dt.datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError:
        raise ValueError(f"bad ISO-8601 timestamp {text!r}") from None
    return stamp.isoformat()


def _universe(truth, findings, kinds_arg):
    """Evaluated kind universe: explicit --kinds, else what the review and
    the detector actually touched."""
    from .smells import kind_from_name

    if kinds_arg:
        return [kind_from_name(name.strip()) for name in kinds_arg.split(",") if name.strip()]
    present = {k for _, k in truth.entries}
    present |= {k for _, k in truth.missed}
    present |= {f.kind for f in findings}
    return [k for k in SmellKind if k in present]


def build_arg_parser() -> _Parser:
    parser = _Parser(prog="javasmell", description=__doc__)
    parser.add_argument("--version", action="version", version=f"javasmell {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a Java source tree")
    p.add_argument("--src", required=True, help="root of the Java source tree")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", help="rule threshold file (key = value lines)")
    p.add_argument("--metadata", help="repository metadata file for maturity")
    p.add_argument("--truth", help="ground-truth file; also writes evaluation.csv")
    p.add_argument("--timestamp", help="fixed ISO-8601 timestamp for the provenance header")
    p.add_argument("--workers", type=int, default=1, help="parallel parse workers")
    p.add_argument("--project", help="project name (default: source root name)")

    p = sub.add_parser("classify", help="classify repository maturity")
    p.add_argument("--metadata", required=True, help="repository metadata file")

    p = sub.add_parser("evaluate", help="score a report against ground truth")
    p.add_argument("report", help="report.json produced by analyze")
    p.add_argument("--truth", required=True, help="ground-truth file")
    p.add_argument("--out", default=".", help="directory for evaluation.csv")
    p.add_argument(
        "--kinds",
        help="comma-separated smell names fixing the evaluated universe "
        "(default: kinds present in the ground truth and findings)",
    )

    p = sub.add_parser("compare", help="aggregate several reports by stack")
    p.add_argument("reports", nargs="+", help="report.json files")
    p.add_argument("--out", default=".", help="directory for comparison.csv")
    return parser


def cmd_analyze(args) -> int:
    src = Path(args.src)
    if not src.is_dir():
        print(f"error: --src {src} is not a directory", file=sys.stderr)
        return EXIT_FATAL
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_FATAL
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    try:
        config = RuleConfig.from_file(args.config) if args.config else RuleConfig()
    except (ConfigError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FATAL

    maturity = None
    if args.metadata:
        try:
            maturity = classify(load_metadata(args.metadata))
        except (InvalidMetadata, OSError) as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_FATAL

    timestamp = dt.datetime.now().isoformat()
    if args.timestamp:
        try:
            timestamp = _canonical_timestamp(args.timestamp)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_FATAL

    project = args.project or src.resolve().name
    result = analyze_paths(src, find_java_files(src), config, args.workers)

    for diag in result.parse_diagnostics:
        print(str(diag), file=sys.stderr)
    for diag in result.model.diagnostics:
        print(str(diag), file=sys.stderr)
    for failure in result.failures:
        print(f"{failure.path}: failed to parse: {failure.error}", file=sys.stderr)

    report = build_report(
        project,
        result.findings,
        project_metrics=result.project_metrics,
        maturity=maturity,
        config=config,
    )
    try:
        write_provenance(
            result.findings,
            out / "provenance.log",
            project=project,
            version=__version__,
            config_digest=config.digest(),
            timestamp=timestamp,
        )
        write_report_json(report, out / "report.json")
        write_metrics_csv(result.type_metrics, out / "metrics.csv")
    except IoError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FATAL

    print(f"project: {project}")
    print(f"files analyzed: {len(result.model.file_stats)} (failed: {len(result.failures)})")
    print(f"types: {len(result.model.types)}")
    print(f"findings: {len(result.findings)}")
    for kind in SmellKind:
        n = report.smell_counts[kind]
        if n:
            print(f"  {kind.value}: {n}")
    print(f"outputs: {out / 'provenance.log'}, {out / 'report.json'}, {out / 'metrics.csv'}")

    if args.truth:
        try:
            truth = load_ground_truth(args.truth)
            kinds = _universe(truth, result.findings, None)
            evaluation = evaluate(result.findings, truth, kinds=kinds)
        except (UnlabeledFinding, DuplicateAnnotation, MalformedAnnotation, OSError) as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_FATAL
        write_evaluation_csv(evaluation, out / "evaluation.csv")
        for line in evaluation_lines(evaluation):
            print(line)

    return EXIT_PARTIAL if result.partial else EXIT_OK


def cmd_classify(args) -> int:
    try:
        verdict = classify(load_metadata(args.metadata))
    except (InvalidMetadata, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FATAL
    print(verdict.label.value)
    for line in verdict.rationale:
        print(f"  {line}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        report = report_from_json(args.report)
        truth = load_ground_truth(args.truth)
        kinds = _universe(truth, report.findings, args.kinds)
        result = evaluate(report.findings, truth, kinds=kinds)
    except UnlabeledFinding as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FATAL
    except (DuplicateAnnotation, MalformedAnnotation, OSError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FATAL
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_evaluation_csv(result, out / "evaluation.csv")
    print(f"project: {report.project_name}")
    for line in evaluation_lines(result):
        print(line)
    return EXIT_OK


def cmd_compare(args) -> int:
    try:
        reports = [report_from_json(p) for p in args.reports]
        comp = comparison(reports)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FATAL
    except (OSError, KeyError) as err:
        print(f"error: cannot read report: {err}", file=sys.stderr)
        return EXIT_FATAL
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_comparison_csv(comp, out / "comparison.csv")
    for label, projects in comp.stacks.items():
        print(f"{label}: {', '.join(projects)}")
    print(f"output: {out / 'comparison.csv'}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "classify": cmd_classify,
        "evaluate": cmd_evaluate,
        "compare": cmd_compare,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
