"""Command-line entry point.

Exit codes: 0 success, 1 validation or data failures (details on stderr),
2 usage errors. File outputs are deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import AxisOverlapError, build_report
from .catalog import CriteriaCatalog, Group
from .corpus import (
    CacheError,
    CorpusIndex,
    EmptyCorpusError,
    EmptyQueryError,
    MalformedElementError,
    MissingStemsError,
    TokenizerConfig,
    TooShortError,
    check_inflection,
    check_insertion,
    find_matches,
    kwic_lines,
    parse_query,
    read_documents,
    tokenize,
)
from .dataset import Dataset, DatasetLoadError, load_dataset_file
from .exports import UnwritableTargetError, export_report

CATALOG_ENV_VAR = "MWE_WORKBENCH_CATALOG"


def _load_catalog(args: argparse.Namespace) -> CriteriaCatalog:
    path = args.catalog or os.environ.get(CATALOG_ENV_VAR)
    if path:
        return CriteriaCatalog.from_file(path)
    return CriteriaCatalog.default()


def _load_dataset(args: argparse.Namespace, catalog: CriteriaCatalog) -> Dataset:
    return load_dataset_file(args.input, getattr(args, "format", None), catalog)


def _parse_axes(parser: argparse.ArgumentParser, axes: str, held_out: str):
    try:
        groups = tuple(Group.parse(a) for a in axes.split(","))
        held = Group.parse(held_out)
    except ValueError as exc:
        parser.error(str(exc))
    if len(groups) != 3:
        parser.error("--axes must name exactly three groups, e.g. L,G,O")
    return groups, held


def _tokenizer_config(args: argparse.Namespace) -> TokenizerConfig:
    return TokenizerConfig(
        case_fold=not args.no_case_fold, normalize_yo=not args.keep_yo
    )


def _open_index(parser: argparse.ArgumentParser, args: argparse.Namespace) -> CorpusIndex:
    if args.index:
        return CorpusIndex.load(args.index)
    if args.corpus:
        names, texts, warnings = read_documents(args.corpus, args.blank_line_docs)
        if warnings:
            print(f"warning: {warnings} undecodable byte(s) replaced", file=sys.stderr)
        return CorpusIndex.build(texts, _tokenizer_config(args), names, warnings)
    parser.error("either --index or --corpus is required")


def _add_corpus_source_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--index", help="serialized corpus index cache")
    sub.add_argument("--corpus", nargs="+", help="corpus text file(s)")
    sub.add_argument(
        "--blank-line-docs",
        action="store_true",
        help="split each corpus file into documents on blank lines",
    )
    sub.add_argument("--no-case-fold", action="store_true", help="keep letter case")
    sub.add_argument("--keep-yo", action="store_true", help="do not map ё to е")


def _add_axes_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--axes", default="L,G,O", help="three cube axes (default L,G,O)")
    sub.add_argument("--held-out", default="R", help="color group (default R)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwe-workbench",
        description="Annotation, corpus-evidence and analysis workbench for MWE idiomaticity criteria.",
    )
    parser.add_argument("--catalog", help=f"criteria catalog config (or ${CATALOG_ENV_VAR})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every record against the criteria constraints")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="print totals and group vectors per record")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("analyze", help="full statistics report")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.add_argument("--out", help="directory for report.json")
    _add_axes_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cube", help="3D cube aggregation of group sums")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.add_argument("--out", help="write the point table to this TSV file")
    _add_axes_args(p)
    p.set_defaults(func=cmd_cube)

    p = sub.add_parser("corpus-index", help="tokenize corpus files and save an index cache")
    p.add_argument("corpus", nargs="+", help="corpus text file(s)")
    p.add_argument("--out", required=True, help="cache file to write")
    p.add_argument(
        "--blank-line-docs",
        action="store_true",
        help="split each corpus file into documents on blank lines",
    )
    p.add_argument("--no-case-fold", action="store_true", help="keep letter case")
    p.add_argument("--keep-yo", action="store_true", help="do not map ё to е")
    p.set_defaults(func=cmd_corpus_index)

    p = sub.add_parser("corpus-query", help="run a wildcard query and show KWIC lines")
    p.add_argument("query", help="e.g. 'белых * грибов' or 'бел* гриб*'")
    _add_corpus_source_args(p)
    p.add_argument("--kwic", type=int, default=10, help="max context lines to print")
    p.set_defaults(func=cmd_corpus_query)

    p = sub.add_parser("corpus-check", help="run an evidence check for one record")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.add_argument("--record", required=True, help="record id")
    p.add_argument("--check", required=True, choices=["insertion", "inflection"])
    _add_corpus_source_args(p)
    p.set_defaults(func=cmd_corpus_check)

    p = sub.add_parser("export", help="write the full report bundle (tables, JSON, SVG)")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.add_argument("--out", required=True, help="output directory")
    _add_axes_args(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="start the annotation HTTP service")
    p.add_argument("input")
    p.add_argument("--format", choices=["tabular", "structured", "tsv", "json"])
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8731)
    p.add_argument("--index", help="serialized corpus index cache")
    p.add_argument("--autosave", help="structured file to autosave accepted edits to")
    p.add_argument("--read-only", action="store_true")
    p.set_defaults(func=cmd_serve)

    return parser


# -- commands -----------------------------------------------------------------

def cmd_validate(parser, args) -> int:
    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    print(f"{len(dataset)} records valid")
    return 0


def cmd_score(parser, args) -> int:
    from .annotation import group_vector, total_score

    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    print("id\ttotal\tlexical\tgrammatical\tobsolescence\treplacement")
    for record in dataset.records:
        gv = group_vector(record.annotation, catalog)
        print(
            f"{record.id}\t{total_score(record.annotation)}\t{gv.lexical}\t"
            f"{gv.grammatical}\t{gv.obsolescence}\t{gv.replacement}"
        )
    return 0


def cmd_analyze(parser, args) -> int:
    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    axes, held = _parse_axes(parser, args.axes, args.held_out)
    try:
        report = build_report(dataset.records, catalog, axes, held)
    except AxisOverlapError as exc:
        parser.error(str(exc))

    h = report.histogram
    print(f"records: {report.n}")
    print(
        f"scores: min {h.counts[0][0]}, max {h.counts[-1][0]}, "
        f"median {h.median_standard:g}, range midpoint {h.range_midpoint:g}"
    )
    print(
        f"below median: {h.frac_below_median:.0%}; "
        f"below range midpoint: {h.frac_below_range_midpoint:.0%}"
    )
    print(
        "unique vectors: "
        f"{report.unique_vector_count} ({report.unique_vector_fraction:.0%})"
    )
    totals = report.group_totals
    for group in Group:
        print(
            f"group {group.value}: {totals.totals[group.value]} "
            f"({totals.shares[group.value]:.0%} of all scores)"
        )
    low = report.joint_low
    print(
        f"records below {low['threshold']} in both {low['group_a']} and "
        f"{low['group_b']}: {low['count']}"
    )
    print(f"cube points ({args.axes} / held-out {args.held_out}): {len(report.cube.points)}")
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / "report.json"
        path.write_text(
            json.dumps(report.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"report written to {path}")
    return 0


def cmd_cube(parser, args) -> int:
    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    axes, held = _parse_axes(parser, args.axes, args.held_out)
    try:
        report = build_report(dataset.records, catalog, axes, held)
    except AxisOverlapError as exc:
        parser.error(str(exc))
    cube = report.cube
    header = "\t".join(
        [*[g.value for g in cube.axes], "count", "held_out_mean", "color_scalar", "member_ids"]
    )
    lines = [header]
    for point in cube.points:
        lines.append(
            "\t".join(
                [
                    *[str(k) for k in point.key],
                    str(point.count),
                    f"{point.held_out_mean:g}",
                    f"{point.color_scalar:g}",
                    ",".join(point.member_ids),
                ]
            )
        )
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def cmd_corpus_index(parser, args) -> int:
    names, texts, warnings = read_documents(args.corpus, args.blank_line_docs)
    if warnings:
        print(f"warning: {warnings} undecodable byte(s) replaced", file=sys.stderr)
    index = CorpusIndex.build(texts, _tokenizer_config(args), names, warnings)
    index.save(args.out)
    print(f"indexed {index.n_tokens} tokens in {index.n_docs} document(s) -> {args.out}")
    return 0


def cmd_corpus_query(parser, args) -> int:
    index = _open_index(parser, args)
    query = parse_query(args.query, index.config)
    hits = find_matches(index, query)
    print(f"{len(hits)} hit(s) for {query.text!r}")
    for line in kwic_lines(index, hits)[: args.kwic]:
        print(f"{line.doc}:{line.start}\t{line.before} [{line.match}] {line.after}")
    return 0


def cmd_corpus_check(parser, args) -> int:
    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    record = dataset.get(args.record)
    if record is None:
        print(f"no record {args.record!r}", file=sys.stderr)
        return 1
    index = _open_index(parser, args)
    if args.check == "insertion":
        if record.token_stems:
            tokens = [tok for tok, _stem in record.token_stems]
        else:
            tokens = tokenize(record.surface, index.config)
        report = check_insertion(index, tokens)
    else:
        report = check_inflection(index, record)
    print(json.dumps(report.to_dict(), ensure_ascii=False, indent=2, sort_keys=True))
    return 0


def cmd_export(parser, args) -> int:
    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    axes, held = _parse_axes(parser, args.axes, args.held_out)
    try:
        report = build_report(dataset.records, catalog, axes, held)
    except AxisOverlapError as exc:
        parser.error(str(exc))
    paths = export_report(report, args.out)
    for path in paths:
        print(f"wrote {path}")
    return 0


def cmd_serve(parser, args) -> int:
    from .service import ServiceState, serve

    catalog = _load_catalog(args)
    dataset = _load_dataset(args, catalog)
    index = CorpusIndex.load(args.index) if args.index else None
    state = ServiceState(
        dataset=dataset,
        catalog=catalog,
        corpus_index=index,
        autosave_path=Path(args.autosave) if args.autosave else None,
        read_only=args.read_only,
    )
    print(f"serving {len(dataset)} records on http://{args.host}:{args.port}")
    serve(state, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except DatasetLoadError as exc:
        for issue in exc.issues:
            print(str(issue), file=sys.stderr)
        print(f"{len(exc.issues)} problem(s) found", file=sys.stderr)
        return 1
    except (
        EmptyCorpusError,
        CacheError,
        EmptyQueryError,
        MalformedElementError,
        TooShortError,
        MissingStemsError,
        UnwritableTargetError,
    ) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
