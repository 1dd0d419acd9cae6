"""Command-line front door composing the pipeline for batch use.

Subcommands: `patterns expand`, `preannotate`, `validate`, `stats`,
`agreement`, `convert`.  Human-readable output goes to stdout,
diagnostics to stderr; exit code 2 signals usage or input problems.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import analytics, corpus_io, validator
from .ingest import DEFAULT_LEXICON, OrgGazetteer, document_from_text, read_tagged
from .model import Corpus
from .patterns import PatternConfigError, expand, parse_config
from .pipeline import preannotate_document


def default_config_path() -> Path:
    return Path(str(resources.files("promex").joinpath("data/patterns/default.pat")))


def default_gazetteer_path() -> Path:
    return Path(str(resources.files("promex").joinpath("data/gazetteers/companies.txt")))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="promex",
        description="Rule-based pre-annotation and corpus tooling for company/product relations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_patterns = sub.add_parser("patterns", help="pattern inventory operations")
    patterns_sub = p_patterns.add_subparsers(dest="patterns_command", required=True)
    p_expand = patterns_sub.add_parser("expand", help="expand a pattern config into surface patterns")
    p_expand.add_argument("--config", default=None, help="pattern config file (default: shipped config)")
    p_expand.add_argument("--count-only", action="store_true", help="print only the surface pattern count")

    p_pre = sub.add_parser("preannotate", help="run the pre-annotation pipeline over a directory")
    p_pre.add_argument("--config", default=None, help="pattern config file (default: shipped config)")
    p_pre.add_argument("--gazetteer", default=None, help="company gazetteer file (default: shipped list)")
    p_pre.add_argument("--in", dest="input_dir", required=True, help="directory of input documents")
    p_pre.add_argument("--out", dest="output", required=True, help="corpus file to write")
    p_pre.add_argument("--tagged", action="store_true", help="inputs are TOKEN/POS[/BIO] column files")
    p_pre.add_argument("--jobs", type=int, default=1, help="parallel workers (output is order-independent)")

    p_val = sub.add_parser("validate", help="check a corpus against the annotation guidelines")
    p_val.add_argument("--in", dest="input", required=True, help="corpus file")
    p_val.add_argument("--stoplist", default=None, help="extra stoplist adjectives, one per line")
    p_val.add_argument("--format", dest="fmt", choices=("text", "tsv"), default="text")

    p_stats = sub.add_parser("stats", help="corpus statistics")
    p_stats.add_argument("--in", dest="input", required=True, help="corpus file")
    p_stats.add_argument("--kv", action="store_true", help="machine-readable key-value lines")

    p_agree = sub.add_parser("agreement", help="inter-annotator agreement between two corpora")
    p_agree.add_argument("--a", dest="layer_a", required=True, help="first annotation layer")
    p_agree.add_argument("--b", dest="layer_b", required=True, help="second annotation layer")

    p_conv = sub.add_parser("convert", help="convert between corpus and column formats")
    p_conv.add_argument("--in", dest="input", required=True, help="input file")
    p_conv.add_argument("--to", dest="target", choices=("column", "corpus"), required=True)

    return parser


def _load_corpus(path: str) -> Corpus:
    try:
        return corpus_io.load_corpus(path)
    except (corpus_io.CorpusIOError, corpus_io.InvariantViolation, OSError) as exc:
        raise SystemExit(_fail(f"cannot read corpus {path!r}: {exc}"))


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return 2


def _cmd_patterns_expand(args: argparse.Namespace) -> int:
    path = Path(args.config) if args.config else default_config_path()
    try:
        config = parse_config(path.read_text(encoding="utf-8"))
        surfaces = expand(config)
    except (PatternConfigError, OSError) as exc:
        return _fail(f"cannot expand {path}: {exc}")
    if args.count_only:
        print(len(surfaces))
    else:
        for surface in surfaces:
            print(f"{surface.surface_id}\t{surface.render()}")
    return 0


def _cmd_preannotate(args: argparse.Namespace) -> int:
    config_path = Path(args.config) if args.config else default_config_path()
    gazetteer_path = Path(args.gazetteer) if args.gazetteer else default_gazetteer_path()
    try:
        config = parse_config(config_path.read_text(encoding="utf-8"))
        surfaces = expand(config)
        gazetteer = OrgGazetteer.from_file(str(gazetteer_path))
    except (PatternConfigError, OSError) as exc:
        return _fail(str(exc))

    input_dir = Path(args.input_dir)
    if not input_dir.is_dir():
        return _fail(f"not a directory: {input_dir}")
    paths = sorted(p for p in input_dir.iterdir() if p.is_file() and not p.name.startswith("."))

    def process(path: Path):
        text = path.read_text(encoding="utf-8")
        if args.tagged:
            doc = read_tagged(text, doc_id=path.stem)
        else:
            doc = document_from_text(text, doc_id=path.stem, lexicon=DEFAULT_LEXICON)
        return preannotate_document(doc, gazetteer, surfaces)

    jobs = max(1, args.jobs)
    if jobs == 1:
        results = [process(p) for p in paths]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(process, paths))

    corpus = Corpus(
        schema_version=corpus_io.SCHEMA_VERSION,
        documents=tuple(r.document for r in results),
    )
    try:
        corpus_io.save_corpus(corpus, args.output)
    except corpus_io.SinkFailure as exc:
        return _fail(str(exc))

    raw = [
        (result.document.doc_id, rel)
        for result in results
        for rel in result.raw_relations
    ]
    print(analytics.pattern_yield(relations=raw).render())
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args.input)
    stoplist = set(validator.DEFAULT_STOPLIST)
    if args.stoplist:
        try:
            with open(args.stoplist, encoding="utf-8") as fh:
                stoplist.update(
                    line.strip().lower() for line in fh
                    if line.strip() and not line.startswith("#")
                )
        except OSError as exc:
            return _fail(f"cannot read stoplist: {exc}")
    violations = validator.validate_corpus(corpus.documents, stoplist)
    rendered = validator.report(violations, args.fmt)
    if rendered:
        print(rendered)
    return 1 if any(v.severity is validator.Severity.ERROR for v in violations) else 0


def _cmd_stats(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args.input)
    try:
        result = analytics.stats(corpus)
    except analytics.EmptyCorpus as exc:
        return _fail(str(exc))
    print(result.render_kv() if args.kv else result.render_table())
    return 0


def _cmd_agreement(args: argparse.Namespace) -> int:
    corpus_a = _load_corpus(args.layer_a)
    corpus_b = _load_corpus(args.layer_b)
    try:
        scores = analytics.agreement(corpus_a, corpus_b)
    except analytics.TokenizationMismatch as exc:
        return _fail(str(exc))
    print(scores.render())
    return 0


def _cmd_convert(args: argparse.Namespace) -> int:
    if args.target == "column":
        corpus = _load_corpus(args.input)
        for doc in corpus.documents:
            sys.stdout.write(corpus_io.export_column(doc))
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                doc = read_tagged(fh.read(), doc_id=Path(args.input).stem)
        except (OSError, ValueError) as exc:
            return _fail(f"cannot read column file: {exc}")
        corpus = Corpus(schema_version=corpus_io.SCHEMA_VERSION, documents=(doc,))
        corpus_io.write_corpus(corpus, sys.stdout)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "patterns":
        return _cmd_patterns_expand(args)
    if args.command == "preannotate":
        return _cmd_preannotate(args)
    if args.command == "validate":
        return _cmd_validate(args)
    if args.command == "stats":
        return _cmd_stats(args)
    if args.command == "agreement":
        return _cmd_agreement(args)
    if args.command == "convert":
        return _cmd_convert(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
