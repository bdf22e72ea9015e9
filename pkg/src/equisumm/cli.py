"""Command-line entry point: ingest, classify, summarize, evaluate, graph."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import warnings
from contextlib import contextmanager
from pathlib import Path

from . import fairness
from .clustering import Classification, classify_corpus
from .config import RunConfig, build_config, dump_config, parse_pairs
from .corpus_io import Corpus, ingest
from .embedding import HttpEmbedder, TfidfEmbedder, embed_all
from .errors import ConfigError, EquisummError
from .graph import build_graph
from .lexicon import GenderLexicon, load_lexicon
from .summarizers import (
    METHODS,
    LexRankParams,
    Summary,
    parity_budget,
    summarize_community_lexrank,
    summarize_equisumm,
    summarize_lexrank,
    summarize_lsa,
)

log = logging.getLogger("equisumm")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------- pipeline

def load_lexicon_from(cfg: RunConfig) -> GenderLexicon:
    for key, path in (("lexicon.male", cfg.lexicon_male), ("lexicon.female", cfg.lexicon_female)):
        if path and not Path(path).is_file():
            raise ConfigError(f"{key}: lexicon file not found: {path}")
    if cfg.lexicon_names_dir and not Path(cfg.lexicon_names_dir).is_dir():
        raise ConfigError(f"lexicon.names_dir: directory not found: {cfg.lexicon_names_dir}")
    return load_lexicon(cfg.lexicon_male or None, cfg.lexicon_female or None,
                        cfg.lexicon_names_dir or None, honorifics=cfg.honorifics())


def load_corpus(cfg: RunConfig) -> Corpus:
    if not cfg.input_path:
        raise ConfigError("no input given (use --input or input.path)")
    if not Path(cfg.input_path).is_file():
        raise ConfigError(f"input file not found: {cfg.input_path}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        corpus = ingest(cfg.input_path, cfg.input_format, cfg.input_text_field)
    for w in caught:
        log.warning("%s", w.message)
    return corpus


def make_provider(cfg: RunConfig):
    if cfg.embedding_kind == "http_service":
        return HttpEmbedder(cfg.embedding_url, batch_size=cfg.embedding_batch_size)
    return TfidfEmbedder()


def lexrank_params(cfg: RunConfig) -> LexRankParams:
    return LexRankParams(cfg.lexrank_damping, cfg.lexrank_tol, cfg.lexrank_max_iter)


def classify(cfg: RunConfig, corpus: Corpus, lex: GenderLexicon) -> Classification:
    embeddings = embed_all(corpus, make_provider(cfg))
    return classify_corpus(corpus, lex, conf_threshold=cfg.classify_conf_threshold,
                           reassign_threshold=cfg.classify_reassign_threshold, embeddings=embeddings)


def run_method(method: str, cfg: RunConfig, corpus: Corpus, result: Classification,
               budget: int | None = None) -> Summary:
    params = lexrank_params(cfg)
    if method == "equisumm":
        return summarize_equisumm(result.clusters, result.embeddings, cfg.summary_k, cfg.graph_threshold,
                                  cfg.summary_include_neutral, params)
    if budget is None:
        budget = parity_budget(result.clusters, cfg.summary_k, cfg.summary_include_neutral)
    if method == "lexrank":
        return summarize_lexrank(result.embeddings, budget, cfg.graph_threshold, params)
    if method == "community_lexrank":
        return summarize_community_lexrank(result.embeddings, budget, cfg.graph_threshold, params)
    if method == "lsa":
        return summarize_lsa(list(corpus), budget)
    raise ConfigError(f"unknown method {method!r}")


# ---------------------------------------------------------------- output

@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _json_line(obj) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def write_labels(result: Classification, fh) -> None:
    for ct in result.tweets:
        fh.write(_json_line({
            "id": ct.tweet.id,
            "label": ct.label.value,
            "confidence": ct.confidence,
            "provenance": ct.provenance,
            "similarity": ct.similarity,
        }))


def distribution_csv(result: Classification) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("label", "count", "percent"))
    for label, count, pct in result.distribution():
        writer.writerow((label.value, count, f"{pct:.4f}"))
    return buf.getvalue()


def write_summary(summary: Summary, corpus: Corpus, fh, fmt: str = "jsonl") -> None:
    by_id = corpus.by_id()
    for rank, entry in enumerate(summary.entries, start=1):
        text = by_id[entry.id].text
        if fmt == "text":
            fh.write(" ".join(text.split()) + "\n")
        else:
            fh.write(_json_line({"rank": rank, "id": entry.id, "group": entry.group,
                                 "score": entry.score, "text": text}))


# ---------------------------------------------------------------- commands

def cmd_ingest(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg)
    stats = corpus.stats
    if args.stats:
        for key in ("tweet_count", "token_count", "vocab_size"):
            print(f"{key}={stats[key]}")
    else:
        print(f"ingested {stats['tweet_count']} tweets from {corpus.source_path}")
    return EXIT_OK


def cmd_classify(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg)
    lex = load_lexicon_from(cfg)
    result = classify(cfg, corpus, lex)
    with _open_out(args.out) as fh:
        write_labels(result, fh)
    if args.report:
        Path(args.report).write_text(distribution_csv(result), encoding="utf-8")
    return EXIT_OK


def cmd_summarize(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg)
    lex = load_lexicon_from(cfg)
    result = classify(cfg, corpus, lex)
    summary = run_method(args.method, cfg, corpus, result, args.budget)
    for flag in summary.flags:
        log.warning("summary flag: %s", flag)
    with _open_out(args.out) as fh:
        write_summary(summary, corpus, fh, args.format)
    return EXIT_OK


EVALUATION_ORDER = ("lexrank", "lsa", "community_lexrank", "equisumm")


def cmd_evaluate(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg)
    lex = load_lexicon_from(cfg)
    result = classify(cfg, corpus, lex)
    summaries = [run_method(m, cfg, corpus, result) for m in EVALUATION_ORDER]
    reports = fairness.compare_methods(corpus, lex, summaries, cfg.fairness_balance_epsilon)
    with _open_out(args.out) as fh:
        fh.write(fairness.to_csv(reports))
    if args.markdown:
        Path(args.markdown).write_text(fairness.to_markdown(reports), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(fairness.to_svg(reports), encoding="utf-8")
    if not cfg.summary_include_neutral:
        log.warning("EquiSumm row excludes the neutral cluster (summary.include_neutral = false)")
    return EXIT_OK


def cmd_graph(args, cfg: RunConfig) -> int:
    corpus = load_corpus(cfg)
    embeddings = embed_all(corpus, make_provider(cfg))
    graph = build_graph(list(embeddings.items()), cfg.graph_threshold)
    with _open_out(args.dump) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("src", "dst", "weight"))
        for src, dst, w in graph.edges():
            writer.writerow((src, dst, repr(w)))
    return EXIT_OK


# ---------------------------------------------------------------- argparse

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file (default: $EQUISUMM_CONFIG)")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override any config key; may be repeated")
    common.add_argument("--dump-config", metavar="PATH", help="write the effective config and continue")
    common.add_argument("--input", help="tweet file (input.path)")
    common.add_argument("--input-format", choices=("jsonl", "csv"), help="input.format")
    common.add_argument("--text-field", help="input.text_field")
    common.add_argument("--male-lexicon", help="lexicon.male")
    common.add_argument("--female-lexicon", help="lexicon.female")
    common.add_argument("--names-dir", help="lexicon.names_dir")
    common.add_argument("--threshold", type=float, help="graph.threshold")
    common.add_argument("--k", type=int, help="summary.k")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="equisumm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="load a corpus and report statistics")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("classify", parents=[common], help="label tweets M/F/B/N")
    p.add_argument("--out", help="labels.jsonl (default stdout)")
    p.add_argument("--report", help="category distribution CSV")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("summarize", parents=[common], help="produce one summary")
    p.add_argument("--method", choices=METHODS, default="equisumm")
    p.add_argument("--budget", type=int, help="baseline length (default: EquiSumm length)")
    p.add_argument("--out", help="summary file (default stdout)")
    p.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", parents=[common], help="IBS table for the dataset and all methods")
    p.add_argument("--out", help="report.csv (default stdout)")
    p.add_argument("--markdown", help="also write a markdown table")
    p.add_argument("--svg", help="also write a bar chart")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("graph", parents=[common], help="dump the global similarity graph")
    p.add_argument("--dump", help="edge CSV (default stdout)")
    p.set_defaults(func=cmd_graph)
    return parser


_FLAG_KEYS = {
    "input": "input_path", "input_format": "input_format", "text_field": "input_text_field",
    "male_lexicon": "lexicon_male", "female_lexicon": "lexicon_female", "names_dir": "lexicon_names_dir",
    "threshold": "graph_threshold", "k": "summary_k",
}


def resolve_config(args) -> RunConfig:
    path = args.config or os.environ.get("EQUISUMM_CONFIG") or None
    overrides = parse_pairs(args.set)
    for flag, field_name in _FLAG_KEYS.items():
        value = getattr(args, flag)
        if value is not None:
            overrides[field_name] = value
    return build_config(path, overrides)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = resolve_config(args)
        if args.dump_config:
            Path(args.dump_config).write_text(dump_config(cfg), encoding="utf-8")
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"equisumm: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EquisummError, OSError, ValueError) as exc:
        print(f"equisumm: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
