"""Command-line interface: one subcommand per pipeline operation.

Every run writes ``<subcommand>.manifest.json`` beside its primary output
(or into ``--manifest-dir``). Exit status is 0 on success, 1 when a module
reports a contract violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .bible import (
    AlignmentReport,
    MonolingualDocument,
    align_by_verse,
    dedupe_repetitive,
    document_from_json,
    document_to_json,
    load_bible_file,
)
from .bleu import bleu_corpus, bleu_sentence, compare_systems, missing_reference_tokens
from .config import PipelineConfig, get_settings, load_pipeline_config
from .consistency import (
    RuleMode,
    apply_rules,
    build_translation_table,
    derive_rule,
    detect_inconsistencies,
    load_rules,
    select_canonical,
    write_change_log,
    write_rules,
    write_table_tsv,
)
from .dataset import (
    export_parallel,
    import_parallel,
    read_corpus,
    read_lines,
    split_corpus,
    write_corpus,
)
from .errors import ConfigError, CorpusFormatError, NoCanonicalError, ParacorpError
from .manifest import RunManifest, write_manifest
from .text import make_sentence
from .tools.wiki_fetch import WikiFetcher
from .wiki import (
    ArticlePair,
    TopicSegment,
    extract_parallel_by_template,
    load_offline_articles,
    load_segment_pair,
    mine_topic_segments,
    read_articles,
    write_articles,
    write_segments,
)

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    manifest_dir: Path
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)


def _parent(path: str | Path) -> Path:
    return Path(path).resolve().parent


def _words(value: str | None, file: str | None = None) -> list[str]:
    words = [w.strip() for w in (value or "").split(",") if w.strip()]
    if file:
        words += [line.strip() for line in read_lines(file) if line.strip()]
    return list(dict.fromkeys(words))


def _write_json(payload: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


# -- bible ------------------------------------------------------------------


def cmd_ingest_bible(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    books = set(_words(args.books)) or None
    document = load_bible_file(args.xml, books, config, args.lang)
    Path(args.out).write_text(document_to_json(document), encoding="utf-8")
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"xml": args.xml},
        outputs={"document": args.out},
        counts={
            "segments": len(document.segments),
            "skipped_ids": document.skipped_ids,
            "empty_segments": document.empty_segments,
        },
    )


def _read_document(path: str) -> MonolingualDocument:
    try:
        return document_from_json(Path(path).read_bytes())
    except CorpusFormatError as exc:
        raise CorpusFormatError(f"{path}: {exc}") from exc


def cmd_align(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    source = _read_document(args.source)
    target = _read_document(args.target)
    pairs, report = align_by_verse(source, target, config)
    write_corpus(pairs, args.out)
    _write_json(report.model_dump(mode="json"), args.report)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"source": args.source, "target": args.target},
        outputs={"corpus": args.out, "report": args.report},
        counts={
            "source_segments": len(source.segments),
            "target_segments": len(target.segments),
            "pairs_out": report.pairs_emitted,
            "source_only": len(report.source_only),
            "target_only": len(report.target_only),
        },
    )


def cmd_dedupe(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = read_corpus(args.input, config)
    kept, dropped = dedupe_repetitive(pairs)
    write_corpus(kept, args.out)
    outputs = {"corpus": args.out}
    if args.report:
        report = AlignmentReport.model_validate_json(Path(args.report).read_bytes())
        report = report.model_copy(update={"duplicates_dropped": dropped})
        _write_json(report.model_dump(mode="json"), args.report)
        outputs["report"] = args.report
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"corpus": args.input},
        outputs=outputs,
        counts={"pairs_in": len(pairs), "pairs_out": len(kept), "duplicates_dropped": dropped},
    )


# -- consistency --------------------------------------------------------------


def cmd_table(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = read_corpus(args.input, config)
    watched = _words(args.watch, args.watch_file)
    table = build_translation_table(pairs, watched, config)
    write_table_tsv(table, args.out)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"corpus": args.input},
        outputs={"table": args.out},
        counts={"pairs_in": len(pairs), "watched_words": len(table)},
    )


def cmd_detect(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = read_corpus(args.input, config)
    table = build_translation_table(pairs, _words(args.watch, args.watch_file), config)
    found = detect_inconsistencies(table, args.min_total)

    report = []
    for item in found:
        try:
            canonical = select_canonical(table, item.source_word)
        except NoCanonicalError:
            canonical = None
        report.append(
            {
                "source_word": item.source_word,
                "total_occurrences": item.total_occurrences,
                "none_count": item.none_count,
                "canonical": canonical,
                "candidates": [
                    {
                        "target_word": c.target_word,
                        "cooccurrence_count": c.cooccurrence_count,
                        "dice": float(c.dice),
                        "attributed_count": c.attributed_count,
                    }
                    for c in item.candidates
                ],
            }
        )
    _write_json(report, args.out)
    outputs = {"report": args.out}

    rules = []
    if args.emit_rules:
        mode = RuleMode(args.mode)
        for item in found:
            try:
                rule = derive_rule(table, item.source_word, mode)
            except NoCanonicalError as exc:
                logger.warning("%s", exc)
                continue
            if rule is not None:
                rules.append(rule)
        write_rules(rules, args.emit_rules)
        outputs["rules"] = args.emit_rules

    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"corpus": args.input},
        outputs=outputs,
        counts={"pairs_in": len(pairs), "inconsistent_words": len(found), "rules_emitted": len(rules)},
    )


def cmd_canonicalize(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = read_corpus(args.input, config)
    rules = load_rules(args.rules, config)
    corrected, change_log = apply_rules(pairs, rules)
    write_corpus(corrected, args.out)
    write_change_log(change_log, args.change_log)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"corpus": args.input, "rules": args.rules},
        outputs={"corpus": args.out, "change_log": args.change_log},
        counts={"pairs_in": len(pairs), "pairs_out": len(corrected), "corrections_applied": len(change_log)},
    )


# -- wiki ----------------------------------------------------------------------


def cmd_wiki_fetch(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    titles = json.loads(Path(args.category_file).read_text(encoding="utf-8"))
    if not isinstance(titles, dict) or not all(isinstance(v, list) for v in titles.values()):
        raise CorpusFormatError(f"{args.category_file} must map each category to a list of titles")
    fetcher = WikiFetcher(config)
    codes = sorted(config.language_codes) if not args.lang_codes else _words(args.lang_codes)
    written = fetcher.fetch_categories(titles, codes, args.out_dir)
    return CommandResult(
        manifest_dir=Path(args.out_dir).resolve(),
        inputs={"category_file": args.category_file},
        outputs={"out_dir": args.out_dir},
        counts={"pages_written": len(written), "requests_made": fetcher.requests_made},
    )


def cmd_wiki_extract(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    articles = load_offline_articles(args.root, args.source_lang, args.target_lang, config)
    write_articles(articles, args.out)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"root": args.root},
        outputs={"articles": args.out},
        counts={
            "articles": len(articles),
            "source_sentences": sum(len(a.source_sentences) for a in articles),
            "target_sentences": sum(len(a.target_sentences) for a in articles),
        },
    )


def _mine_job(job: tuple[list[ArticlePair], str, str, PipelineConfig]) -> list[TopicSegment]:
    articles, category, side, config = job
    return mine_topic_segments(articles, category, side, config)


def cmd_mine_segments(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    articles = read_articles(args.articles, config)
    categories = args.category or sorted({a.category for a in articles})
    sides = ["source", "target"] if args.side == "both" else [args.side]
    jobs = [
        ([a for a in articles if a.category == category], category, side, config)
        for category in categories
        for side in sides
    ]

    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(config.jobs, len(jobs))) as pool:
            results = list(pool.map(_mine_job, jobs))
    else:
        results = [_mine_job(job) for job in jobs]

    segments = [segment for result in results for segment in result]
    write_segments(segments, args.out)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"articles": args.articles},
        outputs={"segments": args.out},
        counts={"articles": len(articles), "segments_mined": len(segments)},
    )


def cmd_extract_template(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    articles = read_articles(args.articles, config)
    segment_pair = load_segment_pair(args.segment_pair)

    pairs = []
    unpaired_source = unpaired_target = 0
    for article in articles:
        if article.category != segment_pair.category:
            continue
        extraction = extract_parallel_by_template(article, segment_pair, config, start_id=len(pairs))
        pairs.extend(extraction.pairs)
        unpaired_source += extraction.unpaired_source
        unpaired_target += extraction.unpaired_target

    write_corpus(pairs, args.out)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"articles": args.articles, "segment_pair": args.segment_pair},
        outputs={"corpus": args.out},
        counts={
            "pairs_out": len(pairs),
            "unpaired_source": unpaired_source,
            "unpaired_target": unpaired_target,
        },
    )


# -- evaluation ---------------------------------------------------------------


def cmd_split(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = read_corpus(args.input, config)
    splits = split_corpus(pairs, config.split_ratios, config.rng_seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    outputs, counts = {}, {"pairs_in": len(pairs)}
    for name, part in splits.parts().items():
        path = out_dir / f"{name}.jsonl"
        write_corpus(part, path)
        outputs[name] = str(path)
        counts[f"{name}_pairs"] = len(part)
    return CommandResult(manifest_dir=out_dir.resolve(), inputs={"corpus": args.input}, outputs=outputs, counts=counts)


def cmd_export(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = read_corpus(args.input, config)
    source_path, target_path = export_parallel(pairs, args.prefix)
    return CommandResult(
        manifest_dir=_parent(source_path),
        inputs={"corpus": args.input},
        outputs={"source": str(source_path), "target": str(target_path)},
        counts={"pairs_out": len(pairs)},
    )


def cmd_import(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    pairs = import_parallel(args.src, args.tgt, config)
    write_corpus(pairs, args.out)
    return CommandResult(
        manifest_dir=_parent(args.out),
        inputs={"source": args.src, "target": args.tgt},
        outputs={"corpus": args.out},
        counts={"pairs_out": len(pairs)},
    )


def _tokenized_lines(path: str, config: PipelineConfig) -> list[list[str]]:
    return [list(make_sentence(line, config).tokens) for line in read_lines(path)]


def cmd_bleu(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    if len(args.hyp) > 2:
        raise ValueError(f"--hyp may be given at most twice, got {len(args.hyp)}")
    references = _tokenized_lines(args.ref, config)
    systems = [_tokenized_lines(path, config) for path in args.hyp]
    inputs = {"reference": args.ref, **{f"hypothesis_{i}": p for i, p in enumerate(args.hyp)}}

    if len(systems) == 2:
        comparison = compare_systems(systems[0], systems[1], references)
        reports = [comparison.baseline, comparison.candidate]
    else:
        reports = [bleu_corpus(systems[0], references)]

    for path, report in zip(args.hyp, reports):
        precisions = "/".join("-" if p is None else f"{100 * p:.1f}" for p in report.precisions)
        print(
            f"{path}\tBLEU = {report.formatted()}\t{precisions}\t"
            f"BP = {report.brevity_penalty:.3f}\thyp_len = {report.hyp_len}\tref_len = {report.ref_len}"
        )
    if len(reports) == 2:
        print(f"delta\t{reports[1].score - reports[0].score:+.2f}")

    sentence_rows = []
    if args.sentence_level:
        for index, (hyp, ref) in enumerate(zip(systems[-1], references), start=1):
            if not hyp or not ref:
                continue
            report = bleu_sentence(hyp, ref)
            missing = missing_reference_tokens(hyp, ref)
            sentence_rows.append({"line": index, **report.to_json(), "missing": missing})
            print(f"{index}\t{report.formatted()}\tmissing: {' '.join(missing)}")

    outputs = {}
    counts = {"sentences": len(references)}
    if args.json:
        payload: dict[str, Any] = {"corpus": [r.to_json() for r in reports]}
        if sentence_rows:
            payload["sentences"] = sentence_rows
        _write_json(payload, args.json)
        outputs["report"] = args.json
    return CommandResult(
        manifest_dir=_parent(args.json) if args.json else Path.cwd(),
        inputs=inputs,
        outputs=outputs,
        counts=counts,
    )


def cmd_stats(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    counts: Counter = Counter()
    if args.input:
        for pair in read_corpus(args.input, config):
            counts[pair.category()] += 1
        inputs = {"corpus": args.input}
    else:
        for article in read_articles(args.articles, config):
            counts[f"{article.category}\tsource"] += len(article.source_sentences)
            counts[f"{article.category}\ttarget"] += len(article.target_sentences)
        inputs = {"articles": args.articles}

    for key in sorted(counts):
        print(f"{key}\t{counts[key]}")
    print(f"total\t{sum(counts.values())}")

    outputs = {}
    if args.out:
        _write_json(dict(sorted(counts.items())), args.out)
        outputs["stats"] = args.out
    return CommandResult(
        manifest_dir=_parent(args.out) if args.out else Path.cwd(),
        inputs=inputs,
        outputs=outputs,
        counts={key.replace("\t", "/"): value for key, value in counts.items()},
    )


def cmd_pipeline(args: argparse.Namespace, config: PipelineConfig) -> CommandResult:
    from .graph import compile_graph

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    state = {
        "config": config,
        "source_xml": args.source_xml,
        "target_xml": args.target_xml,
        "source_lang": args.source_lang,
        "target_lang": args.target_lang,
        "books": _words(args.books) or None,
        "watch_names": _words(args.watch_names),
        "watch_verbs": _words(args.watch_verbs),
        "rules_path": args.rules,
        "out_dir": str(out_dir),
        "outputs": {},
        "counts": {},
        "stages_completed": [],
    }
    result = asyncio.run(compile_graph().ainvoke(state))
    logger.info("Pipeline stages: %s", " -> ".join(result["stages_completed"]))
    return CommandResult(
        manifest_dir=out_dir.resolve(),
        inputs={"source_xml": args.source_xml, "target_xml": args.target_xml},
        outputs=dict(result["outputs"]),
        counts=dict(result["counts"]),
    )


COMMANDS: dict[str, Callable[[argparse.Namespace, PipelineConfig], CommandResult]] = {
    "ingest-bible": cmd_ingest_bible,
    "align": cmd_align,
    "dedupe": cmd_dedupe,
    "table": cmd_table,
    "detect": cmd_detect,
    "canonicalize": cmd_canonicalize,
    "wiki-fetch": cmd_wiki_fetch,
    "wiki-extract": cmd_wiki_extract,
    "mine-segments": cmd_mine_segments,
    "extract-template": cmd_extract_template,
    "split": cmd_split,
    "export": cmd_export,
    "import": cmd_import,
    "bleu": cmd_bleu,
    "stats": cmd_stats,
    "pipeline": cmd_pipeline,
}


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("configuration (flags override the config file)")
    group.add_argument("--config", help="KEY=VALUE config file (default: $PARACORP_CONFIG)")
    group.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        help="logging level (default: $PARACORP_LOG_LEVEL or INFO)",
    )
    group.add_argument("--manifest-dir", help="where to write the run manifest")
    group.add_argument("--jobs", type=int, help="worker cap (default: available cores)")
    group.add_argument("--seed", type=int, dest="rng_seed", help="split shuffle seed")
    group.add_argument("--lowercase", action=argparse.BooleanOptionalAction, default=None)
    group.add_argument("--dice-threshold", type=float)
    group.add_argument("--max-candidates", type=int)
    group.add_argument("--ngram-min", type=int)
    group.add_argument("--ngram-max", type=int)
    group.add_argument("--min-support", type=int)
    group.add_argument("--ratios", dest="split_ratios", help="train,valid,test ratios, e.g. 0.8,0.1,0.1")
    group.add_argument("--mask-numbers", action=argparse.BooleanOptionalAction, default=None)
    group.add_argument("--delay-ms", type=int, dest="fetch_delay_ms")
    group.add_argument("--max-requests", type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="paracorp", description="Build, correct, mine and evaluate a parallel corpus.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("ingest-bible", "parse one verse-indexed Bible XML file")
    p.add_argument("--xml", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--books", help="comma-separated book codes, e.g. GEN")
    p.add_argument("--out", required=True, help="document JSON")

    p = add("align", "align two parsed documents by verse id")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--out", required=True, help="corpus JSON-lines")
    p.add_argument("--report", required=True, help="alignment report JSON")

    p = add("dedupe", "remove repeated source sentences")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="alignment report to update with duplicates_dropped")

    for name, help_text in (("table", "write the translation table TSV"), ("detect", "report inconsistent translations")):
        p = add(name, help_text)
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--watch", help="comma-separated watched source words")
        p.add_argument("--watch-file", help="one watched word per line")
        p.add_argument("--out", required=True)
        if name == "detect":
            p.add_argument("--min-total", type=int, default=1)
            p.add_argument("--emit-rules", help="also write derived canonicalization rules")
            p.add_argument("--mode", choices=[m.value for m in RuleMode], default=RuleMode.INSERT_IF_ABSENT.value)

    p = add("canonicalize", "apply canonicalization rules to the target side")
    p.add_argument("--rules", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--change-log", required=True)

    p = add("wiki-fetch", "download article pairs into the offline layout")
    p.add_argument("--lang-codes", help="comma-separated language codes (default: configured set)")
    p.add_argument("--category-file", required=True, help='JSON {"category": ["Title", ...]}')
    p.add_argument("--out-dir", required=True)

    p = add("wiki-extract", "extract and sentence-split offline article pairs")
    p.add_argument("--root", required=True)
    p.add_argument("--source-lang", default="ceb")
    p.add_argument("--target-lang", default="tl")
    p.add_argument("--out", required=True, help="articles JSON-lines")

    p = add("mine-segments", "mine frequent topic segments per category")
    p.add_argument("--articles", required=True)
    p.add_argument("--category", action="append", help="repeatable; default: every category present")
    p.add_argument("--side", choices=["source", "target", "both"], default="both")
    p.add_argument("--out", required=True)

    p = add("extract-template", "extract parallel sentences matching a segment pair")
    p.add_argument("--articles", required=True)
    p.add_argument("--segment-pair", required=True)
    p.add_argument("--out", required=True)

    p = add("split", "shuffle and split into train/valid/test")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out-dir", required=True)

    p = add("export", "write <prefix>.src and <prefix>.tgt")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--prefix", required=True)

    p = add("import", "read a line-aligned bitext into a corpus")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--out", required=True)

    p = add("bleu", "score hypotheses against references")
    p.add_argument("--hyp", action="append", required=True, help="repeat once to compare two systems")
    p.add_argument("--ref", required=True)
    p.add_argument("--sentence-level", action="store_true")
    p.add_argument("--json", help="write the report as JSON")

    p = add("stats", "count sentences per category")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="input")
    source.add_argument("--articles")
    p.add_argument("--out", help="write counts as JSON")

    p = add("pipeline", "run ingest through export in one go")
    p.add_argument("--source-xml", required=True)
    p.add_argument("--target-xml", required=True)
    p.add_argument("--source-lang", default="ceb")
    p.add_argument("--target-lang", default="tl")
    p.add_argument("--books")
    p.add_argument("--watch-names", help="names corrected with insert_if_absent")
    p.add_argument("--watch-verbs", help="verbs corrected with replace_only")
    p.add_argument("--rules", help="rules file; overrides rules derived from watched words")
    p.add_argument("--out-dir", required=True)
    return parser


_CONFIG_FLAGS = (
    "jobs",
    "rng_seed",
    "lowercase",
    "dice_threshold",
    "max_candidates",
    "ngram_min",
    "ngram_max",
    "min_support",
    "split_ratios",
    "mask_numbers",
    "fetch_delay_ms",
    "max_requests",
)


def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    overrides = {name: getattr(args, name, None) for name in _CONFIG_FLAGS}
    if overrides["split_ratios"] is not None:
        overrides["split_ratios"] = [part.strip() for part in overrides["split_ratios"].split(",")]
    if getattr(args, "lang_codes", None):
        overrides["language_codes"] = _words(args.lang_codes)
    return load_pipeline_config(args.config, overrides)


def _log_level(args: argparse.Namespace) -> str:
    if args.log_level:
        return args.log_level
    level = get_settings().log_level.upper()
    if level not in LOG_LEVELS:
        raise ConfigError(f"PARACORP_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {level!r}")
    return level


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    started = time.perf_counter()
    try:
        logging.basicConfig(
            level=_log_level(args),
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
            force=True,
        )
        config = _config_from_args(args)
        result = COMMANDS[args.command](args, config)
        manifest = RunManifest(
            subcommand=args.command,
            config=config.snapshot(),
            inputs=result.inputs,
            outputs=result.outputs,
            counts=result.counts,
            wall_time_seconds=round(time.perf_counter() - started, 6),
        )
        write_manifest(manifest, args.manifest_dir or result.manifest_dir)
    except (ParacorpError, ValueError, OSError) as exc:
        print(f"paracorp {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
