"""Translation-table and canonicalization nodes."""

from __future__ import annotations

import logging
from pathlib import Path

from ..consistency import (
    RuleMode,
    apply_rules,
    build_translation_table,
    derive_rule,
    load_rules,
    write_change_log,
    write_rules,
    write_table_tsv,
)
from ..dataset import write_corpus
from ..errors import NoCanonicalError
from .state import PipelineState

logger = logging.getLogger(__name__)


def _watchlist(state: PipelineState) -> list[str]:
    return [*state.get("watch_names", []), *state.get("watch_verbs", [])]


def table_stage(state: PipelineState) -> dict:
    """Build the co-occurrence table for every watched word."""
    watched = _watchlist(state)
    if not watched:
        return {"stages_completed": ["table"]}

    table = build_translation_table(state["pairs"], watched, state["config"])
    path = Path(state["out_dir"]) / "translation_table.tsv"
    write_table_tsv(table, path)
    return {
        "translation_table": table,
        "outputs": {"translation_table": str(path)},
        "counts": {"watched_words": len(table)},
        "stages_completed": ["table"],
    }


def canonicalize_stage(state: PipelineState) -> dict:
    """Apply rules from file, or derive one per watched word from the table."""
    if state.get("rules_path"):
        rules = load_rules(state["rules_path"], state["config"])
    else:
        rules = []
        table = state["translation_table"]
        modes = [(w, RuleMode.INSERT_IF_ABSENT) for w in state.get("watch_names", [])]
        modes += [(w, RuleMode.REPLACE_ONLY) for w in state.get("watch_verbs", [])]
        for word, mode in modes:
            try:
                rule = derive_rule(table, word, mode)
            except NoCanonicalError as exc:
                logger.warning("No rule for '%s': %s", word, exc)
                continue
            if rule is not None:
                rules.append(rule)

    pairs, change_log = apply_rules(state["pairs"], rules)

    out_dir = Path(state["out_dir"])
    rules_path = out_dir / "rules.json"
    log_path = out_dir / "change_log.jsonl"
    corpus_path = out_dir / "corrected.jsonl"
    write_rules(rules, rules_path)
    write_change_log(change_log, log_path)
    write_corpus(pairs, corpus_path)

    return {
        "pairs": pairs,
        "rules": rules,
        "change_log": change_log,
        "outputs": {"rules": str(rules_path), "change_log": str(log_path), "corrected": str(corpus_path)},
        "counts": {"rules_applied": len(rules), "corrections_applied": len(change_log)},
        "stages_completed": ["canonicalize"],
    }
