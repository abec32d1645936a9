"""Extraction and verse alignment nodes."""

from __future__ import annotations

import asyncio
import json
import logging
from pathlib import Path
from typing import Literal

from ..bible import align_by_verse, dedupe_repetitive, load_bible_file
from ..dataset import write_corpus
from .state import PipelineState

logger = logging.getLogger(__name__)


async def ingest_stage(state: PipelineState) -> dict:
    """Parse both Bible files concurrently and align them by verse id."""
    config = state["config"]
    books = set(state["books"]) if state.get("books") else None

    source_doc, target_doc = await asyncio.gather(
        asyncio.to_thread(load_bible_file, state["source_xml"], books, config, state.get("source_lang", "")),
        asyncio.to_thread(load_bible_file, state["target_xml"], books, config, state.get("target_lang", "")),
    )
    pairs, report = align_by_verse(source_doc, target_doc, config)

    out_path = Path(state["out_dir"]) / "aligned.jsonl"
    write_corpus(pairs, out_path)

    return {
        "pairs": pairs,
        "alignment_report": report,
        "outputs": {"aligned": str(out_path)},
        "counts": {
            "source_segments": len(source_doc.segments),
            "target_segments": len(target_doc.segments),
            "pairs_aligned": len(pairs),
        },
        "stages_completed": ["ingest"],
    }


def dedupe_stage(state: PipelineState) -> dict:
    """Drop repeated source sentences and record the alignment report."""
    pairs, dropped = dedupe_repetitive(state["pairs"])
    report = state["alignment_report"].model_copy(update={"duplicates_dropped": dropped})

    out_dir = Path(state["out_dir"])
    corpus_path = out_dir / "deduped.jsonl"
    report_path = out_dir / "alignment_report.json"
    write_corpus(pairs, corpus_path)
    report_path.write_text(json.dumps(report.model_dump(mode="json"), indent=2) + "\n", encoding="utf-8")

    return {
        "pairs": pairs,
        "alignment_report": report,
        "outputs": {"deduped": str(corpus_path), "alignment_report": str(report_path)},
        "counts": {"duplicates_dropped": dropped, "pairs_deduped": len(pairs)},
        "stages_completed": ["dedupe"],
    }


def route_after_dedupe(state: PipelineState) -> Literal["table", "split"]:
    """Correction runs only when there is something to correct with."""
    if state.get("rules_path") or state.get("watch_names") or state.get("watch_verbs"):
        return "table"
    logger.info("No watch words or rules given; skipping consistency correction")
    return "split"
