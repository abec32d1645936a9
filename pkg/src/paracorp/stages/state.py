"""State carried through the corpus-building graph."""

from __future__ import annotations

import operator
from typing import Annotated, TypedDict

from ..bible import AlignmentReport
from ..config import PipelineConfig
from ..consistency import CanonicalizationRule, ChangeRecord, TranslationTable
from ..dataset import SplitResult
from ..state import SentencePair


def merge_dicts(left: dict, right: dict) -> dict:
    return {**left, **right}


class PipelineState(TypedDict, total=False):
    config: PipelineConfig
    source_xml: str
    target_xml: str
    source_lang: str
    target_lang: str
    books: list[str] | None
    watch_names: list[str]
    watch_verbs: list[str]
    rules_path: str | None
    out_dir: str

    pairs: list[SentencePair]
    alignment_report: AlignmentReport
    translation_table: TranslationTable
    rules: list[CanonicalizationRule]
    change_log: list[ChangeRecord]
    splits: SplitResult

    outputs: Annotated[dict[str, str], merge_dicts]
    counts: Annotated[dict[str, int], merge_dicts]
    stages_completed: Annotated[list[str], operator.add]
