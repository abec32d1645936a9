"""Verse-indexed Bible XML ingestion, verse alignment and repetition removal."""

from __future__ import annotations

import logging
import re
from functools import lru_cache
from pathlib import Path

from lxml import etree
from pydantic import BaseModel, ConfigDict, Field

from .config import PipelineConfig
from .errors import CorpusFormatError, EmptyDocumentError, XmlParseError
from .state import BibleVerse, SentencePair, VerseId
from .text import clean, make_sentence

logger = logging.getLogger(__name__)


class VerseSegment(BaseModel):
    model_config = ConfigDict(frozen=True)

    verse_id: VerseId
    text: str


class MonolingualDocument(BaseModel):
    """One language's verses in file order; verse ids are unique."""

    model_config = ConfigDict(frozen=True)

    language_code: str
    segments: tuple[VerseSegment, ...]
    skipped_ids: int = Field(0, ge=0)
    empty_segments: int = Field(0, ge=0)


class AlignmentReport(BaseModel):
    pairs_emitted: int = Field(ge=0)
    source_only: list[VerseId]
    target_only: list[VerseId]
    duplicates_dropped: int = Field(0, ge=0)


@lru_cache(maxsize=8)
def _id_pattern(prefix: str, separator: str) -> re.Pattern[str]:
    sep = re.escape(separator)
    return re.compile(
        rf"^{re.escape(prefix)}{sep}(?P<book>[A-Z0-9]{{3}}){sep}(?P<chapter>\d+){sep}(?P<verse>\d+)$"
    )


def parse_verse_id(raw_id: str, config: PipelineConfig) -> VerseId | None:
    """Parse ``b.GEN.1.3`` style ids; None when the id does not match."""
    match = _id_pattern(config.id_prefix, config.id_separator).match(raw_id.strip())
    if not match:
        return None
    chapter, verse = int(match["chapter"]), int(match["verse"])
    if chapter < 1 or verse < 1:
        return None
    return VerseId(book=match["book"], chapter=chapter, verse=verse)


def parse_bible_xml(
    data: bytes,
    book_filter: set[str] | frozenset[str] | None = None,
    config: PipelineConfig | None = None,
    language_code: str = "",
) -> MonolingualDocument:
    """Extract (VerseId, cleaned text) entries from every ``seg`` element.

    Segments whose id does not parse are skipped and counted, as are repeated
    ids and segments with no text left after cleaning.
    """
    config = config or PipelineConfig(jobs=1)
    parser = etree.XMLParser(resolve_entities=False, no_network=True)
    try:
        root = etree.fromstring(data, parser)
    except etree.XMLSyntaxError as exc:
        line = exc.position[0] if exc.position else None
        raise XmlParseError(line, exc.msg or str(exc)) from exc

    segments: list[VerseSegment] = []
    seen: set[VerseId] = set()
    skipped = empty = 0

    for elem in root.iter(etree.Element):
        if etree.QName(elem).localname != "seg":
            continue
        raw_id = elem.get("id")
        verse_id = parse_verse_id(raw_id, config) if raw_id else None
        if verse_id is None:
            skipped += 1
            continue
        if book_filter is not None and verse_id.book not in book_filter:
            continue
        if verse_id in seen:
            logger.warning("Duplicate verse id %s at line %s ignored", verse_id, elem.sourceline)
            skipped += 1
            continue

        text = clean("".join(elem.itertext()))
        if not text:
            empty += 1
            continue
        seen.add(verse_id)
        segments.append(VerseSegment(verse_id=verse_id, text=text))

    if not segments:
        raise EmptyDocumentError(
            f"no verse segments extracted (skipped ids: {skipped}, empty segments: {empty})"
        )

    logger.info(
        "Parsed %d segments for '%s' (%d skipped ids, %d empty)",
        len(segments),
        language_code,
        skipped,
        empty,
    )
    return MonolingualDocument(
        language_code=language_code,
        segments=tuple(segments),
        skipped_ids=skipped,
        empty_segments=empty,
    )


def load_bible_file(
    path: str | Path,
    book_filter: set[str] | frozenset[str] | None = None,
    config: PipelineConfig | None = None,
    language_code: str = "",
) -> MonolingualDocument:
    return parse_bible_xml(Path(path).read_bytes(), book_filter, config, language_code)


def document_to_json(document: MonolingualDocument) -> str:
    return document.model_dump_json(indent=2) + "\n"


def document_from_json(data: str | bytes) -> MonolingualDocument:
    """Inverse of ``document_to_json``; raises CorpusFormatError on bad input."""
    try:
        return MonolingualDocument.model_validate_json(data)
    except ValueError as exc:
        raise CorpusFormatError(f"invalid document: {exc}") from exc


def align_by_verse(
    source: MonolingualDocument,
    target: MonolingualDocument,
    config: PipelineConfig | None = None,
) -> tuple[list[SentencePair], AlignmentReport]:
    """Pair verses present in both documents; report the rest.

    Output order is (book, chapter, verse) with books ranked by their first
    occurrence in the source document.
    """
    book_rank: dict[str, int] = {}
    for segment in (*source.segments, *target.segments):
        book_rank.setdefault(segment.verse_id.book, len(book_rank))

    def order(verse_id: VerseId) -> tuple[int, int, int]:
        return (book_rank[verse_id.book], verse_id.chapter, verse_id.verse)

    target_text = {segment.verse_id: segment.text for segment in target.segments}
    source_ids = {segment.verse_id for segment in source.segments}

    shared = sorted(
        (segment for segment in source.segments if segment.verse_id in target_text),
        key=lambda segment: order(segment.verse_id),
    )
    pairs = [
        SentencePair(
            pair_id=index,
            origin=BibleVerse(verse_id=segment.verse_id),
            source=make_sentence(segment.text, config),
            target=make_sentence(target_text[segment.verse_id], config),
        )
        for index, segment in enumerate(shared)
    ]

    report = AlignmentReport(
        pairs_emitted=len(pairs),
        source_only=sorted(
            (s.verse_id for s in source.segments if s.verse_id not in target_text), key=order
        ),
        target_only=sorted(
            (s.verse_id for s in target.segments if s.verse_id not in source_ids), key=order
        ),
    )
    if report.source_only or report.target_only:
        logger.warning(
            "%d source-only and %d target-only verses left unaligned",
            len(report.source_only),
            len(report.target_only),
        )
    return pairs, report


def dedupe_repetitive(pairs: list[SentencePair]) -> tuple[list[SentencePair], int]:
    """Keep the first pair for each distinct source token sequence."""
    seen: set[tuple[str, ...]] = set()
    kept: list[SentencePair] = []
    for pair in pairs:
        if pair.source.tokens in seen:
            continue
        seen.add(pair.source.tokens)
        kept.append(pair)
    dropped = len(pairs) - len(kept)
    if dropped:
        logger.info("Dropped %d repetitive sentence pairs", dropped)
    return kept, dropped
