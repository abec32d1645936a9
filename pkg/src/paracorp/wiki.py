"""Comparable Wikipedia articles: text extraction, topic-segment mining and
template-based extraction of parallel sentences."""

from __future__ import annotations

import json
import logging
import re
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal
from urllib.parse import quote

from bs4 import BeautifulSoup
from pydantic import BaseModel, ConfigDict, field_validator

from .config import PipelineConfig
from .errors import CorpusFormatError, EmptyArticleError, ParacorpError
from .state import Sentence, SentencePair, WikiSentence
from .text import clean, decode_utf8, make_sentence

logger = logging.getLogger(__name__)

Side = Literal["source", "target"]

NUMBER_PLACEHOLDER = "<num>"

_CITATION_RE = re.compile(r"\[\d+\]")
_OPENERS = '"«(['
_CLOSERS = "\"'’”»)]"
_BOUNDARY_RE = re.compile(f"(?P<stop>[.!?]+)[{re.escape(_CLOSERS)}]*")
_ORDINAL_RE = re.compile(r"^(?:\d+(?:st|nd|rd|th)|ika-?\d+)$", re.IGNORECASE)
_OFFLINE_NAME_RE = re.compile(r"^(?P<title>.+)\.(?P<lang>[A-Za-z-]+)\.(?P<ext>html|txt)$")


class ArticlePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    category: str
    title: str
    source_sentences: tuple[Sentence, ...]
    target_sentences: tuple[Sentence, ...]

    @field_validator("source_sentences", "target_sentences")
    @classmethod
    def _non_empty(cls, sentences: tuple[Sentence, ...]) -> tuple[Sentence, ...]:
        if not sentences:
            raise ValueError("article side has no sentences")
        return sentences


@dataclass(frozen=True)
class TopicSegment:
    category: str
    side: Side
    ngram: tuple[str, ...]
    occurrence_count: int
    coverage: Fraction

    def to_json(self) -> dict[str, Any]:
        return {
            "category": self.category,
            "side": self.side,
            "ngram": list(self.ngram),
            "count": self.occurrence_count,
            "coverage": float(self.coverage),
        }


class SegmentPair(BaseModel):
    """Source and target templates of one category."""

    model_config = ConfigDict(frozen=True)

    category: str
    source_ngram: tuple[str, ...]
    target_ngram: tuple[str, ...]

    @field_validator("source_ngram", "target_ngram")
    @classmethod
    def _non_empty(cls, ngram: tuple[str, ...]) -> tuple[str, ...]:
        if not ngram:
            raise ValueError("template n-gram must not be empty")
        return ngram

    @classmethod
    def from_segments(cls, source_segment: TopicSegment, target_segment: TopicSegment) -> "SegmentPair":
        if source_segment.category != target_segment.category:
            raise ValueError(
                f"segments belong to different categories: {source_segment.category} / {target_segment.category}"
            )
        if source_segment.side == target_segment.side or source_segment.side != "source":
            raise ValueError("segment pair needs one source-side and one target-side segment")
        return cls(
            category=source_segment.category,
            source_ngram=source_segment.ngram,
            target_ngram=target_segment.ngram,
        )


@dataclass(frozen=True)
class TemplateExtraction:
    pairs: list[SentencePair]
    unpaired_source: int
    unpaired_target: int


def build_article_url(language_code: str, article_title: str, config: PipelineConfig | None = None) -> str:
    """``https://<lang>.wikipedia.org/wiki/<Title_With_Underscores>``, percent-encoded."""
    config = config or PipelineConfig(jobs=1)
    if language_code not in config.language_codes:
        raise ValueError(
            f"language code '{language_code}' not in configured set {sorted(config.language_codes)}"
        )
    title = article_title.strip()
    if not title:
        raise ValueError("article title must not be empty")
    return f"https://{language_code}.wikipedia.org/wiki/{quote(title.replace(' ', '_'), safe='')}"


def extract_article_text(html: bytes) -> str:
    """Paragraph text in document order, citation markers removed, cleaned."""
    soup = BeautifulSoup(html, "lxml")
    for node in soup(["script", "style", "noscript"]):
        node.decompose()

    paragraphs = [p.get_text() for p in soup.find_all("p")]
    text = clean(_CITATION_RE.sub("", " ".join(paragraphs)))
    if not text:
        raise EmptyArticleError("no paragraph content found")
    return text


def _is_abbreviation(preceding: str, config: PipelineConfig) -> bool:
    words = preceding.split()
    if not words:
        return False
    word = words[-1].lstrip(_OPENERS)
    if len(word) == 1 and word.isalpha():
        return True
    return word.lower() in config.abbreviations or bool(_ORDINAL_RE.match(word))


def _starts_sentence(rest: str) -> bool:
    if not rest[:1].isspace():
        return False
    stripped = rest.lstrip()
    head = stripped.lstrip(_OPENERS)
    return bool(head) and head[0].isupper()


def split_sentences(text: str, config: PipelineConfig | None = None) -> list[Sentence]:
    """Split at ``.``, ``!`` or ``?`` followed by whitespace and an uppercase
    letter, or by the end of the text. Closing quotes and brackets right after
    the terminator stay with the sentence they close.

    Periods after single letters and ordinals ("A.", "1st.") are not
    boundaries; neither are periods after configured abbreviations ("Dr.").
    """
    config = config or PipelineConfig(jobs=1)
    text = clean(text)
    pieces: list[str] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        end = match.end()
        rest = text[end:]
        if rest.strip() and not _starts_sentence(rest):
            continue
        if match.group("stop") == "." and _is_abbreviation(text[start : match.start()], config):
            continue
        piece = text[start:end].strip()
        if piece:
            pieces.append(piece)
        start = end

    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return [make_sentence(piece, config) for piece in pieces]


def _mask(tokens: tuple[str, ...], enabled: bool) -> tuple[str, ...]:
    if not enabled:
        return tokens
    return tuple(NUMBER_PLACEHOLDER if token.isdigit() else token for token in tokens)


def _side_sentences(article: ArticlePair, side: Side) -> tuple[Sentence, ...]:
    return article.source_sentences if side == "source" else article.target_sentences


def mine_topic_segments(
    articles: Sequence[ArticlePair],
    category: str,
    side: Side,
    config: PipelineConfig | None = None,
) -> list[TopicSegment]:
    """Closed frequent contiguous n-grams of one category and side.

    Support counts sentences containing the n-gram, not occurrences. An n-gram
    is dropped when a longer reported n-gram contains it with the same count.
    """
    config = config or PipelineConfig(jobs=1)
    in_category = [a for a in articles if a.category == category]
    if not in_category:
        raise ValueError(f"no articles in category '{category}'")

    sentences = [
        _mask(sentence.tokens, config.mask_numbers)
        for article in in_category
        for sentence in _side_sentences(article, side)
    ]

    counts: Counter = Counter()
    for tokens in sentences:
        grams = {
            tokens[i : i + n]
            for n in range(config.ngram_min, config.ngram_max + 1)
            for i in range(len(tokens) - n + 1)
        }
        counts.update(grams)

    frequent = {gram: count for gram, count in counts.items() if count >= config.min_support}

    # A contained n-gram with equal support always has an equal-support
    # extension by exactly one token, so prefix/suffix checks suffice.
    suppressed = set()
    for gram, count in frequent.items():
        if len(gram) > config.ngram_min:
            for sub in (gram[:-1], gram[1:]):
                if frequent.get(sub) == count:
                    suppressed.add(sub)

    segments = [
        TopicSegment(
            category=category,
            side=side,
            ngram=gram,
            occurrence_count=count,
            coverage=Fraction(count, len(sentences)),
        )
        for gram, count in frequent.items()
        if gram not in suppressed
    ]
    segments.sort(key=lambda s: (-s.occurrence_count, -len(s.ngram), s.ngram))
    logger.info(
        "Mined %d segments for %s/%s over %d sentences", len(segments), category, side, len(sentences)
    )
    return segments


def contains_ngram(tokens: Sequence[str], ngram: Sequence[str]) -> bool:
    n = len(ngram)
    target = tuple(ngram)
    return any(tuple(tokens[i : i + n]) == target for i in range(len(tokens) - n + 1))


def extract_parallel_by_template(
    article: ArticlePair,
    segment_pair: SegmentPair,
    config: PipelineConfig | None = None,
    start_id: int = 0,
) -> TemplateExtraction:
    """Zip, in document order, the sentences of each side containing its template."""
    config = config or PipelineConfig(jobs=1)
    if segment_pair.category != article.category:
        raise ValueError(
            f"segment pair category '{segment_pair.category}' does not match article '{article.category}'"
        )

    def matching(sentences: tuple[Sentence, ...], ngram: tuple[str, ...]) -> list[int]:
        return [
            index
            for index, sentence in enumerate(sentences)
            if contains_ngram(_mask(sentence.tokens, config.mask_numbers), ngram)
        ]

    source_hits = matching(article.source_sentences, segment_pair.source_ngram)
    target_hits = matching(article.target_sentences, segment_pair.target_ngram)

    pairs = [
        SentencePair(
            pair_id=start_id + offset,
            origin=WikiSentence(
                category=article.category,
                article_title=article.title,
                source_index=si,
                target_index=ti,
            ),
            source=article.source_sentences[si],
            target=article.target_sentences[ti],
        )
        for offset, (si, ti) in enumerate(zip(source_hits, target_hits))
    ]
    return TemplateExtraction(
        pairs=pairs,
        unpaired_source=len(source_hits) - len(pairs),
        unpaired_target=len(target_hits) - len(pairs),
    )


def read_article_file(path: Path, config: PipelineConfig) -> list[Sentence]:
    data = path.read_bytes()
    text = extract_article_text(data) if path.suffix == ".html" else clean(decode_utf8(data))
    return split_sentences(text, config)


def load_offline_articles(
    root: str | Path,
    source_lang: str,
    target_lang: str,
    config: PipelineConfig | None = None,
) -> list[ArticlePair]:
    """Read ``<root>/<category>/<title>.<lang>.html|.txt`` into article pairs."""
    config = config or PipelineConfig(jobs=1)
    root = Path(root)
    articles: list[ArticlePair] = []

    for category_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        category = category_dir.name
        if category not in config.categories:
            logger.warning("Skipping directory '%s': not a configured category", category)
            continue

        files: dict[str, dict[str, Path]] = defaultdict(dict)
        for path in sorted(category_dir.iterdir()):
            match = _OFFLINE_NAME_RE.match(path.name)
            if match and match["lang"] in (source_lang, target_lang):
                # An .html copy wins over a .txt one.
                files[match["title"]].setdefault(match["lang"], path)
                if match["ext"] == "html":
                    files[match["title"]][match["lang"]] = path

        for title in sorted(files):
            sides = files[title]
            if source_lang not in sides or target_lang not in sides:
                logger.warning("Article '%s/%s' lacks one language side", category, title)
                continue
            try:
                source = read_article_file(sides[source_lang], config)
                target = read_article_file(sides[target_lang], config)
            except ParacorpError as exc:
                logger.warning("Skipping article '%s/%s': %s", category, title, exc)
                continue
            if not source or not target:
                logger.warning("Article '%s/%s' has an empty side", category, title)
                continue
            articles.append(
                ArticlePair(
                    category=category,
                    title=title.replace("_", " "),
                    source_sentences=tuple(source),
                    target_sentences=tuple(target),
                )
            )
    logger.info("Loaded %d article pairs from %s", len(articles), root)
    return articles


def write_articles(articles: Iterable[ArticlePair], path: str | Path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for article in articles:
            record = {
                "category": article.category,
                "title": article.title,
                "source_sentences": [s.raw for s in article.source_sentences],
                "target_sentences": [s.raw for s in article.target_sentences],
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
            count += 1
    return count


def read_articles(path: str | Path, config: PipelineConfig | None = None) -> list[ArticlePair]:
    config = config or PipelineConfig(jobs=1)
    articles = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                articles.append(
                    ArticlePair(
                        category=record["category"],
                        title=record["title"],
                        source_sentences=tuple(make_sentence(s, config) for s in record["source_sentences"]),
                        target_sentences=tuple(make_sentence(s, config) for s in record["target_sentences"]),
                    )
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise CorpusFormatError(f"{path}:{line_no}: invalid article record: {exc}") from exc
    return articles


def write_segments(segments: Iterable[TopicSegment], path: str | Path) -> None:
    payload = [segment.to_json() for segment in segments]
    Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def load_segment_pair(path: str | Path) -> SegmentPair:
    try:
        return SegmentPair.model_validate_json(Path(path).read_bytes())
    except ValueError as exc:
        raise CorpusFormatError(f"invalid segment pair file {path}: {exc}") from exc
