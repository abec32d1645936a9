"""Translation-consistency analysis and target-side correction.

A co-occurrence table over sentence pairs ranks candidate translations of each
watched source word by Dice score. For each pair containing the word, the
highest-ranked candidate present in the target is the *attributed*
translation; pairs with no candidate present count as NONE. Corrections
rewrite variant translations to one canonical token, and for names insert the
canonical token when it is missing.
"""

from __future__ import annotations

import json
import logging
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, TypeAdapter, ValidationError, field_serializer, model_validator

from .config import PipelineConfig
from .errors import CorpusFormatError, NoCanonicalError
from .state import SentencePair
from .text import sentence_from_tokens, tokenize

logger = logging.getLogger(__name__)

NONE_LABEL = "__NONE__"

# Below this size the process pool costs more than it saves.
_PARALLEL_MIN_PAIRS = 5000


@dataclass(frozen=True)
class Candidate:
    target_word: str
    cooccurrence_count: int
    source_count: int
    target_count: int
    attributed_count: int = 0

    @property
    def dice(self) -> Fraction:
        return Fraction(2 * self.cooccurrence_count, self.source_count + self.target_count)


@dataclass(frozen=True)
class TranslationEntry:
    source_word: str
    candidates: tuple[Candidate, ...]
    none_count: int
    total_occurrences: int

    @property
    def absent(self) -> bool:
        """The word never occurs on the source side."""
        return self.total_occurrences == 0


@dataclass(frozen=True)
class TranslationTable:
    entries: dict[str, TranslationEntry]

    def __getitem__(self, source_word: str) -> TranslationEntry:
        return self.entries[source_word]

    def __contains__(self, source_word: object) -> bool:
        return source_word in self.entries

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class _CooccurrenceCounts:
    """Document-frequency counts; partial counts merge associatively."""

    source: Counter = field(default_factory=Counter)
    target: Counter = field(default_factory=Counter)
    joint: defaultdict = field(default_factory=lambda: defaultdict(Counter))

    def merge(self, other: "_CooccurrenceCounts") -> "_CooccurrenceCounts":
        self.source.update(other.source)
        self.target.update(other.target)
        for word, counts in other.joint.items():
            self.joint[word].update(counts)
        return self


TokenPair = tuple[tuple[str, ...], tuple[str, ...]]


def _count_chunk(chunk: Sequence[TokenPair], watchlist: frozenset[str]) -> _CooccurrenceCounts:
    counts = _CooccurrenceCounts()
    for source_tokens, target_tokens in chunk:
        target_types = set(target_tokens)
        counts.target.update(target_types)
        for word in watchlist.intersection(source_tokens):
            counts.source[word] += 1
            counts.joint[word].update(target_types)
    return counts


def _count_pairs(token_pairs: list[TokenPair], watchlist: frozenset[str], jobs: int) -> _CooccurrenceCounts:
    if jobs <= 1 or len(token_pairs) < _PARALLEL_MIN_PAIRS:
        return _count_chunk(token_pairs, watchlist)

    size = math.ceil(len(token_pairs) / jobs)
    chunks = [token_pairs[i : i + size] for i in range(0, len(token_pairs), size)]
    total = _CooccurrenceCounts()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for partial in pool.map(_count_chunk, chunks, [watchlist] * len(chunks)):
            total.merge(partial)
    return total


def _threshold(config: PipelineConfig) -> Fraction:
    # repr() keeps 0.1 as exactly 1/10 rather than its binary expansion.
    return Fraction(repr(config.dice_threshold))


def build_translation_table(
    pairs: Sequence[SentencePair],
    watchlist: Iterable[str],
    config: PipelineConfig | None = None,
) -> TranslationTable:
    """Count co-occurrences for watched words and attribute each occurrence."""
    config = config or PipelineConfig(jobs=1)
    watched = frozenset(watchlist)
    if not watched:
        raise ValueError("watchlist must not be empty")

    token_pairs = [(pair.source.tokens, pair.target.tokens) for pair in pairs]
    counts = _count_pairs(token_pairs, watched, config.jobs)
    tau = _threshold(config)

    ranked: dict[str, list[str]] = {}
    for word in watched:
        c_s = counts.source[word]
        scored = [
            (Fraction(2 * c_st, c_s + counts.target[t]), t)
            for t, c_st in counts.joint[word].items()
        ]
        scored = [(dice, t) for dice, t in scored if dice >= tau]
        scored.sort(key=lambda item: (-item[0], item[1]))
        ranked[word] = [t for _, t in scored[: config.max_candidates]]

    attributed: dict[str, Counter] = {word: Counter() for word in watched}
    none_counts: Counter = Counter()
    for source_tokens, target_tokens in token_pairs:
        present = watched.intersection(source_tokens)
        if not present:
            continue
        target_types = set(target_tokens)
        for word in present:
            choice = next((t for t in ranked[word] if t in target_types), None)
            if choice is None:
                none_counts[word] += 1
            else:
                attributed[word][choice] += 1

    entries: dict[str, TranslationEntry] = {}
    for word in sorted(watched):
        total = counts.source[word]
        if total == 0:
            logger.warning("Watched word '%s' never occurs on the source side", word)
        candidates = tuple(
            Candidate(
                target_word=t,
                cooccurrence_count=counts.joint[word][t],
                source_count=total,
                target_count=counts.target[t],
                attributed_count=attributed[word][t],
            )
            for t in ranked[word]
        )
        entries[word] = TranslationEntry(
            source_word=word,
            candidates=candidates,
            none_count=none_counts[word],
            total_occurrences=total,
        )
    return TranslationTable(entries=entries)


@dataclass(frozen=True)
class Inconsistency:
    source_word: str
    candidates: tuple[Candidate, ...]
    none_count: int
    total_occurrences: int


def detect_inconsistencies(table: TranslationTable, min_total: int = 1) -> list[Inconsistency]:
    """Words translated more than one way, or sometimes not at all."""
    found = []
    for entry in table:
        if entry.total_occurrences < min_total:
            continue
        realized = sum(1 for c in entry.candidates if c.attributed_count > 0)
        if realized >= 2 or entry.none_count > 0:
            found.append(
                Inconsistency(entry.source_word, entry.candidates, entry.none_count, entry.total_occurrences)
            )
    found.sort(key=lambda item: (-item.total_occurrences, item.source_word))
    return found


def select_canonical(table: TranslationTable, source_word: str) -> str:
    """Most frequently attributed translation; ties go to higher Dice, then lexicographic."""
    if source_word not in table:
        raise NoCanonicalError(f"'{source_word}' is not in the translation table")
    realized = [c for c in table[source_word].candidates if c.attributed_count > 0]
    if not realized:
        raise NoCanonicalError(
            f"every occurrence of '{source_word}' was attributed NONE; choose a canonical form manually"
        )
    best = min(realized, key=lambda c: (-c.attributed_count, -c.dice, c.target_word))
    return best.target_word


class RuleMode(str, Enum):
    INSERT_IF_ABSENT = "insert_if_absent"
    REPLACE_ONLY = "replace_only"


class CanonicalizationRule(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    source_word: str
    canonical: str
    variants: frozenset[str] = frozenset()
    mode: RuleMode

    @model_validator(mode="after")
    def _check(self) -> "CanonicalizationRule":
        for token in (self.source_word, self.canonical, *self.variants):
            if not token or any(ch.isspace() for ch in token):
                raise ValueError(f"rule tokens must be single non-empty tokens, got {token!r}")
        if self.canonical in self.variants:
            raise ValueError(f"canonical '{self.canonical}' must not be listed among its variants")
        if not self.variants and self.mode is RuleMode.REPLACE_ONLY:
            raise ValueError(f"replace_only rule for '{self.source_word}' needs at least one variant")
        return self

    @field_serializer("variants")
    def _sorted_variants(self, variants: frozenset[str]) -> list[str]:
        return sorted(variants)


def derive_rule(table: TranslationTable, source_word: str, mode: RuleMode) -> CanonicalizationRule | None:
    """Rule mapping every realized translation of a word onto its canonical one."""
    canonical = select_canonical(table, source_word)
    variants = frozenset(
        c.target_word
        for c in table[source_word].candidates
        if c.attributed_count > 0 and c.target_word != canonical
    )
    if not variants and mode is RuleMode.REPLACE_ONLY:
        logger.info("'%s' is already translated consistently as '%s'", source_word, canonical)
        return None
    return CanonicalizationRule(source_word=source_word, canonical=canonical, variants=variants, mode=mode)


class ChangeRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    pair_id: int
    action: Literal["replace", "insert"]
    position: int
    old: str | None
    new: str


def _insert_position(source_index: int, source_len: int, target_len: int) -> int:
    """Target index at the same relative position, rounded half up."""
    scaled = Fraction(source_index * target_len, source_len)
    return max(0, min(target_len, math.floor(scaled + Fraction(1, 2))))


def _rewrite_pair(pair: SentencePair, rule: CanonicalizationRule) -> tuple[SentencePair, list[ChangeRecord]]:
    if rule.source_word not in pair.source.tokens:
        return pair, []

    tokens = list(pair.target.tokens)
    records: list[ChangeRecord] = []
    for index, token in enumerate(tokens):
        if token in rule.variants:
            records.append(
                ChangeRecord(pair_id=pair.pair_id, action="replace", position=index, old=token, new=rule.canonical)
            )
            tokens[index] = rule.canonical

    if rule.mode is RuleMode.INSERT_IF_ABSENT and rule.canonical not in tokens:
        first = pair.source.tokens.index(rule.source_word)
        position = _insert_position(first, len(pair.source.tokens), len(tokens))
        tokens.insert(position, rule.canonical)
        records.append(
            ChangeRecord(pair_id=pair.pair_id, action="insert", position=position, old=None, new=rule.canonical)
        )

    if not records:
        return pair, []
    return pair.model_copy(update={"target": sentence_from_tokens(tokens)}), records


def _apply(pairs: Sequence[SentencePair], rule: CanonicalizationRule) -> tuple[list[SentencePair], list[ChangeRecord]]:
    rewritten: list[SentencePair] = []
    log: list[ChangeRecord] = []
    for pair in pairs:
        new_pair, records = _rewrite_pair(pair, rule)
        rewritten.append(new_pair)
        log.extend(records)
    logger.info(
        "Rule %s -> %s (%s): %d changes", rule.source_word, rule.canonical, rule.mode.value, len(log)
    )
    return rewritten, log


def canonicalize_names(
    pairs: Sequence[SentencePair], rule: CanonicalizationRule
) -> tuple[list[SentencePair], list[ChangeRecord]]:
    """Copy-able correction: replace variants, insert the canonical form when absent."""
    if rule.mode is not RuleMode.INSERT_IF_ABSENT:
        raise ValueError(f"canonicalize_names needs an insert_if_absent rule, got {rule.mode.value}")
    return _apply(pairs, rule)


def canonicalize_verbs(
    pairs: Sequence[SentencePair], rule: CanonicalizationRule
) -> tuple[list[SentencePair], list[ChangeRecord]]:
    """Most-frequent-translation substitution; never inserts."""
    if rule.mode is not RuleMode.REPLACE_ONLY:
        raise ValueError(f"canonicalize_verbs needs a replace_only rule, got {rule.mode.value}")
    return _apply(pairs, rule)


def apply_rules(
    pairs: Sequence[SentencePair], rules: Iterable[CanonicalizationRule]
) -> tuple[list[SentencePair], list[ChangeRecord]]:
    current = list(pairs)
    log: list[ChangeRecord] = []
    for rule in rules:
        if rule.mode is RuleMode.INSERT_IF_ABSENT:
            current, records = canonicalize_names(current, rule)
        else:
            current, records = canonicalize_verbs(current, rule)
        log.extend(records)
    return current, log


_RULES_ADAPTER = TypeAdapter(list[CanonicalizationRule])


def _unnormalized_tokens(rule: CanonicalizationRule, config: PipelineConfig | None) -> list[str]:
    tokens = (rule.source_word, rule.canonical, *sorted(rule.variants))
    return [token for token in tokens if tokenize(token, config) != [token]]


def load_rules(path: str | Path, config: PipelineConfig | None = None) -> list[CanonicalizationRule]:
    """Read a rules file; every rule token must already be in tokenized form."""
    try:
        rules = _RULES_ADAPTER.validate_json(Path(path).read_bytes())
    except ValidationError as exc:
        raise CorpusFormatError(f"invalid rules file {path}: {exc}") from exc
    for rule in rules:
        bad = _unnormalized_tokens(rule, config)
        if bad:
            raise CorpusFormatError(
                f"invalid rules file {path}: rule for '{rule.source_word}' has tokens that do not "
                f"survive tokenization unchanged: {bad}"
            )
    return rules


def write_rules(rules: Sequence[CanonicalizationRule], path: str | Path) -> None:
    payload = [rule.model_dump(mode="json") for rule in rules]
    Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def write_change_log(records: Iterable[ChangeRecord], path: str | Path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for record in records:
            handle.write(json.dumps(record.model_dump(mode="json"), ensure_ascii=False) + "\n")
            count += 1
    return count


def write_table_tsv(table: TranslationTable, path: str | Path) -> None:
    """``source, target, C_st, dice, attributed`` rows plus one NONE row per word."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for entry in table:
            for c in entry.candidates:
                handle.write(
                    f"{entry.source_word}\t{c.target_word}\t{c.cooccurrence_count}\t"
                    f"{float(c.dice):.6f}\t{c.attributed_count}\n"
                )
            handle.write(f"{entry.source_word}\t{NONE_LABEL}\t-\t-\t{entry.none_count}\n")
