"""Corpus interchange, deterministic splitting and line-aligned bitext files."""

from __future__ import annotations

import json
import logging
import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from pydantic import TypeAdapter

from .config import PipelineConfig, build_config
from .errors import ConfigError, CorpusFormatError, ParallelAlignmentError, RoundingConflictError
from .state import ImportedLine, Origin, SentencePair
from .text import decode_utf8, detokenize, make_sentence

logger = logging.getLogger(__name__)

_ORIGIN_ADAPTER: TypeAdapter = TypeAdapter(Origin)

SPLIT_NAMES = ("train", "valid", "test")


def write_corpus(pairs: Iterable[SentencePair], path: str | Path) -> int:
    """One JSON object per line: ``{pair_id, origin, source_raw, target_raw}``."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for pair in pairs:
            record = {
                "pair_id": pair.pair_id,
                "origin": pair.origin.model_dump(mode="json"),
                "source_raw": pair.source.raw,
                "target_raw": pair.target.raw,
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
            count += 1
    return count


def read_corpus(path: str | Path, config: PipelineConfig | None = None) -> list[SentencePair]:
    pairs: list[SentencePair] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                pairs.append(
                    SentencePair(
                        pair_id=record["pair_id"],
                        origin=_ORIGIN_ADAPTER.validate_python(record["origin"]),
                        source=make_sentence(record["source_raw"], config),
                        target=make_sentence(record["target_raw"], config),
                    )
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise CorpusFormatError(f"{path}:{line_no}: invalid corpus record: {exc}") from exc
    return pairs


@dataclass(frozen=True)
class SplitResult:
    train: list[SentencePair]
    valid: list[SentencePair]
    test: list[SentencePair]
    seed: int

    def parts(self) -> dict[str, list[SentencePair]]:
        return {"train": self.train, "valid": self.valid, "test": self.test}


def seeded_shuffle(items: Sequence, seed: int) -> list:
    """Fisher-Yates driven only by ``random.Random(seed).random()``.

    Python guarantees that ``random()`` yields the same sequence for the same
    seed across versions, unlike ``shuffle``/``randrange``.
    """
    rng = random.Random(seed)
    shuffled = list(items)
    for i in range(len(shuffled) - 1, 0, -1):
        j = int(rng.random() * (i + 1))
        shuffled[i], shuffled[j] = shuffled[j], shuffled[i]
    return shuffled


def _round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


def split_corpus(
    pairs: Sequence[SentencePair],
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> SplitResult:
    """Shuffle, then cut at round(r_train*N) and round((r_train+r_valid)*N)."""
    build_config(split_ratios=ratios, jobs=1)
    size = len(pairs)
    if size < 3:
        raise ValueError(f"need at least 3 pairs to split, got {size}")

    shuffled = seeded_shuffle(pairs, seed)
    first = _round_half_up(ratios[0] * size)
    second = _round_half_up((ratios[0] + ratios[1]) * size)
    result = SplitResult(
        train=shuffled[:first],
        valid=shuffled[first:second],
        test=shuffled[second:],
        seed=seed,
    )
    for name, ratio in zip(SPLIT_NAMES, ratios):
        if not result.parts()[name]:
            raise RoundingConflictError(name, ratio, size)

    logger.info(
        "Split %d pairs into %d/%d/%d (seed %d)", size, len(result.train), len(result.valid), len(result.test), seed
    )
    return result


def _write_lines(path: Path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.writelines(line + "\n" for line in lines)


def export_parallel(pairs: Sequence[SentencePair], path_prefix: str | Path) -> tuple[Path, Path]:
    """Write ``<prefix>.src`` and ``<prefix>.tgt``, one space-joined sentence per line."""
    prefix = Path(path_prefix)
    if str(path_prefix).endswith(("/", "\\")) or prefix.name in ("", ".", "..") or prefix.is_dir():
        raise ConfigError(
            f"export prefix {str(path_prefix)!r} must name a file stem such as 'out/train', not a directory"
        )
    source_path = prefix.with_name(prefix.name + ".src")
    target_path = prefix.with_name(prefix.name + ".tgt")
    _write_lines(source_path, [detokenize(p.source.tokens) for p in pairs])
    _write_lines(target_path, [detokenize(p.target.tokens) for p in pairs])
    return source_path, target_path


def read_lines(path: str | Path) -> list[str]:
    """Lines of a UTF-8 file without their LF terminators."""
    text = decode_utf8(Path(path).read_bytes())
    return text.split("\n")[:-1] if text.endswith("\n") else (text.split("\n") if text else [])


def import_parallel(
    src_path: str | Path,
    tgt_path: str | Path,
    config: PipelineConfig | None = None,
) -> list[SentencePair]:
    source_lines = read_lines(src_path)
    target_lines = read_lines(tgt_path)
    if len(source_lines) != len(target_lines):
        raise ParallelAlignmentError(len(source_lines), len(target_lines))

    pairs = []
    for index, (src, tgt) in enumerate(zip(source_lines, target_lines)):
        source, target = make_sentence(src, config), make_sentence(tgt, config)
        if not source.tokens or not target.tokens:
            raise CorpusFormatError(f"line {index + 1} of {src_path}/{tgt_path} is empty after cleaning")
        pairs.append(SentencePair(pair_id=index, origin=ImportedLine(line=index + 1), source=source, target=target))
    return pairs
