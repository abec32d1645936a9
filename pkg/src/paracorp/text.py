"""Text cleaning and tokenization shared by every stage."""

from __future__ import annotations

import re
import unicodedata

from .config import PipelineConfig
from .errors import TextDecodeError
from .state import Sentence


PUNCTUATION = frozenset('.,:;!?()"«»[]')
APOSTROPHES = frozenset("'’")

_TAG_RE = re.compile(r"<[^>]*>")
_LINE_CONTROL_RE = re.compile(r"[\t\n\r]")
_CONTROL_RE = re.compile(r"[\x00-\x1f\x7f]")
_WHITESPACE_RE = re.compile(r"\s+")

_DEFAULT_CONFIG = PipelineConfig(jobs=1)


def decode_utf8(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TextDecodeError(exc.start, exc.reason) from exc


def clean(text: str | bytes) -> str:
    """Strip markup and control characters, collapse whitespace, NFC-normalize.

    The result is a fixed point: ``clean(clean(x)) == clean(x)``.
    """
    if isinstance(text, bytes):
        text = decode_utf8(text)

    text = unicodedata.normalize("NFC", text)
    text = _LINE_CONTROL_RE.sub(" ", text)
    text = _CONTROL_RE.sub("", text)
    # Removing one tag can expose another ("<<a>b>").
    while _TAG_RE.search(text):
        text = _TAG_RE.sub(" ", text)
    text = _WHITESPACE_RE.sub(" ", text).strip()
    return unicodedata.normalize("NFC", text)


def _split_chunk(chunk: str) -> list[str]:
    tokens: list[str] = []
    current: list[str] = []

    def flush() -> None:
        if current:
            tokens.append("".join(current))
            current.clear()

    for i, ch in enumerate(chunk):
        if ch in PUNCTUATION:
            flush()
            tokens.append(ch)
        elif ch in APOSTROPHES:
            left = chunk[i - 1] if i > 0 else ""
            right = chunk[i + 1] if i + 1 < len(chunk) else ""
            if left.isalpha() and right.isalpha():
                current.append(ch)
            else:
                flush()
                tokens.append(ch)
        else:
            current.append(ch)
    flush()
    return tokens


def tokenize(text: str, config: PipelineConfig | None = None) -> list[str]:
    """Split cleaned text into word and punctuation tokens.

    Each character of ``PUNCTUATION`` becomes its own token; an apostrophe
    between two letters stays inside its word ("siya'y"); hyphens never split.
    """
    config = config or _DEFAULT_CONFIG
    if config.lowercase:
        text = text.lower()

    tokens: list[str] = []
    for chunk in text.split():
        tokens.extend(_split_chunk(chunk))
    return tokens


def detokenize(tokens: list[str] | tuple[str, ...]) -> str:
    return " ".join(tokens)


def make_sentence(raw: str | bytes, config: PipelineConfig | None = None) -> Sentence:
    cleaned = clean(raw)
    return Sentence(raw=cleaned, tokens=tuple(tokenize(cleaned, config)))


def sentence_from_tokens(tokens: list[str] | tuple[str, ...]) -> Sentence:
    """Sentence whose raw form is the space-joined token list."""
    return Sentence(raw=detokenize(tokens), tokens=tuple(tokens))
