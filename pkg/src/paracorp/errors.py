"""Exception types raised by paracorp modules."""

from __future__ import annotations


class ParacorpError(Exception):
    """Base class for contract violations reported by the toolkit."""


class ConfigError(ParacorpError, ValueError):
    """Invalid pipeline configuration."""


class TextDecodeError(ParacorpError, ValueError):
    def __init__(self, offset: int, reason: str) -> None:
        super().__init__(f"invalid UTF-8 at byte offset {offset}: {reason}")
        self.offset = offset


class XmlParseError(ParacorpError):
    def __init__(self, line: int | None, reason: str) -> None:
        where = f"line {line}" if line is not None else "unknown line"
        super().__init__(f"malformed XML at {where}: {reason}")
        self.line = line


class EmptyDocumentError(ParacorpError):
    """No verse segment could be extracted from a document."""


class NoCanonicalError(ParacorpError):
    """Every occurrence of a watched word was attributed NONE."""


class EmptyArticleError(ParacorpError):
    """An HTML page held no paragraph text."""


class RoundingConflictError(ParacorpError, ValueError):
    def __init__(self, ratio_name: str, ratio: float, size: int) -> None:
        super().__init__(
            f"split '{ratio_name}' (ratio {ratio}) is empty after rounding over {size} pairs"
        )
        self.ratio_name = ratio_name


class ParallelAlignmentError(ParacorpError):
    def __init__(self, source_lines: int, target_lines: int) -> None:
        super().__init__(
            f"source and target line counts differ: ({source_lines}, {target_lines})"
        )
        self.counts = (source_lines, target_lines)


class CorpusFormatError(ParacorpError):
    """A corpus, rules or segment file does not match its documented format."""


class FetchError(ParacorpError):
    """A live Wikipedia request failed or the request cap was reached."""
