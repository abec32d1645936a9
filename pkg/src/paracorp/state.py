"""Shared corpus data model."""

from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class VerseId(BaseModel):
    model_config = ConfigDict(frozen=True)

    book: str = Field(pattern=r"^[A-Z0-9]{3}$")
    chapter: int = Field(ge=1)
    verse: int = Field(ge=1)

    def __str__(self) -> str:
        return f"{self.book} {self.chapter}:{self.verse}"


class BibleVerse(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["bible"] = "bible"
    verse_id: VerseId


class WikiSentence(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["wiki"] = "wiki"
    category: str
    article_title: str
    source_index: int = Field(ge=0)
    target_index: int = Field(ge=0)


class ImportedLine(BaseModel):
    """Pair read back from a line-aligned bitext."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["imported"] = "imported"
    line: int = Field(ge=1)


Origin = Annotated[Union[BibleVerse, WikiSentence, ImportedLine], Field(discriminator="kind")]


class Sentence(BaseModel):
    """Raw text plus its tokenization. Build with ``text.make_sentence``."""

    model_config = ConfigDict(frozen=True)

    raw: str
    tokens: tuple[str, ...]

    @field_validator("tokens")
    @classmethod
    def _check_tokens(cls, tokens: tuple[str, ...]) -> tuple[str, ...]:
        for token in tokens:
            if not token or any(ch.isspace() for ch in token):
                raise ValueError(f"invalid token {token!r}")
        return tokens

    def __len__(self) -> int:
        return len(self.tokens)


class SentencePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    pair_id: int = Field(ge=0)
    origin: Origin
    source: Sentence
    target: Sentence

    @model_validator(mode="after")
    def _check_non_empty(self) -> "SentencePair":
        if not self.source.tokens or not self.target.tokens:
            raise ValueError(f"pair {self.pair_id} has an empty side after cleaning")
        return self

    def category(self) -> str:
        """Grouping key used by corpus statistics."""
        if isinstance(self.origin, WikiSentence):
            return self.origin.category
        if isinstance(self.origin, BibleVerse):
            return self.origin.verse_id.book
        return "imported"
