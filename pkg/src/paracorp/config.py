"""Configuration helpers for paracorp."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer, field_validator, model_validator

from .errors import ConfigError


load_dotenv()

CONFIG_ENV_VAR = "PARACORP_CONFIG"

DEFAULT_LANGUAGE_CODES = frozenset({"ceb", "tl"})
DEFAULT_CATEGORIES = frozenset({"regions", "provinces", "cities", "tourism"})
# Compared case-insensitively, without the trailing period.
DEFAULT_ABBREVIATIONS = frozenset(
    {"dr", "gng", "bb", "sr", "jr", "st", "sto", "sta", "blg", "mr", "mrs", "hen", "pres", "sen", "kgg"}
)

_LIST_FIELDS = {"split_ratios", "language_codes", "categories", "abbreviations"}


@dataclass(frozen=True)
class Settings:
    """Runtime configuration loaded from environment."""

    config_path: str | None = field(default_factory=lambda: os.getenv(CONFIG_ENV_VAR))
    log_level: str = field(default_factory=lambda: os.getenv("PARACORP_LOG_LEVEL", "INFO"))
    user_agent: str = field(
        default_factory=lambda: os.getenv(
            "PARACORP_USER_AGENT", "paracorp/0.1 (parallel corpus builder; offline-first)"
        )
    )


def get_settings() -> Settings:
    """Return a settings instance reflecting the current environment."""
    return Settings()


class PipelineConfig(BaseModel):
    """Thresholds and switches shared by every pipeline stage."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lowercase: bool = True
    dice_threshold: float = Field(0.1, gt=0.0, le=1.0)
    max_candidates: int = Field(12, ge=1)
    ngram_min: int = Field(3, ge=1)
    ngram_max: int = Field(6, ge=1)
    min_support: int = Field(5, ge=1)
    split_ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    rng_seed: int = Field(0, ge=-(2**63), lt=2**64)
    language_codes: frozenset[str] = DEFAULT_LANGUAGE_CODES
    categories: frozenset[str] = DEFAULT_CATEGORIES
    id_prefix: str = "b"
    id_separator: str = Field(".", min_length=1)
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS
    mask_numbers: bool = False
    fetch_delay_ms: int = Field(1000, ge=0)
    max_requests: int = Field(500, ge=1)
    jobs: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)

    @field_validator("split_ratios")
    @classmethod
    def _check_ratios(cls, ratios: tuple[float, float, float]) -> tuple[float, float, float]:
        if any(r < 0 for r in ratios):
            raise ValueError("split ratios must be non-negative")
        if abs(sum(ratios) - 1.0) > 1e-9:
            raise ValueError(f"split ratios must sum to 1, got {sum(ratios)}")
        return ratios

    @field_validator("abbreviations")
    @classmethod
    def _normalize_abbreviations(cls, values: frozenset[str]) -> frozenset[str]:
        return frozenset(v.strip().rstrip(".").lower() for v in values if v.strip())

    @model_validator(mode="after")
    def _check_ngram_range(self) -> "PipelineConfig":
        if self.ngram_min > self.ngram_max:
            raise ValueError(f"ngram_min ({self.ngram_min}) exceeds ngram_max ({self.ngram_max})")
        return self

    @field_serializer("language_codes", "categories", "abbreviations")
    def _sorted_set(self, values: frozenset[str]) -> list[str]:
        return sorted(values)

    def snapshot(self) -> dict[str, Any]:
        """JSON-ready view with deterministic ordering."""
        return self.model_dump(mode="json")


def _coerce(name: str, value: str | None) -> Any:
    if value is None:
        return None
    if name in _LIST_FIELDS:
        return [part.strip() for part in value.split(",") if part.strip()]
    return value.strip()


def read_config_file(path: str | os.PathLike[str]) -> dict[str, Any]:
    """Parse a KEY=VALUE config file into PipelineConfig field values."""
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigError(f"config file not found: {config_path}")

    values: dict[str, Any] = {}
    for key, raw in dotenv_values(config_path).items():
        name = key.strip().lower()
        if name not in PipelineConfig.model_fields:
            raise ConfigError(f"unknown config key '{key}' in {config_path}")
        values[name] = _coerce(name, raw)
    return values


def build_config(**values: Any) -> PipelineConfig:
    """Validate field values into a PipelineConfig, raising ConfigError."""
    try:
        return PipelineConfig(**values)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def load_pipeline_config(
    path: str | os.PathLike[str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> PipelineConfig:
    """Resolve defaults < config file < overrides (flags win)."""
    config_path = path or get_settings().config_path
    values: dict[str, Any] = read_config_file(config_path) if config_path else {}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_config(**values)
