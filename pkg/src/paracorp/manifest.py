"""Run manifests written beside every command's outputs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    subcommand: str
    config: dict[str, Any]
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: dict[str, str] = Field(default_factory=dict)
    counts: dict[str, int] = Field(default_factory=dict)
    wall_time_seconds: float = 0.0

    def path_in(self, directory: str | Path) -> Path:
        return Path(directory) / f"{self.subcommand}.manifest.json"


def write_manifest(manifest: RunManifest, directory: str | Path) -> Path:
    path = manifest.path_in(directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


def read_manifest(path: str | Path) -> RunManifest:
    return RunManifest.model_validate_json(Path(path).read_bytes())
