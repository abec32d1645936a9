"""Split and bitext export nodes."""

from __future__ import annotations

from pathlib import Path

from ..dataset import export_parallel, split_corpus, write_corpus
from .state import PipelineState


def split_stage(state: PipelineState) -> dict:
    config = state["config"]
    splits = split_corpus(state["pairs"], config.split_ratios, config.rng_seed)

    out_dir = Path(state["out_dir"])
    outputs, counts = {}, {}
    for name, part in splits.parts().items():
        path = out_dir / f"{name}.jsonl"
        write_corpus(part, path)
        outputs[name] = str(path)
        counts[f"{name}_pairs"] = len(part)
    return {"splits": splits, "outputs": outputs, "counts": counts, "stages_completed": ["split"]}


def export_stage(state: PipelineState) -> dict:
    """Write ``<split>.src``/``<split>.tgt`` for the NMT toolkit."""
    out_dir = Path(state["out_dir"])
    outputs = {}
    for name, part in state["splits"].parts().items():
        source_path, target_path = export_parallel(part, out_dir / name)
        outputs[f"{name}_src"] = str(source_path)
        outputs[f"{name}_tgt"] = str(target_path)
    return {"outputs": outputs, "stages_completed": ["export"]}
