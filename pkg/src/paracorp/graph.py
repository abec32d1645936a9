"""Corpus-building graph: ingest -> dedupe -> table -> canonicalize -> split -> export."""

from __future__ import annotations

from langgraph.graph import END, START, StateGraph

from .stages.correction import canonicalize_stage, table_stage
from .stages.ingest import dedupe_stage, ingest_stage, route_after_dedupe
from .stages.release import export_stage, split_stage
from .stages.state import PipelineState


def build_graph() -> StateGraph:
    graph = StateGraph(PipelineState)

    graph.add_node("ingest", ingest_stage)
    graph.add_node("dedupe", dedupe_stage)
    graph.add_node("table", table_stage)
    graph.add_node("canonicalize", canonicalize_stage)
    graph.add_node("split", split_stage)
    graph.add_node("export", export_stage)

    graph.add_edge(START, "ingest")
    graph.add_edge("ingest", "dedupe")
    graph.add_conditional_edges("dedupe", route_after_dedupe, ["table", "split"])
    graph.add_edge("table", "canonicalize")
    graph.add_edge("canonicalize", "split")
    graph.add_edge("split", "export")
    graph.add_edge("export", END)
    return graph


def compile_graph():
    """Compile the pipeline graph (no checkpointer: runs are one-shot)."""
    return build_graph().compile()
