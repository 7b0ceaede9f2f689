"""Vertex-disjoint packing of small graphs, phrased as one pattern embedding."""
from __future__ import annotations

from typing import Sequence

from .embed import Embedding, embed
from .errors import ParameterError
from .graph import Graph, PatternSpec, build_pattern
from .runner import Stats

COMPONENT_LIMIT = 5


def _run(spec: PatternSpec, g: Graph, threads, stats, engine="colorcode") -> Embedding | None:
    h, td = build_pattern(spec)
    return embed(h, td, g, engine=engine, threads=threads, stats=stats)


def pack(g: Graph, components: Sequence[Graph], threads: int | None = None, stats: Stats | None = None,
         engine: str = "colorcode") -> Embedding | None:
    """Disjoint copies of every graph in ``components`` (a multiset), or None."""
    if not components:
        raise ParameterError("component multiset must be nonempty")
    for comp in components:
        if comp.n > COMPONENT_LIMIT:
            raise ParameterError(f"component with {comp.n} vertices exceeds the limit of {COMPONENT_LIMIT}")
        if comp.directed:
            raise ParameterError("components must be undirected")
    if g.directed:
        raise ParameterError("packing host must be undirected")
    return _run(PatternSpec("multiset", graphs=tuple(components)), g, threads, stats, engine)


def pack_cycles(g: Graph, k: int, l: int, threads: int | None = None, stats: Stats | None = None) -> Embedding | None:
    if l < 3:
        raise ParameterError("cycle length must be >= 3")
    return _run(PatternSpec("cycles", k=k, l=l), g, threads, stats)


def pack_paths(g: Graph, k: int, l: int, threads: int | None = None, stats: Stats | None = None) -> Embedding | None:
    if l < 1:
        raise ParameterError("path vertex count must be >= 1")
    return _run(PatternSpec("paths", k=k, l=l), g, threads, stats)


def pack_forest(g: Graph, forest: Graph, k: int = 1, threads: int | None = None,
                stats: Stats | None = None) -> Embedding | None:
    """``k`` disjoint copies of an explicit forest."""
    if k < 1:
        raise ParameterError("copy count must be >= 1")
    if forest.n == 0:
        raise ParameterError("forest must have at least one vertex")
    if k > 1:
        from .graph import _union

        forest, _ = _union([forest] * k)
    return _run(PatternSpec("forest", graphs=(forest,)), g, threads, stats)
