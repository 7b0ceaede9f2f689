"""Graph corpora and builders shared by the test modules."""
from __future__ import annotations

import functools
import itertools
import random
from pathlib import Path

import networkx as nx
from hypothesis import strategies as st

from paracc.graph import Graph

DATA = Path(__file__).parent / "data"


def from_nx(G) -> Graph:
    index = {v: i + 1 for i, v in enumerate(sorted(G.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in G.edges()])


@functools.lru_cache(maxsize=None)
def atlas(max_n: int) -> tuple[Graph, ...]:
    """Every graph on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    return tuple(from_nx(G) for G in nx.graph_atlas_g()[1:] if G.number_of_nodes() <= max_n)


@functools.lru_cache(maxsize=None)
def connected_upto(max_n: int) -> tuple[Graph, ...]:
    """Every connected graph on 1..max_n vertices (max_n <= 8)."""
    small = tuple(from_nx(G) for G in nx.graph_atlas_g()[1:]
                  if G.number_of_nodes() <= min(max_n, 7) and nx.is_connected(G))
    if max_n < 8:
        return small
    return small + connected8()


@functools.lru_cache(maxsize=None)
def connected8() -> tuple[Graph, ...]:
    lines = (DATA / "connected8.g6").read_text().split()
    return tuple(from_nx(nx.from_graph6_bytes(line.encode())) for line in lines)


def random_graphs(n: int, count: int, seed: int, densities=(0.2, 0.35, 0.5)) -> list[Graph]:
    rnd = random.Random(seed)
    return [from_nx(nx.gnp_random_graph(n, rnd.choice(densities), seed=rnd.randrange(1 << 30)))
            for _ in range(count)]


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(1, n + 1), 2))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


def union(*gs: Graph) -> Graph:
    edges, off = [], 0
    for g in gs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph.from_edges(off, edges)


@st.composite
def small_graphs(draw, min_n: int = 1, max_n: int = 6) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])

