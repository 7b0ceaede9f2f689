"""Witness checkers. They only read the Graph type and plain witness fields;
nothing here calls a solver or a coloring family."""
from __future__ import annotations

import itertools
from collections import deque
from typing import Callable, Iterable, Mapping, Sequence

from .graph import Graph


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def check_embedding(h: Graph, g: Graph, assignment: Mapping[int, int], anchors: Mapping[int, int] | None = None) -> bool:
    if set(assignment) != set(h.vertices):
        return False
    image = list(assignment.values())
    if len(set(image)) != len(image) or not all(1 <= v <= g.n for v in image):
        return False
    for u, v in h.edges:
        if not g.has_edge(assignment[u], assignment[v]):
            return False
    return all(assignment[hv] == gv for hv, gv in (anchors or {}).items())


def covered_edges(g: Graph, S: Iterable[int]) -> set[tuple[int, int]]:
    S = set(S)
    return {e for e in g.edges if e[0] in S or e[1] in S}


def check_cover(g: Graph, vertices: Iterable[int], covered: Iterable[tuple[int, int]], *, k: int | None = None,
                at_least: int | None = None, exactly: int | None = None, full: bool = False,
                forbidden: Iterable[int] = ()) -> bool:
    S = set(vertices)
    if not all(1 <= v <= g.n for v in S) or S & set(forbidden):
        return False
    real = covered_edges(g, S)
    if {_norm(*e) for e in covered} != real:
        return False
    if k is not None and len(S) > k:
        return False
    if full and len(real) != g.m:
        return False
    if at_least is not None and len(real) < at_least:
        return False
    if exactly is not None and len(real) != exactly:
        return False
    return True


def apply_edits(g: Graph, additions: Iterable[tuple[int, int]], deletions: Iterable[tuple[int, int]]) -> Graph | None:
    E = set(g.edges)
    add = {_norm(*e) for e in additions}
    dele = {_norm(*e) for e in deletions}
    if add & E or not dele <= E or add & dele:
        return None
    return Graph.from_edges(g.n, (E - dele) | add)


def _components(g: Graph) -> list[frozenset[int]]:
    seen, out = set(), []
    for r in g.vertices:
        if r in seen:
            continue
        comp, q = {r}, deque([r])
        seen.add(r)
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    q.append(y)
        out.append(frozenset(comp))
    return out


def is_clique(g: Graph, block: Iterable[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in itertools.combinations(sorted(block), 2))


def multipartite_parts(g: Graph, block: Iterable[int]) -> int | None:
    """Number of parts if ``g[block]`` is complete multipartite, else None.

    Parts are the classes of the non-adjacency relation, which must be an
    equivalence with every cross pair adjacent."""
    block = sorted(block)
    parts: list[list[int]] = []
    for v in block:
        for part in parts:
            if not g.has_edge(v, part[0]):
                part.append(v)
                break
        else:
            parts.append([v])
    for part in parts:
        if any(g.has_edge(u, v) for u, v in itertools.combinations(part, 2)):
            return None
    for a, b in itertools.combinations(parts, 2):
        if not all(g.has_edge(u, v) for u in a for v in b):
            return None
    return len(parts)


def check_clustering(g: Graph, additions, deletions, clusters: Sequence[Iterable[int]], *, k: int,
                     l: int | None = None, parts: Sequence[int] | None = None) -> bool:
    edited = apply_edits(g, additions, deletions)
    if edited is None or len(set(map(_norm_pair, additions))) + len(set(map(_norm_pair, deletions))) > k:
        return False
    comps = {frozenset(c) for c in clusters}
    if sum(len(c) for c in clusters) != g.n or set(_components(edited)) != comps:
        return False
    if l is not None and len(comps) != l:
        return False
    if parts is None:
        return all(is_clique(edited, c) for c in comps)
    got = sorted(multipartite_parts(edited, c) or 0 for c in comps)
    return got == sorted(parts)


def _norm_pair(e) -> tuple[int, int]:
    return _norm(*e)


def check_p_partite(g: Graph, additions, deletions, p: int, k: int) -> bool:
    edited = apply_edits(g, additions, deletions)
    if edited is None or len(set(map(_norm_pair, additions))) + len(set(map(_norm_pair, deletions))) > k:
        return False
    return multipartite_parts(edited, edited.vertices) == p


def check_cut(g: Graph, X: Iterable[int], S: Iterable[int], Y: Iterable[int], *, k: int, l: int,
              connected: bool, terminal: int | None = None) -> bool:
    X, S, Y = set(X), set(S), set(Y)
    if X & S or X & Y or S & Y or X | S | Y != set(g.vertices):
        return False
    if len(S) > k:
        return False
    for x in X:
        if any(y in Y for y in g.neighbors(x)):
            return False
    if connected:
        if len(X) != l or not _connected(g, X):
            return False
    elif not 1 < len(X) <= l:
        return False
    return terminal is None or terminal in X


def _connected(g: Graph, X: set[int]) -> bool:
    if not X:
        return False
    start = min(X)
    seen, q = {start}, deque([start])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if y in X and y not in seen:
                seen.add(y)
                q.append(y)
    return seen == X


def check_balls(g: Graph, centers: Sequence[int], r: int, pred: Callable[[Graph, int], bool], k: int) -> bool:
    from .graph import ball, bfs_distances

    if len(centers) != k or len(set(centers)) != k:
        return False
    for a, b in itertools.combinations(centers, 2):
        if bfs_distances(g, a).get(b, float("inf")) <= 2 * r:
            return False
    for a in centers:
        sub, vmap = ball(g, a, r)
        if not pred(sub, vmap.index(a) + 1):
            return False
    return True
