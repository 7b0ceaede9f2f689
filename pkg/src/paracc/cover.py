"""Vertex cover, partial vertex cover and exact partial vertex cover."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._accel import kernel, prange
from .coloring import threshold
from .errors import ParameterError
from .graph import Graph
from .runner import Stats, clamped_params, family_chunks, first_success

KERNELIZED = "kernelized"
TOO_MANY_FORCED = "rejected-too-many-forced"
RESIDUAL_TOO_LARGE = "rejected-residual-too-large"
RED = "red"


@dataclass(frozen=True)
class Kernel:
    forced: frozenset[int]
    residual: Graph
    residual_map: tuple[int, ...]
    remaining_budget: int
    verdict: str


@dataclass(frozen=True)
class CoverWitness:
    vertices: frozenset[int]
    covered: frozenset[tuple[int, int]]


def _witness(g: Graph, S) -> CoverWitness:
    S = frozenset(S)
    return CoverWitness(S, frozenset(e for e in g.edges if e[0] in S or e[1] in S))


def _undirected(g: Graph) -> None:
    if g.directed:
        raise ParameterError("covering problems need an undirected graph")


def buss_kernel(g: Graph, k: int) -> Kernel:
    if k < 0:
        raise ParameterError("budget k must be >= 0")
    _undirected(g)
    forced = frozenset(v for v in g.vertices if g.degree(v) >= k + 1)
    bits = "".join("1" if v in forced else "0" for v in g.vertices)
    # |forced| > k decided by the threshold search, not by counting
    if forced and threshold(bits, k + 1):
        return Kernel(forced, Graph(0), (), k - len(forced), TOO_MANY_FORCED)
    touched = {v for e in g.edges if not (set(e) & forced) for v in e}
    residual, keep = g.induced(sorted(touched))
    verdict = RESIDUAL_TOO_LARGE if residual.n > k * (k + 1) else KERNELIZED
    return Kernel(forced, residual, tuple(keep), k - len(forced), verdict)


def vertex_cover(g: Graph, k: int) -> CoverWitness | None:
    kern = buss_kernel(g, k)
    if kern.verdict != KERNELIZED:
        return None
    res = kern.residual
    for size in range(kern.remaining_budget + 1):
        for combo in itertools.combinations(res.vertices, size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in res.edges):
                return _witness(g, kern.forced | {kern.residual_map[v - 1] for v in chosen})
    return None


# -- partial vertex cover -------------------------------------------------------

@kernel()
def _pvc_eval(colors, eu, ev, n, t, k, mask, dist, par_v, par_s):
    """Fewest vertices whose incident-edge colors cover all of 1..t; True if <= k."""
    for v in range(n):
        mask[v] = 0
    for e in range(len(colors)):
        bit = 1 << (colors[e] - 1)
        mask[eu[e]] |= bit
        mask[ev[e]] |= bit
    full = (1 << t) - 1
    big = k + 1
    for s in range(full + 1):
        dist[s] = big
    dist[0] = 0
    # s | mask >= s, so ascending order is a topological order
    for s in range(full + 1):
        d = dist[s]
        if d >= k:
            continue
        for v in range(n):
            s2 = s | mask[v]
            if s2 != s and d + 1 < dist[s2]:
                dist[s2] = d + 1
                par_v[s2] = v
                par_s[s2] = s
    return dist[full] <= k


@kernel(parallel=True)
def _pvc_batch(tables, eu, ev, n, t, k):
    out = np.zeros(tables.shape[0], dtype=np.bool_)
    size = 1 << t
    for row in prange(tables.shape[0]):
        mask = np.empty(n, dtype=np.int64)
        dist = np.empty(size, dtype=np.int64)
        par_v = np.empty(size, dtype=np.int64)
        par_s = np.empty(size, dtype=np.int64)
        out[row] = _pvc_eval(tables[row], eu, ev, n, t, k, mask, dist, par_v, par_s)
    return out


PVC_COLOR_LIMIT = 20


def partial_vertex_cover(g: Graph, k: int, t: int, threads: int | None = None, stats: Stats | None = None,
                         prefilter: bool = True) -> CoverWitness | None:
    """At most ``k`` vertices covering at least ``t`` edges.

    ``prefilter=False`` skips the cheap sound rejections so that the colored
    search itself can be exercised on negative instances."""
    if k < 1 or t < 1:
        raise ParameterError("partial vertex cover needs k >= 1 and t >= 1")
    _undirected(g)
    stats = stats if stats is not None else Stats()
    for v in g.vertices:
        if g.degree(v) >= t:
            return _witness(g, [v])
    if t > g.m:
        return None
    if prefilter:
        top = sorted((g.degree(v) for v in g.vertices), reverse=True)[:k]
        if sum(top) < t:
            return None
    if t > PVC_COLOR_LIMIT:
        raise ParameterError(f"coverage target t={t} exceeds the color-subset limit {PVC_COLOR_LIMIT}")
    edges = g.sorted_edges()
    eu = np.array([u - 1 for u, _ in edges], dtype=np.int64)
    ev = np.array([v - 1 for _, v in edges], dtype=np.int64)
    params = clamped_params(len(edges), t, t)
    stats.family_size = params.size
    hit = first_success(family_chunks(params), lambda tb: _pvc_batch(tb, eu, ev, g.n, t, k), stats, threads)
    if hit is None:
        return None
    size = 1 << t
    mask = np.empty(g.n, dtype=np.int64)
    dist, par_v, par_s = (np.empty(size, dtype=np.int64) for _ in range(3))
    assert _pvc_eval(hit.table, eu, ev, g.n, t, k, mask, dist, par_v, par_s)
    chosen, s = [], size - 1
    while s:
        chosen.append(int(par_v[s]) + 1)
        s = int(par_s[s])
    return _witness(g, chosen)


# -- exact partial vertex cover ------------------------------------------------

def split_high_degree(g: Graph, t: int) -> tuple[Graph, list[int | None]]:
    """Replace every vertex of degree > t by one red degree-1 vertex per incident edge.

    Returns the new graph (red vertices labelled) and, per new vertex, the
    original vertex it stands for (None for red copies)."""
    high = {v for v in g.vertices if g.degree(v) > t}
    origin: list[int | None] = []
    new_id = {}
    for v in g.vertices:
        if v not in high:
            origin.append(v)
            new_id[v] = len(origin)
    edges, labels = [], {}
    for u, v in g.sorted_edges():
        ends = []
        for x in (u, v):
            if x in high:
                origin.append(None)
                labels[len(origin)] = RED
                ends.append(len(origin))
            else:
                ends.append(new_id[x])
        edges.append(tuple(ends))
    return Graph.from_edges(len(origin), edges, labels=labels), origin


@kernel()
def _epvc_eval(table, nb_ptr, nb, cover, t, comp, stack, reach):
    """Blue components (color 1) and a subset-sum over their covered-edge counts."""
    n = len(table)
    for v in range(n):
        comp[v] = -1
    for s in range(t + 1):
        reach[s] = False
    reach[0] = True
    nc = 0
    for r in range(n):
        if table[r] != 1 or comp[r] >= 0:
            continue
        comp[r] = nc
        total = 0
        inner = 0
        top = 0
        stack[top] = r
        top += 1
        while top:
            top -= 1
            x = stack[top]
            total += cover[x]
            for j in range(nb_ptr[x], nb_ptr[x + 1]):
                y = nb[j]
                if table[y] == 1:
                    inner += 1
                    if comp[y] < 0:
                        comp[y] = nc
                        stack[top] = y
                        top += 1
        w = total - inner // 2
        nc += 1
        if 0 < w <= t:
            for s in range(t, w - 1, -1):
                if reach[s - w]:
                    reach[s] = True
    return reach[t]


@kernel(parallel=True)
def _epvc_batch(tables, nb_ptr, nb, cover, t):
    out = np.zeros(tables.shape[0], dtype=np.bool_)
    n = tables.shape[1]
    for row in prange(tables.shape[0]):
        comp = np.empty(n, dtype=np.int64)
        stack = np.empty(n, dtype=np.int64)
        reach = np.empty(t + 1, dtype=np.bool_)
        out[row] = _epvc_eval(tables[row], nb_ptr, nb, cover, t, comp, stack, reach)
    return out


def exact_partial_vertex_cover(g: Graph, t: int, threads: int | None = None,
                               stats: Stats | None = None) -> CoverWitness | None:
    """A vertex set covering exactly ``t`` edges."""
    if t < 0:
        raise ParameterError("coverage target t must be >= 0")
    _undirected(g)
    stats = stats if stats is not None else Stats()
    if t == 0:
        return _witness(g, [])
    if t > g.m:
        return None
    split, origin = split_high_degree(g, t)
    plain = [i for i, o in enumerate(origin) if o is not None]
    if not plain:
        return None
    # colorings live on the non-red vertices; red ones are always orange
    sub, keep = split.induced([i + 1 for i in plain])
    cover = np.array([split.degree(v) for v in keep], dtype=np.int64)
    nb_ptr = np.zeros(sub.n + 1, dtype=np.int64)
    flat: list[int] = []
    for v in sub.vertices:
        flat += [u - 1 for u in sub.neighbors(v)]
        nb_ptr[v] = len(flat)
    nb = np.array(flat or [0], dtype=np.int64)
    params = clamped_params(sub.n, 2 * t, 2)
    stats.family_size = params.size
    hit = first_success(family_chunks(params), lambda tb: _epvc_batch(tb, nb_ptr, nb, cover, t), stats, threads)
    if hit is None:
        return None
    chosen = _epvc_extract(sub, hit.table, cover, t)
    return _witness(g, [origin[keep[v - 1] - 1] for v in chosen])


def _epvc_extract(sub: Graph, table: np.ndarray, cover: np.ndarray, t: int) -> list[int]:
    seen, comps = set(), []
    for r in sub.vertices:
        if table[r - 1] != 1 or r in seen:
            continue
        comp, stack = [r], [r]
        seen.add(r)
        while stack:
            x = stack.pop()
            for y in sub.neighbors(x):
                if table[y - 1] == 1 and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        inner = sum(1 for x in comp for y in sub.neighbors(x) if table[y - 1] == 1) // 2
        comps.append((comp, int(sum(cover[x - 1] for x in comp)) - inner))
    # subset sum with the first component that reaches each total
    best: dict[int, list[int]] = {0: []}
    for idx, (_, w) in enumerate(comps):
        if w <= 0:
            continue
        for s in sorted(best, reverse=True):
            if s + w <= t and s + w not in best:
                best[s + w] = best[s] + [idx]
    return sorted(v for idx in best[t] for v in comps[idx][0])
