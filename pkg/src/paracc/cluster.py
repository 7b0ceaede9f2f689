"""Cluster editing and its multipartite relatives.

One coloring, blue/orange (orange = color 2). Orange vertices with no smaller
orange neighbor act as representatives; the closed neighborhood of a
representative is taken as one final cluster. The rest (at most 2k vertices
when the coloring is the right one) is split into the remaining clusters by a
subset DP. For a partition P of V into blocks the edit count is

    |E| + sum over same-block pairs of (1 - 2*[pair is an edge]),

i.e. missing edges inside blocks plus edges between blocks.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._accel import kernel, prange
from .errors import ParameterError
from .graph import Graph, complement
from .runner import Stats, clamped_params, family_chunks, first_success, minimum_over

BIG = 1 << 40


@dataclass(frozen=True)
class EditSet:
    additions: frozenset[tuple[int, int]]
    deletions: frozenset[tuple[int, int]]

    @property
    def cost(self) -> int:
        return len(self.additions) + len(self.deletions)


@dataclass(frozen=True)
class ClusterSolution:
    edits: EditSet
    clusters: tuple[tuple[int, ...], ...]


def edits_to_partition(g: Graph, blocks: Sequence[Sequence[int]]) -> EditSet:
    """Edits turning ``g`` into the disjoint union of cliques on ``blocks``."""
    where = {v: i for i, b in enumerate(blocks) for v in b}
    adds = {(u, v) for b in blocks for u, v in itertools.combinations(sorted(b), 2) if not g.has_edge(u, v)}
    dels = {(u, v) for u, v in g.edges if where[u] != where[v]}
    return EditSet(frozenset(adds), frozenset(dels))


def _canonical_blocks(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks if b))


def _solution(g: Graph, blocks) -> ClusterSolution:
    blocks = _canonical_blocks(blocks)
    return ClusterSolution(edits_to_partition(g, blocks), blocks)


# -- kernel --------------------------------------------------------------------

@kernel()
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@kernel()
def _cluster_cost(table, adj, m, k, l, label):
    """Edit count of the best partition this coloring allows (BIG if none).

    ``label`` receives the block of every vertex for that partition."""
    n = len(table)
    for v in range(n):
        label[v] = -1
    r = 0
    for v in range(n):
        if table[v] != 2:
            continue
        rep = True
        for u in range(v):
            if table[u] == 2 and adj[v, u]:
                rep = False
                break
        if not rep:
            continue
        if r >= l or label[v] >= 0:
            return BIG
        label[v] = r
        for u in range(n):
            if adj[v, u]:
                if label[u] >= 0:
                    return BIG
                label[u] = r
        r += 1
    nl = 0
    for v in range(n):
        if label[v] < 0:
            nl += 1
    j = l - r
    if nl > 2 * k or j < 0 or j > nl or (j == 0 and nl > 0):
        return BIG
    cost = m
    for u in range(n):
        if label[u] < 0:
            continue
        for v in range(u + 1, n):
            if label[v] == label[u]:
                cost += 1 - 2 * adj[u, v]
    if nl == 0:
        return cost
    left = np.empty(nl, dtype=np.int64)
    t = 0
    for v in range(n):
        if label[v] < 0:
            left[t] = v
            t += 1
    nbm = np.zeros(nl, dtype=np.int64)
    for a in range(nl):
        for b in range(nl):
            if adj[left[a], left[b]]:
                nbm[a] |= 1 << b
    size = 1 << nl
    w = np.zeros(size, dtype=np.int64)
    for mask in range(1, size):
        low = mask & -mask
        i = _popcount(low - 1)
        rest = mask ^ low
        w[mask] = w[rest] + _popcount(rest) - 2 * _popcount(rest & nbm[i])
    f = np.full((j + 1, size), BIG, dtype=np.int64)
    choice = np.zeros((j + 1, size), dtype=np.int64)
    f[0, 0] = 0
    for b in range(1, j + 1):
        for mask in range(1, size):
            low = mask & -mask
            rest = mask ^ low
            sub = rest
            # every block containing the lowest remaining vertex
            while True:
                blk = sub | low
                prev = f[b - 1, mask ^ blk]
                if prev < BIG and prev + w[blk] < f[b, mask]:
                    f[b, mask] = prev + w[blk]
                    choice[b, mask] = blk
                if sub == 0:
                    break
                sub = (sub - 1) & rest
    full = size - 1
    if f[j, full] >= BIG:
        return BIG
    mask = full
    for b in range(j, 0, -1):
        blk = choice[b, mask]
        for a in range(nl):
            if blk >> a & 1:
                label[left[a]] = r + b - 1
        mask ^= blk
    return cost + f[j, full]


@kernel(parallel=True)
def _cluster_batch(tables, adj, m, k, l):
    rows, n = tables.shape
    out = np.empty(rows, dtype=np.int64)
    for row in prange(rows):
        label = np.empty(n, dtype=np.int64)
        out[row] = _cluster_cost(tables[row], adj, m, k, l, label)
    return out


def _label_blocks(g: Graph, table: np.ndarray, k: int, l: int) -> list[list[int]]:
    label = np.empty(g.n, dtype=np.int64)
    cost = _cluster_cost(np.asarray(table, dtype=np.int16), g.adjacency, g.m, k, l, label)
    assert cost < BIG
    blocks: list[list[int]] = [[] for _ in range(l)]
    for v in range(g.n):
        blocks[int(label[v])].append(v + 1)
    return blocks


def _check_undirected(g: Graph) -> None:
    if g.directed:
        raise ParameterError("cluster editing needs an undirected graph")


# -- operations ------------------------------------------------------------------

def cluster_editing(g: Graph, k: int, l: int, threads: int | None = None,
                    stats: Stats | None = None) -> ClusterSolution | None:
    """At most ``k`` edits leaving exactly ``l`` disjoint cliques."""
    if k < 0 or l < 1:
        raise ParameterError("cluster editing needs k >= 0 and l >= 1")
    _check_undirected(g)
    stats = stats if stats is not None else Stats()
    if l > g.n:
        return None
    params = clamped_params(g.n, 2 * k + l, 2)
    stats.family_size = params.size
    adj, m = g.adjacency, g.m
    hit = first_success(family_chunks(params), lambda tb: _cluster_batch(tb, adj, m, k, l) <= k, stats, threads)
    if hit is None:
        return None
    return _solution(g, _label_blocks(g, hit.table, k, l))


def min_cluster_cost(g: Graph, k: int, l: int, stats: Stats | None = None) -> tuple[int, list[list[int]] | None]:
    """Fewest edits into exactly ``l`` cliques when that is at most ``k``; otherwise a value > k."""
    if l > g.n or l < 1:
        return BIG, None
    params = clamped_params(g.n, 2 * k + l, 2)
    adj, m = g.adjacency, g.m
    best, hit = minimum_over(family_chunks(params), lambda tb: _cluster_batch(tb, adj, m, k, l), stats)
    if best > k or hit is None:
        return BIG, None
    return best, _label_blocks(g, hit.table, k, l)


def _is_clique_member(g: Graph, v: int) -> bool:
    """N[v] is a clique and every neighbor has the same closed neighborhood."""
    closed = set(g.neighbors(v)) | {v}
    for w in g.neighbors(v):
        if set(g.neighbors(w)) | {w} != closed:
            return False
    return True


def _clique_components(g: Graph) -> tuple[list[list[int]], list[int]]:
    """Clique components (vertex lists) and the remaining vertices."""
    seen, cliques, rest = set(), [], []
    for v in g.vertices:
        if v in seen:
            continue
        if _is_clique_member(g, v):
            comp = sorted(set(g.neighbors(v)) | {v})
            seen.update(comp)
            cliques.append(comp)
    rest = [v for v in g.vertices if v not in seen]
    return cliques, rest


def _lift(sub_solution: ClusterSolution | None, keep: list[int], aside: list[list[int]], g: Graph):
    blocks = [list(b) for b in aside]
    if sub_solution is not None:
        blocks += [[keep[v - 1] for v in b] for b in sub_solution.clusters]
    return _solution(g, blocks)


def many_cluster_editing(g: Graph, k: int, threads: int | None = None,
                         stats: Stats | None = None) -> ClusterSolution | None:
    """At most ``k`` edits leaving any number of disjoint cliques."""
    if k < 0:
        raise ParameterError("edit budget k must be >= 0")
    _check_undirected(g)
    stats = stats if stats is not None else Stats()
    cliques, rest = _clique_components(g)
    if not rest:
        return _lift(None, [], cliques, g)
    sub, keep = g.induced(rest)
    # every cluster of the remainder holds an edited vertex, so at most 2k of them
    for l in range(1, min(2 * k, sub.n) + 1):
        sol = cluster_editing(sub, k, l, threads, stats)
        if sol is not None:
            return _lift(sol, keep, cliques, g)
    return None


def cluster_editing_free_l(g: Graph, k: int, l: int, threads: int | None = None,
                           stats: Stats | None = None) -> ClusterSolution | None:
    """Exactly ``l`` cliques where ``l`` is ordinary input rather than a parameter.

    Clique components with more than k+1 vertices can be neither split nor
    merged within budget; of the smaller ones only 2k per size can be touched
    (each touched component holds an endpoint of an edit), so the surplus
    copies are set aside as final clusters."""
    if k < 0 or l < 1:
        raise ParameterError("cluster editing needs k >= 0 and l >= 1")
    _check_undirected(g)
    stats = stats if stats is not None else Stats()
    cliques, rest = _clique_components(g)
    aside, kept_cliques, per_size = [], [], {}
    for c in cliques:
        s = len(c)
        if s > k + 1 or per_size.get(s, 0) >= 2 * k:
            aside.append(c)
        else:
            per_size[s] = per_size.get(s, 0) + 1
            kept_cliques.append(c)
    remainder = sorted(rest + [v for c in kept_cliques for v in c])
    target = l - len(aside)
    if target <= 0:
        return _lift(None, [], aside, g) if target == 0 and not remainder else None
    # untouched remainder clusters are kept clique components; touched ones number <= 2k
    if target > 2 * k + len(kept_cliques) or target > len(remainder):
        return None
    sub, keep = g.induced(remainder)
    sol = cluster_editing(sub, k, target, threads, stats)
    return None if sol is None else _lift(sol, keep, aside, g)


def p_partite_editing(g: Graph, k: int, p: int, p_is_parameter: bool = True, threads: int | None = None,
                      stats: Stats | None = None) -> EditSet | None:
    """At most ``k`` edits making ``g`` complete ``p``-partite, via clusters of the complement."""
    if k < 0 or p < 1:
        raise ParameterError("p-partite editing needs k >= 0 and p >= 1")
    _check_undirected(g)
    co = complement(g)
    solve = cluster_editing if p_is_parameter else cluster_editing_free_l
    sol = solve(co, k, p, threads, stats)
    if sol is None:
        return None
    # an edge added in the complement is one deleted here, and vice versa
    return EditSet(sol.edits.deletions, sol.edits.additions)


# -- multipartite ----------------------------------------------------------------

@functools.lru_cache(maxsize=1 << 16)
def _partite_cost(block: Graph, p: int, k: int) -> tuple[int, tuple[tuple[int, ...], ...] | None]:
    """Fewest edits making ``block`` complete p-partite (BIG beyond k) and its parts."""
    if p == 1:
        # an edgeless component is a single vertex
        return (0, ((1,),)) if block.n == 1 else (BIG, None)
    cost, parts = min_cluster_cost(complement(block), k, p)
    if cost > k:
        return BIG, None
    return cost, tuple(tuple(b) for b in parts)


def _twin_classes(g: Graph) -> dict[int, tuple[int, ...]]:
    by_nbhd: dict[tuple[int, ...], list[int]] = {}
    for v in g.vertices:
        by_nbhd.setdefault(g.neighbors(v), []).append(v)
    return {v: tuple(group) for group in by_nbhd.values() for v in group}


def _placements(left: list[int], r: int, new: int):
    """Assign every leftover vertex to one of r identified blocks or to exactly ``new``
    fresh blocks, fresh blocks numbered in order of first use."""
    out = [0] * len(left)

    def rec(i, used):
        if len(left) - i < new - used:
            return
        if i == len(left):
            if used == new:
                yield list(out)
            return
        for b in range(r + min(used + 1, new)):
            out[i] = b
            yield from rec(i + 1, max(used, b - r + 1))

    yield from rec(0, 0)


@functools.lru_cache(maxsize=64)
def _equivalence(g: Graph) -> tuple[tuple[int, ...], dict[int, tuple[int, ...]]]:
    """Per vertex (0-based) bitmask of vertices equivalent to it: adjacent, or
    sharing the same nonempty neighborhood; plus the twin classes."""
    twins = _twin_classes(g)
    eq = []
    for v in g.vertices:
        m = 0
        for u in g.neighbors(v):
            m |= 1 << (u - 1)
        if g.neighbors(v):
            for u in twins[v]:
                if u != v:
                    m |= 1 << (u - 1)
        eq.append(m)
    return tuple(eq), twins


@functools.lru_cache(maxsize=1 << 15)
def _identify(g: Graph, orange: int) -> list[tuple[int, list[int]]] | None:
    eq, twins = _equivalence(g)
    reps, seen = [], 0
    for i in range(g.n):
        if not orange >> i & 1 or seen >> i & 1:
            continue
        # closure of the class of i inside the orange set
        cls = frontier = 1 << i
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= eq[low.bit_length() - 1]
                f ^= low
            frontier = nxt & orange & ~cls
            cls |= frontier
        seen |= cls
        reps.append(i + 1)
    out, taken = [], set()
    for d in reps:
        block = {d} if not g.neighbors(d) else set(g.neighbors(d)) | set(twins[d])
        if block & taken:
            return None
        taken |= block
        out.append((d, sorted(block)))
    return out


class _Shared:
    """Work that depends on the graph and budget but not on the parts sequence."""

    def __init__(self, g: Graph, k: int):
        self.g, self.k = g, k
        self.twins = _equivalence(g)[1]
        self.adj = [sum(1 << (u - 1) for u in g.neighbors(v)) for v in g.vertices]
        self.edges: dict[int, int] = {}
        self.costs: dict[tuple[int, int], int] = {}
        self.layouts: dict[tuple, list[tuple[int, list[int]]]] = {}

    def inner(self, mask: int) -> int:
        if mask not in self.edges:
            self.edges[mask] = sum(bin(self.adj[i] & mask).count("1") for i in range(self.g.n) if mask >> i & 1) // 2
        return self.edges[mask]

    def cost(self, mask: int, p: int) -> int:
        key = (mask, p)
        if key not in self.costs:
            sub = self.g.induced([i + 1 for i in range(self.g.n) if mask >> i & 1])[0]
            self.costs[key] = _partite_cost(sub, p, self.k)[0]
        return self.costs[key]

    def layout(self, found, ell: int) -> list[tuple[int, list[int]]]:
        """Candidate final partitions (as block masks) for this identification and
        ``ell`` blocks, in search order, with their count of edges between blocks."""
        key = (tuple((d, tuple(b)) for d, b in found), ell)
        if key not in self.layouts:
            self.layouts[key] = list(self._layouts(found, ell))
        return self.layouts[key]

    def _layouts(self, found, ell):
        g, k = self.g, self.k
        loose = sorted(set(g.vertices) - {v for _, b in found for v in b})
        if len(loose) > 2 * k:
            return
        # twins of a representative are interchangeable: moving q of them out of
        # its block can always be taken to mean the q largest
        movable = [[v for v in self.twins[d] if v != d] if g.neighbors(d) else [] for d, _ in found]
        spare = 2 * k - len(loose)
        r = len(found)
        for qs in itertools.product(*(range(min(len(m), spare) + 1) for m in movable)):
            if sum(qs) > spare:
                continue
            base, left = [], list(loose)
            for (_, b), m, q in zip(found, movable, qs):
                out = m[len(m) - q:]
                base.append(sum(1 << (v - 1) for v in b if v not in out))
                left += out
            left.sort()
            base += [0] * (ell - r)
            for assign in _placements(left, r, ell - r):
                final = list(base)
                for v, blk in zip(left, assign):
                    final[blk] |= 1 << (v - 1)
                between = g.m - sum(self.inner(mask) for mask in final)
                if between <= k:
                    yield between, final


@functools.lru_cache(maxsize=256)
def _shared(g: Graph, k: int) -> _Shared:
    return _Shared(g, k)


class _Multipartite:
    def __init__(self, g: Graph, k: int, parts: Sequence[int]):
        self.g, self.k = g, k
        self.parts = tuple(parts)
        self.orders = sorted(set(itertools.permutations(self.parts)))
        self.shared = _shared(g, k)
        self._memo: dict[tuple, object] = {}

    def orange_masks(self, tables: np.ndarray) -> list[int]:
        n = tables.shape[1]
        if n <= 62:
            weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
            return [int(x) for x in (tables == 2).astype(np.int64) @ weights]
        return [sum(1 << int(i) for i in np.flatnonzero(row == 2)) for row in tables]

    def solve(self, table) -> tuple[list[list[int]], tuple[int, ...]] | None:
        return self.solve_mask(self.orange_masks(np.asarray(table)[None, :])[0])

    def solve_mask(self, orange: int) -> tuple[list[list[int]], tuple[int, ...]] | None:
        found = _identify(self.g, orange)
        if found is None or len(found) > len(self.parts):
            return None
        key = tuple(d for d, _ in found)
        if key not in self._memo:
            self._memo[key] = self._solve(found)
        return self._memo[key]

    def _solve(self, found):
        k, sh = self.k, self.shared
        for between, final in sh.layout(found, len(self.parts)):
            for order in self.orders:
                total = between
                for mask, p in zip(final, order):
                    total += sh.cost(mask, p)
                    if total > k:
                        break
                if total <= k:
                    return [[i + 1 for i in range(self.g.n) if mask >> i & 1] for mask in final], order
        return None


def multipartite_cluster_editing(g: Graph, k: int, parts: Sequence[int], threads: int | None = None,
                                 stats: Stats | None = None) -> ClusterSolution | None:
    """At most ``k`` edits leaving components that are complete p_1-, ..., p_l-partite."""
    parts = tuple(int(p) for p in parts)
    if k < 0 or not parts or min(parts) < 1:
        raise ParameterError("multipartite editing needs k >= 0 and a nonempty list of parts >= 1")
    _check_undirected(g)
    stats = stats if stats is not None else Stats()
    # a complete p-partite component needs at least p vertices
    if sum(parts) > g.n:
        return None
    search = _Multipartite(g, k, parts)
    params = clamped_params(g.n, 2 * k + len(parts), 2)
    stats.family_size = params.size

    def evaluate(tables):
        ok = np.zeros(len(tables), dtype=bool)
        for i, orange in enumerate(search.orange_masks(tables)):
            if search.solve_mask(orange) is not None:
                ok[i] = True
                break
        return ok

    hit = first_success(family_chunks(params), evaluate, stats, threads)
    if hit is None:
        return None
    blocks, order = search.solve(hit.table)
    target = set()
    for block, p in zip(blocks, order):
        sub, keep = g.induced(block)
        _, groups = _partite_cost(sub, p, k)
        side = {keep[v - 1]: i for i, grp in enumerate(groups) for v in grp}
        target |= {(u, v) for u, v in itertools.combinations(block, 2) if side[u] != side[v]}
    E = set(g.edges)
    edits = EditSet(frozenset(target - E), frozenset(E - target))
    return ClusterSolution(edits, _canonical_blocks(blocks))
