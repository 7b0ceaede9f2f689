"""Separating a small vertex set X from the rest by at most k vertices.

Under a blue/orange coloring, blue (color 1) components are candidate parts
of X and their orange neighbors the separator. A component larger than l is
never useful, so sizes are all that matter once components are labelled.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import kernel, prange
from .errors import ParameterError
from .graph import Graph
from .runner import Stats, clamped_params, family_chunks, first_success


@dataclass(frozen=True)
class CutWitness:
    X: frozenset[int]
    S: frozenset[int]
    Y: frozenset[int]


@kernel()
def _cut_eval(table, nb_ptr, nb, l, k, terminal, connected, comp, stack, size, first, bnd, stamp, inx):
    n = len(table)
    for v in range(n):
        comp[v] = -1
        stamp[v] = -1
        inx[v] = False
    nc = 0
    for r in range(n):
        if table[r] != 1 or comp[r] >= 0:
            continue
        comp[r] = nc
        first[nc] = r
        cnt = 0
        top = 1
        stack[0] = r
        while top:
            top -= 1
            x = stack[top]
            cnt += 1
            for j in range(nb_ptr[x], nb_ptr[x + 1]):
                y = nb[j]
                if table[y] == 1:
                    if comp[y] < 0:
                        comp[y] = nc
                        stack[top] = y
                        top += 1
        size[nc] = cnt
        nc += 1
    # boundary sizes; stamp[v] remembers the last component that counted v
    for c in range(nc):
        bnd[c] = 0
    for x in range(n):
        c = comp[x]
        if c < 0 or size[c] > l:
            continue
        for j in range(nb_ptr[x], nb_ptr[x + 1]):
            y = nb[j]
            if table[y] != 1 and stamp[y] != c:
                stamp[y] = c
                bnd[c] += 1
    tc = -1 if terminal < 0 else comp[terminal]
    pick_a = -1
    pick_b = -1
    for c in range(nc):
        if tc >= 0 and c != tc:
            continue
        if terminal >= 0 and tc < 0:
            break
        if bnd[c] > k:
            continue
        if connected:
            if size[c] == l:
                pick_a = c
                break
        elif 2 <= size[c] <= l:
            pick_a = c
            break
    if pick_a < 0 and not connected:
        # a lone blue vertex joined with one more blue component
        for s in range(nc):
            if size[s] != 1 or (terminal >= 0 and s != tc):
                continue
            for v in range(n):
                stamp[v] = -1
            x = first[s]
            base = 0
            for j in range(nb_ptr[x], nb_ptr[x + 1]):
                stamp[nb[j]] = s
                base += 1
            if base > k:
                continue
            for c in range(nc):
                if c == s or size[c] + 1 > l:
                    continue
                extra = 0
                for y in range(n):
                    if comp[y] != c:
                        continue
                    for j in range(nb_ptr[y], nb_ptr[y + 1]):
                        z = nb[j]
                        if table[z] != 1 and stamp[z] != s and stamp[z] != n + c:
                            stamp[z] = n + c
                            extra += 1
                # undo this component's marks before trying the next one
                for y in range(n):
                    if stamp[y] == n + c:
                        stamp[y] = -1
                if base + extra <= k:
                    pick_a = s
                    pick_b = c
                    break
            if pick_a >= 0:
                break
    if pick_a < 0:
        return False
    for v in range(n):
        if comp[v] == pick_a or (pick_b >= 0 and comp[v] == pick_b):
            inx[v] = True
    return True


@kernel(parallel=True)
def _cut_batch(tables, nb_ptr, nb, l, k, terminal, connected):
    rows, n = tables.shape
    out = np.zeros(rows, dtype=np.bool_)
    for row in prange(rows):
        comp = np.empty(n, dtype=np.int64)
        stack = np.empty(n, dtype=np.int64)
        size = np.empty(n, dtype=np.int64)
        first = np.empty(n, dtype=np.int64)
        bnd = np.empty(n, dtype=np.int64)
        stamp = np.empty(n, dtype=np.int64)
        inx = np.empty(n, dtype=np.bool_)
        out[row] = _cut_eval(tables[row], nb_ptr, nb, l, k, terminal, connected, comp, stack, size, first,
                             bnd, stamp, inx)
    return out


def _csr(g: Graph):
    ptr = np.zeros(g.n + 1, dtype=np.int64)
    flat: list[int] = []
    for v in g.vertices:
        flat += [u - 1 for u in g.undirected_neighbors(v)]
        ptr[v] = len(flat)
    return ptr, np.array(flat or [0], dtype=np.int64)


def _solve(g: Graph, k: int, l: int, terminal: int | None, connected: bool, threads, stats) -> CutWitness | None:
    if terminal is not None and not 1 <= terminal <= g.n:
        raise ParameterError(f"terminal {terminal} not a vertex")
    if g.directed:
        raise ParameterError("cutting needs an undirected graph")
    stats = stats if stats is not None else Stats()
    if g.n == 0 or (connected and l > g.n) or (not connected and g.n < 2):
        return None
    ptr, nb = _csr(g)
    params = clamped_params(g.n, k + l, 2)
    stats.family_size = params.size
    term = -1 if terminal is None else terminal - 1

    hit = first_success(family_chunks(params), lambda tb: _cut_batch(tb, ptr, nb, l, k, term, connected),
                        stats, threads)
    if hit is None:
        return None
    n = g.n
    bufs = [np.empty(n, dtype=np.int64) for _ in range(6)]
    inx = np.empty(n, dtype=np.bool_)
    assert _cut_eval(hit.table, ptr, nb, l, k, term, connected, *bufs, inx)
    X = frozenset(int(v) + 1 for v in np.flatnonzero(inx))
    S = frozenset(u for x in X for u in g.undirected_neighbors(x)) - X
    return CutWitness(X, S, frozenset(g.vertices) - X - S)


def cut_connected(g: Graph, k: int, l: int, terminal: int | None = None, threads: int | None = None,
                  stats: Stats | None = None) -> CutWitness | None:
    """Connected X with exactly ``l`` vertices and at most ``k`` neighbors outside."""
    if k < 0 or l < 1:
        raise ParameterError("cut needs k >= 0 and l >= 1")
    return _solve(g, k, l, terminal, True, threads, stats)


def cut_at_most(g: Graph, k: int, l: int, terminal: int | None = None, threads: int | None = None,
                stats: Stats | None = None) -> CutWitness | None:
    """X with 1 < |X| <= ``l``, not necessarily connected, separated by at most ``k`` vertices."""
    if k < 0 or l < 2:
        raise ParameterError("cut-atmost needs k >= 0 and l >= 2")
    return _solve(g, k, l, terminal, False, threads, stats)
