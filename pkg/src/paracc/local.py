"""Scattered centers with locally checkable balls in degree-bounded graphs.

A coloring succeeds when, for every color i <= k, some center whose predicate
holds sees only color i on its whole r-ball. Balls of different colors are
disjoint, which for undirected graphs is the same as centers at distance > 2r.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._accel import kernel, prange
from .errors import ParameterError
from .graph import Graph, ball
from .runner import Stats, clamped_params, family_chunks, first_success

Predicate = Callable[[Graph, int], bool]


@dataclass(frozen=True)
class BallsWitness:
    centers: list[int]
    radius: int


def ball_size_bound(max_degree: int, r: int) -> int:
    d = max_degree
    if d <= 1:
        return 2
    if d == 2:
        return 2 * r + 1
    return 1 + d * ((d - 1) ** r - 1) // (d - 2)


@kernel()
def _balls_eval(table, k, ok, ptr, members, found):
    for i in range(k):
        found[i] = -1
    hit = 0
    for v in range(len(ok)):
        if not ok[v]:
            continue
        col = table[v] - 1
        if col >= k or found[col] >= 0:
            continue
        mono = True
        for j in range(ptr[v], ptr[v + 1]):
            if table[members[j]] - 1 != col:
                mono = False
                break
        if mono:
            found[col] = v
            hit += 1
            if hit == k:
                return True
    return False


@kernel(parallel=True)
def _balls_batch(tables, k, ok, ptr, members):
    out = np.zeros(tables.shape[0], dtype=np.bool_)
    for row in prange(tables.shape[0]):
        found = np.empty(k, dtype=np.int64)
        out[row] = _balls_eval(tables[row], k, ok, ptr, members, found)
    return out


def scattered_balls(g: Graph, k: int, r: int, pred: Predicate, threads: int | None = None,
                    stats: Stats | None = None) -> BallsWitness | None:
    """``pred(ball_graph, center)`` receives the induced ball (1-based, renumbered) and the center's new index."""
    if r < 0:
        raise ParameterError("radius must be >= 0")
    if k < 1:
        raise ParameterError("center count must be >= 1")
    if g.directed:
        raise ParameterError("scattered balls need an undirected graph")
    stats = stats if stats is not None else Stats()
    if k > g.n:
        return None
    ok = np.zeros(g.n, dtype=np.bool_)
    ptr = np.zeros(g.n + 1, dtype=np.int64)
    flat: list[int] = []
    for v in g.vertices:
        sub, keep = ball(g, v, r)
        ok[v - 1] = bool(pred(sub, keep.index(v) + 1))
        flat += [u - 1 for u in keep]
        ptr[v] = len(flat)
    members = np.array(flat, dtype=np.int64)
    M = ball_size_bound(g.max_degree(), r)
    params = clamped_params(g.n, M * k, k + 1)
    stats.family_size = params.size
    stats.extra["ball_bound"] = M
    hit = first_success(family_chunks(params), lambda t: _balls_batch(t, k, ok, ptr, members), stats, threads)
    if hit is None:
        return None
    found = np.empty(k, dtype=np.int64)
    assert _balls_eval(hit.table, k, ok, ptr, members, found)
    return BallsWitness(sorted(int(v) + 1 for v in found), r)

