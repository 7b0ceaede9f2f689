"""Color-coded embedding of a tree-decomposed pattern into a host graph.

Each pattern vertex owns one color. For a fixed coloring of the host, a bag
tuple is a choice of host vertex per bag vertex drawn from that vertex's color
class; it survives at a node when it is a homomorphism on the bag and every
child holds a surviving tuple agreeing with it on the shared bag vertices.
Nodes are processed level by level from the leaves, so the number of
sequential phases equals the number of decomposition levels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ._accel import kernel, prange
from .errors import GuardError, ParameterError
from .graph import (
    Graph,
    PatternSpec,
    TreeDecomposition,
    anchored_path_spec,
    build_pattern,
    k2,
    path_graph,
    require_valid,
)
from .runner import Stats, clamped_params, exhaustive_chunks, family_chunks, first_success

EXHAUSTIVE_HOST_LIMIT = 10


@dataclass(frozen=True)
class Embedding:
    assignment: dict[int, int]

    def image(self) -> list[int]:
        return [self.assignment[h] for h in sorted(self.assignment)]


@dataclass
class EmbedPlan:
    """Array form of a decomposed pattern, ready for the DP kernel."""

    order: np.ndarray
    bag: np.ndarray
    bsize: np.ndarray
    ch_ptr: np.ndarray
    ch_idx: np.ndarray
    sh_c: np.ndarray
    sh_p: np.ndarray
    nsh: np.ndarray
    be: np.ndarray
    nbe: np.ndarray
    anchor: np.ndarray
    height: np.ndarray
    levels: int
    pattern_n: int


def make_plan(h: Graph, td: TreeDecomposition, anchors: Mapping[int, int] | None, host_n: int) -> EmbedPlan:
    N = td.node_count
    W = max(1, max(len(b) for b in td.bags))
    height = td.node_height
    # level-synchronous order: all nodes of height 0, then height 1, ...
    order = np.array(sorted(range(N), key=lambda x: (height[x], x)), dtype=np.int64)
    bag = np.full((N, W), -1, dtype=np.int64)
    bsize = np.zeros(N, dtype=np.int64)
    for x, b in enumerate(td.bags):
        bsize[x] = len(b)
        bag[x, : len(b)] = [v - 1 for v in b]
    ch_ptr = np.zeros(N + 1, dtype=np.int64)
    flat = []
    for x in range(N):
        flat += list(td.children[x])
        ch_ptr[x + 1] = len(flat)
    ch_idx = np.array(flat, dtype=np.int64) if flat else np.zeros(1, dtype=np.int64)
    sh_c = np.full((N, W), -1, dtype=np.int64)
    sh_p = np.full((N, W), -1, dtype=np.int64)
    nsh = np.zeros(N, dtype=np.int64)
    for x, p in enumerate(td.parent):
        if p is None:
            continue
        shared = sorted(set(td.bags[x]) & set(td.bags[p]))
        nsh[x] = len(shared)
        for j, v in enumerate(shared):
            sh_c[x, j] = td.bags[x].index(v)
            sh_p[x, j] = td.bags[p].index(v)
    if host_n > 1 and host_n ** int(nsh.max(initial=0)) >= 2**62:
        raise GuardError("host too large for the packed key encoding of shared bag vertices")
    E = max(1, W * (W - 1))
    be = np.zeros((N, E, 2), dtype=np.int64)
    nbe = np.zeros(N, dtype=np.int64)
    for x, b in enumerate(td.bags):
        pos = {v: i for i, v in enumerate(b)}
        for u, v in h.sorted_edges():
            if u in pos and v in pos:
                be[x, nbe[x]] = (pos[u], pos[v])
                nbe[x] += 1
    anchor = np.full(max(h.n, 1), -1, dtype=np.int64)
    for hv, gv in (anchors or {}).items():
        anchor[hv - 1] = gv - 1
    return EmbedPlan(order, bag, bsize, ch_ptr, ch_idx, sh_c, sh_p, nsh, be, nbe, anchor,
                     np.array(height, dtype=np.int64), td.levels, h.n)


@kernel()
def _embed_eval(table, adj, hn, order, bag, bsize, ch_ptr, ch_idx, sh_c, sh_p, nsh, be, nbe, anchor,
                height, want, assign, checks, phases):
    n = table.shape[0]
    N = order.shape[0]
    W = bag.shape[1]
    cls = np.empty((hn, n), dtype=np.int64)
    ncls = np.zeros(hn, dtype=np.int64)
    for v in range(n):
        hv = table[v] - 1
        if hv < 0 or hv >= hn:
            continue
        if anchor[hv] >= 0 and anchor[hv] != v:
            continue
        cls[hv, ncls[hv]] = v
        ncls[hv] += 1
    for hv in range(hn):
        if ncls[hv] == 0:
            return False
    cap = np.zeros(N, dtype=np.int64)
    off = np.zeros(N + 1, dtype=np.int64)
    for x in range(N):
        c = 1
        for j in range(bsize[x]):
            c *= ncls[bag[x, j]]
        cap[x] = c
        off[x + 1] = off[x] + c
    tuples = np.empty((off[N], W), dtype=np.int64)
    keys = np.empty(off[N], dtype=np.int64)
    count = np.zeros(N, dtype=np.int64)
    idx = np.zeros(W, dtype=np.int64)
    t = np.zeros(W, dtype=np.int64)
    for oi in range(N):
        x = order[oi]
        if oi == 0 or height[x] != height[order[oi - 1]]:
            phases[0] += 1
        b = bsize[x]
        for j in range(b):
            idx[j] = 0
        remaining = cap[x]
        while remaining > 0:
            remaining -= 1
            for j in range(b):
                t[j] = cls[bag[x, j], idx[j]]
            checks[x] += 1
            good = True
            for e in range(nbe[x]):
                if not adj[t[be[x, e, 0]], t[be[x, e, 1]]]:
                    good = False
                    break
            if good:
                for ci in range(ch_ptr[x], ch_ptr[x + 1]):
                    c = ch_idx[ci]
                    key = 0
                    mult = 1
                    for j in range(nsh[c]):
                        key += t[sh_p[c, j]] * mult
                        mult *= n
                    lo = off[c]
                    hi = off[c] + count[c]
                    pos = lo + np.searchsorted(keys[lo:hi], key)
                    if pos >= hi or keys[pos] != key:
                        good = False
                        break
            if good:
                slot = off[x] + count[x]
                key = 0
                mult = 1
                for j in range(nsh[x]):
                    key += t[sh_c[x, j]] * mult
                    mult *= n
                for j in range(b):
                    tuples[slot, j] = t[j]
                keys[slot] = key
                count[x] += 1
            # odometer, last bag position fastest: lexicographic tuple order
            j = b - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < ncls[bag[x, j]]:
                    break
                idx[j] = 0
                j -= 1
        if count[x] == 0:
            return False
        keys[off[x]:off[x] + count[x]] = np.sort(keys[off[x]:off[x] + count[x]])
    if want:
        chosen = np.full(N, -1, dtype=np.int64)
        root = order[N - 1]
        chosen[root] = off[root]
        for oi in range(N - 1, -1, -1):
            x = order[oi]
            s = chosen[x]
            for j in range(bsize[x]):
                assign[bag[x, j]] = tuples[s, j]
            for ci in range(ch_ptr[x], ch_ptr[x + 1]):
                c = ch_idx[ci]
                for r in range(off[c], off[c] + count[c]):
                    agree = True
                    for j in range(nsh[c]):
                        if tuples[r, sh_c[c, j]] != tuples[s, sh_p[c, j]]:
                            agree = False
                            break
                    if agree:
                        chosen[c] = r
                        break
    return True


@kernel(parallel=True)
def _embed_batch(tables, adj, hn, order, bag, bsize, ch_ptr, ch_idx, sh_c, sh_p, nsh, be, nbe, anchor, height):
    B = tables.shape[0]
    ok = np.zeros(B, dtype=np.bool_)
    for i in prange(B):
        assign = np.zeros(1, dtype=np.int64)
        checks = np.zeros(order.shape[0], dtype=np.int64)
        phases = np.zeros(1, dtype=np.int64)
        ok[i] = _embed_eval(tables[i], adj, hn, order, bag, bsize, ch_ptr, ch_idx, sh_c, sh_p, nsh,
                            be, nbe, anchor, height, False, assign, checks, phases)
    return ok


def _plan_args(plan: EmbedPlan):
    return (plan.order, plan.bag, plan.bsize, plan.ch_ptr, plan.ch_idx, plan.sh_c, plan.sh_p,
            plan.nsh, plan.be, plan.nbe, plan.anchor, plan.height)


def evaluate_coloring(plan: EmbedPlan, g: Graph, table: np.ndarray, want: bool = True):
    """Run the DP for one coloring.

    Returns ``(success, assignment or None, counters)`` where ``counters`` has
    per-node tuple ``checks`` and the number of sequential level ``phases``."""
    assign = np.full(max(plan.pattern_n, 1), -1, dtype=np.int64)
    checks = np.zeros(len(plan.order), dtype=np.int64)
    phases = np.zeros(1, dtype=np.int64)
    ok = _embed_eval(np.asarray(table, dtype=np.int16), g.adjacency, plan.pattern_n, *_plan_args(plan),
                     want, assign, checks, phases)
    counters = {"checks": checks, "phases": int(phases[0])}
    if not ok:
        return False, None, counters
    return True, {h + 1: int(assign[h]) + 1 for h in range(plan.pattern_n)}, counters


def embed(
    h: Graph,
    td: TreeDecomposition,
    g: Graph,
    anchors: Mapping[int, int] | None = None,
    engine: str = "colorcode",
    threads: int | None = None,
    multiplier: int = 1,
    stats: Stats | None = None,
) -> Embedding | None:
    """Find an injective homomorphism of ``h`` into ``g``, or return None."""
    require_valid(h, td)
    anchors = dict(anchors or {})
    for hv, gv in anchors.items():
        if not 1 <= hv <= h.n:
            raise ParameterError(f"anchor on missing pattern vertex {hv}")
        if not 1 <= gv <= g.n:
            raise ParameterError(f"anchor targets missing host vertex {gv}")
    if len(set(anchors.values())) != len(anchors):
        raise ParameterError("anchor targets must be distinct host vertices")
    if h.directed and not g.directed:
        raise ParameterError("directed pattern needs a directed host")
    if g.directed and not h.directed and h.m:
        raise ParameterError("undirected pattern cannot be embedded into a directed host")
    stats = stats if stats is not None else Stats()
    if h.n == 0:
        return Embedding({})
    if h.n > g.n:
        return None
    hn = h.n
    plan = make_plan(h, td, anchors, g.n)
    if engine == "colorcode":
        params = clamped_params(g.n, hn, hn, multiplier)
        stats.family_size = params.size
        chunks = family_chunks(params)
    elif engine == "exhaustive":
        if g.n > EXHAUSTIVE_HOST_LIMIT:
            raise GuardError(f"exhaustive engine limited to hosts with <= {EXHAUSTIVE_HOST_LIMIT} vertices")
        stats.family_size = hn**g.n
        chunks = exhaustive_chunks(g.n, hn)
    else:
        raise ParameterError(f"unknown engine {engine!r}")
    adj = g.adjacency
    args = _plan_args(plan)

    def evaluate(tables):
        return _embed_batch(tables, adj, hn, *args)

    hit = first_success(chunks, evaluate, stats, threads)
    if hit is None:
        return None
    ok, assignment, _ = evaluate_coloring(plan, g, hit.table)
    assert ok
    return Embedding(assignment)


def distance(g: Graph, s: int, t: int, d: int, threads: int | None = None, stats: Stats | None = None) -> bool:
    """Is there a path of length <= d from s to t (respecting arc directions)?"""
    if d < 0:
        raise ParameterError("distance bound must be >= 0")
    for v in (s, t):
        if not 1 <= v <= g.n:
            raise ParameterError(f"vertex {v} not in graph")
    if s == t:
        return True
    for j in range(1, min(d, g.n - 1) + 1):
        h, td = build_pattern(anchored_path_spec(j + 1, s, t, directed=g.directed))
        if embed(h, td, g, {1: s, j + 1: t}, threads=threads, stats=stats) is not None:
            return True
    return False


def k_path(g: Graph, k: int, threads: int | None = None, stats: Stats | None = None) -> bool:
    if k < 1:
        raise ParameterError("path vertex count must be >= 1")
    h, td = build_pattern(PatternSpec("paths", k=1, l=k, directed=g.directed))
    return embed(h, td, g, threads=threads, stats=stats) is not None


def matching(g: Graph, k: int, threads: int | None = None, stats: Stats | None = None) -> bool:
    if k < 1:
        raise ParameterError("matching size must be >= 1")
    if g.directed:
        raise ParameterError("matching is defined on undirected graphs")
    h, td = build_pattern(PatternSpec("copies", k=k, graphs=(k2(),)))
    return embed(h, td, g, threads=threads, stats=stats) is not None


def path_pattern(vertices: int) -> tuple[Graph, TreeDecomposition]:
    return build_pattern(PatternSpec("paths", k=1, l=vertices))


