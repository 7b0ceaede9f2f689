"""Brute-force reference answers.

Everything here is plain enumeration over the Graph type; no coloring family
or solver module is imported. Witnesses are returned as plain dicts shaped
like the JSON witness objects. Instances beyond the guards are refused.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from typing import Callable, Mapping, Sequence

from .errors import GuardError, ParameterError
from .graph import Graph

HOST_LIMIT = 10
PARAM_LIMIT = 4
EDIT_LIMIT = 3


def _guard_host(g: Graph) -> None:
    if g.n > HOST_LIMIT:
        raise GuardError(f"oracle limited to hosts with <= {HOST_LIMIT} vertices (got {g.n})")


def _guard_param(**values: int) -> None:
    for name, v in values.items():
        if v is not None and v > PARAM_LIMIT:
            raise GuardError(f"oracle limited to {name} <= {PARAM_LIMIT} (got {v})")


def _guard_edits(k: int) -> None:
    if k > EDIT_LIMIT:
        raise GuardError(f"oracle limited to edit budget <= {EDIT_LIMIT} (got {k})")


# -- embeddings ------------------------------------------------------------------

def oracle_embed(h: Graph, g: Graph, anchors: Mapping[int, int] | None = None) -> dict | None:
    """Lexicographically first injective homomorphism (backtracking over all injective maps)."""
    _guard_host(g)
    anchors = dict(anchors or {})
    assign: dict[int, int] = {}
    used: set[int] = set()

    def fits(hv: int, gv: int) -> bool:
        if hv in anchors and anchors[hv] != gv:
            return False
        for hu, gu in assign.items():
            if h.has_edge(hu, hv) and not g.has_edge(gu, gv):
                return False
            if h.has_edge(hv, hu) and not g.has_edge(gv, gu):
                return False
        return True

    def rec(hv: int) -> bool:
        if hv > h.n:
            return True
        for gv in g.vertices:
            if gv not in used and fits(hv, gv):
                assign[hv] = gv
                used.add(gv)
                if rec(hv + 1):
                    return True
                del assign[hv]
                used.discard(gv)
        return False

    return {"assignment": dict(assign)} if rec(1) else None


def _disjoint_union(parts: Sequence[Graph]) -> Graph:
    edges, off = [], 0
    for p in parts:
        edges += [(u + off, v + off) for u, v in p.edges]
        off += p.n
    return Graph.from_edges(off, edges)


def oracle_pack(g: Graph, components: Sequence[Graph]) -> dict | None:
    return oracle_embed(_disjoint_union(components), g)


def oracle_k_path(g: Graph, k: int) -> dict | None:
    _guard_param(k=k)
    return oracle_embed(Graph.from_edges(k, [(i, i + 1) for i in range(1, k)], g.directed), g)


def oracle_matching(g: Graph, k: int) -> dict | None:
    _guard_param(k=k)
    return oracle_pack(g, [Graph.from_edges(2, [(1, 2)])] * k)


def oracle_distance(g: Graph, s: int, t: int, d: int) -> bool:
    _guard_host(g)
    dist = {s: 0}
    q = deque([s])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist.get(t, d + 1) <= d


# -- covers ------------------------------------------------------------------------

def _covered(g: Graph, S) -> list[tuple[int, int]]:
    return sorted(e for e in g.edges if e[0] in S or e[1] in S)


def _cover_witness(g: Graph, S) -> dict:
    return {"vertices": sorted(S), "covered": [list(e) for e in _covered(g, set(S))]}


def oracle_vertex_cover(g: Graph, k: int) -> dict | None:
    _guard_host(g)
    _guard_param(k=k)
    for size in range(min(k, g.n) + 1):
        for S in itertools.combinations(g.vertices, size):
            if len(_covered(g, set(S))) == g.m:
                return _cover_witness(g, S)
    return None


def oracle_partial_vertex_cover(g: Graph, k: int, t: int) -> dict | None:
    _guard_host(g)
    _guard_param(k=k, t=t)
    for size in range(min(k, g.n) + 1):
        for S in itertools.combinations(g.vertices, size):
            if len(_covered(g, set(S))) >= t:
                return _cover_witness(g, S)
    return None


def oracle_exact_partial_vertex_cover(g: Graph, t: int) -> dict | None:
    _guard_host(g)
    _guard_param(t=t)
    for size in range(g.n + 1):
        for S in itertools.combinations(g.vertices, size):
            if len(_covered(g, set(S))) == t:
                return _cover_witness(g, S)
    return None


# -- edits ---------------------------------------------------------------------------

def _components(n: int, adj: list[int]) -> list[int]:
    seen, out = 0, []
    for r in range(n):
        if seen >> r & 1:
            continue
        comp = frontier = 1 << r
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def _parts(mask: int, adj: list[int]) -> int:
    """Number of parts if the induced graph on ``mask`` is complete multipartite, else 0."""
    verts = [i for i in range(mask.bit_length()) if mask >> i & 1]
    parts: list[int] = []
    for v in verts:
        for j, p in enumerate(parts):
            u = (p & -p).bit_length() - 1
            if not adj[v] >> u & 1:
                parts[j] |= 1 << v
                break
        else:
            parts.append(1 << v)
    for p in parts:
        for v in range(mask.bit_length()):
            if p >> v & 1 and adj[v] & p:
                return 0
        rest = mask & ~p
        for v in range(mask.bit_length()):
            if p >> v & 1 and adj[v] & rest != rest:
                return 0
    return len(parts)


def _signature(n: int, adj: list[int]) -> tuple:
    comps = _components(n, adj)
    kinds = tuple(sorted(_parts(c, adj) for c in comps))
    cliques = all(_parts(c, adj) == bin(c).count("1") for c in comps)
    whole = _parts((1 << n) - 1, adj) if n else 0
    return cliques, len(comps), whole, kinds


@functools.lru_cache(maxsize=4096)
def edit_profile(g: Graph) -> dict[tuple, tuple[int, tuple]]:
    """Signature of the edited graph -> (fewest edits, first such edit tuple), over all
    edit sets of size <= the edit guard."""
    _guard_host(g)
    n = g.n
    pairs = list(itertools.combinations(range(n), 2))
    base = [0] * n
    for u, v in g.edges:
        base[u - 1] |= 1 << (v - 1)
        base[v - 1] |= 1 << (u - 1)
    best: dict[tuple, tuple[int, tuple]] = {}
    for size in range(EDIT_LIMIT + 1):
        for combo in itertools.combinations(pairs, size):
            adj = list(base)
            for u, v in combo:
                adj[u] ^= 1 << v
                adj[v] ^= 1 << u
            sig = _signature(n, adj)
            if sig not in best:
                best[sig] = (size, combo)
    return best


def _edit_witness(g: Graph, combo, with_clusters: bool) -> dict:
    adds, dels = [], []
    for u, v in combo:
        (dels if g.has_edge(u + 1, v + 1) else adds).append([u + 1, v + 1])
    edits = {"additions": sorted(adds), "deletions": sorted(dels)}
    if not with_clusters:
        return edits
    E = (set(g.edges) | {tuple(e) for e in adds}) - {tuple(e) for e in dels}
    edited = Graph.from_edges(g.n, E)
    seen, clusters = set(), []
    for r in edited.vertices:
        if r in seen:
            continue
        comp, q = [r], deque([r])
        seen.add(r)
        while q:
            x = q.popleft()
            for y in edited.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    q.append(y)
        clusters.append(sorted(comp))
    return {"edits": edits, "clusters": sorted(clusters)}


def _best(g: Graph, k: int, accept: Callable[[tuple], bool], with_clusters: bool = True) -> dict | None:
    _guard_edits(k)
    hits = [(cost, combo) for sig, (cost, combo) in edit_profile(g).items() if cost <= k and accept(sig)]
    if not hits:
        return None
    return _edit_witness(g, min(hits)[1], with_clusters)


def oracle_cluster_editing(g: Graph, k: int, l: int) -> dict | None:
    return _best(g, k, lambda s: s[0] and s[1] == l)


def oracle_many_cluster_editing(g: Graph, k: int) -> dict | None:
    return _best(g, k, lambda s: s[0])


def oracle_p_partite_editing(g: Graph, k: int, p: int) -> dict | None:
    return _best(g, k, lambda s: s[2] == p, with_clusters=False)


def oracle_multipartite(g: Graph, k: int, parts: Sequence[int]) -> dict | None:
    want = tuple(sorted(parts))
    return _best(g, k, lambda s: s[3] == want)


# -- cuts ----------------------------------------------------------------------------

def _connected(g: Graph, X: set[int]) -> bool:
    start = min(X)
    seen, q = {start}, deque([start])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if y in X and y not in seen:
                seen.add(y)
                q.append(y)
    return seen == X


def oracle_cut(g: Graph, k: int, l: int, connected: bool, terminal: int | None = None) -> dict | None:
    _guard_host(g)
    _guard_param(k=k, l=l)
    sizes = [l] if connected else range(2, l + 1)
    for size in sizes:
        for combo in itertools.combinations(g.vertices, size):
            X = set(combo)
            if terminal is not None and terminal not in X:
                continue
            if connected and not _connected(g, X):
                continue
            S = {u for x in X for u in g.neighbors(x)} - X
            if len(S) <= k:
                Y = set(g.vertices) - X - S
                return {"X": sorted(X), "S": sorted(S), "Y": sorted(Y)}
    return None


# -- scattered balls -------------------------------------------------------------

def _ball(g: Graph, v: int, r: int) -> tuple[Graph, int]:
    dist = {v: 0}
    q = deque([v])
    while q:
        x = q.popleft()
        if dist[x] == r:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    keep = sorted(dist)
    sub, _ = g.induced(keep)
    return sub, keep.index(v) + 1


def oracle_scattered_balls(g: Graph, k: int, r: int, pred: Callable[[Graph, int], bool]) -> dict | None:
    _guard_host(g)
    _guard_param(k=k, r=r)
    good = [v for v in g.vertices if pred(*_ball(g, v, r))]
    far = {v: set(_ball_vertices(g, v, 2 * r)) for v in good}
    for combo in itertools.combinations(good, k):
        if all(b not in far[a] for a, b in itertools.combinations(combo, 2)):
            return {"centers": list(combo), "radius": r}
    return None


def _ball_vertices(g: Graph, v: int, r: int) -> list[int]:
    dist = {v: 0}
    q = deque([v])
    while q:
        x = q.popleft()
        if dist[x] == r:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return list(dist)


# -- dispatch ------------------------------------------------------------------------

def oracle_solve(instance: Mapping) -> tuple[bool, dict | None]:
    """Answer a tagged instance ``{"problem": name, "graph": Graph, ...params}``."""
    prob = instance.get("problem")
    g: Graph = instance["graph"]
    p = instance
    if prob == "emb":
        w = oracle_embed(p["pattern"], g, p.get("anchors"))
    elif prob == "pack":
        w = oracle_pack(g, p["components"])
    elif prob == "matching":
        w = oracle_matching(g, p["k"])
    elif prob == "path":
        w = oracle_k_path(g, p["k"])
    elif prob == "distance":
        ok = oracle_distance(g, p["s"], p["t"], p["d"])
        return ok, None
    elif prob == "vc":
        w = oracle_vertex_cover(g, p["k"])
    elif prob == "pvc":
        w = oracle_partial_vertex_cover(g, p["k"], p["t"])
    elif prob == "epvc":
        w = oracle_exact_partial_vertex_cover(g, p["t"])
    elif prob in ("cluster", "cluster-freel"):
        w = oracle_cluster_editing(g, p["k"], p["l"])
    elif prob == "many-cluster":
        w = oracle_many_cluster_editing(g, p["k"])
    elif prob == "ppartite":
        w = oracle_p_partite_editing(g, p["k"], p["p"])
    elif prob == "multipartite":
        w = oracle_multipartite(g, p["k"], p["parts"])
    elif prob == "cut":
        w = oracle_cut(g, p["k"], p["l"], True, p.get("terminal"))
    elif prob == "cut-atmost":
        w = oracle_cut(g, p["k"], p["l"], False, p.get("terminal"))
    elif prob == "balls":
        w = oracle_scattered_balls(g, p["k"], p["r"], p["pred"])
    else:
        raise ParameterError(f"oracle has no problem named {prob!r}")
    return w is not None, w
