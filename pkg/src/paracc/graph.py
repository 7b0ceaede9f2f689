"""Graphs, tree decompositions, pattern constructors, balls and complements.

Vertices are dense integers ``1..n``; input order is the canonical vertex order.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DecompositionError, GraphParseError, GuardError, ParameterError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[Edge] = frozenset()
    directed: bool = False
    labels: Mapping[int, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise ParameterError("vertex_count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParameterError(f"edge {(u, v)} references a vertex outside 1..{n}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            norm.add((u, v) if self.directed else (min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        out: list[list[int]] = [[] for _ in range(n + 1)]
        inc: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in sorted(norm):
            out[u].append(v)
            inc[v].append(u)
            if not self.directed:
                out[v].append(u)
                inc[u].append(v)
        object.__setattr__(self, "_out", tuple(tuple(sorted(a)) for a in out))
        object.__setattr__(self, "_in", tuple(tuple(sorted(a)) for a in inc))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], directed: bool = False, labels=None) -> "Graph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges), directed, dict(labels or {}))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Out-neighbors (all neighbors when undirected)."""
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def undirected_neighbors(self, v: int) -> tuple[int, ...]:
        if not self.directed:
            return self._out[v]
        return tuple(sorted(set(self._out[v]) | set(self._in[v])))

    def degree(self, v: int) -> int:
        return len(self.undirected_neighbors(v))

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        if self.directed:
            return (u, v) in self.edges
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @functools.cached_property
    def adjacency(self) -> np.ndarray:
        """Dense 0-based boolean adjacency matrix (row = tail for digraphs)."""
        a = np.zeros((self.n, self.n), dtype=np.bool_)
        for u, v in self.edges:
            a[u - 1, v - 1] = True
            if not self.directed:
                a[v - 1, u - 1] = True
        return a

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (kept in graph order) and the new->old map."""
        keep = sorted(set(vertices))
        new = {v: i + 1 for i, v in enumerate(keep)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        labels = {new[v]: lab for v, lab in self.labels.items() if v in new}
        return Graph.from_edges(len(keep), edges, self.directed, labels), keep

    def audit(self) -> bool:
        """Rebuild adjacency from the edge set and compare."""
        rebuilt = Graph(self.n, self.edges, self.directed)
        return rebuilt._out == self._out and rebuilt._in == self._in


# -- text format -------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse ``<n> <m> [directed]`` followed by ``m`` edge lines and an optional
    ``labels`` section; ``#`` lines are comments."""
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    labels: dict[int, str] = {}
    in_labels = False
    n = m = 0
    directed = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "directed"):
                raise GraphParseError("malformed header, expected '<n> <m> [directed]'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError("malformed header, expected integers", lineno) from None
            if n < 0 or m < 0:
                raise GraphParseError("malformed header, negative count", lineno)
            directed = len(parts) == 3
            header = lineno
            continue
        if parts == ["labels"]:
            if len(edges) != m:
                raise GraphParseError(f"expected {m} edges before labels, found {len(edges)}", lineno)
            in_labels = True
            continue
        if in_labels:
            if len(parts) != 2:
                raise GraphParseError("malformed label line, expected '<v> <label>'", lineno)
            try:
                v = int(parts[0])
            except ValueError:
                raise GraphParseError("malformed label vertex", lineno) from None
            if not 1 <= v <= n:
                raise GraphParseError(f"vertex {v} out of range 1..{n}", lineno)
            labels[v] = parts[1]
            continue
        if len(parts) != 2:
            raise GraphParseError("malformed edge line, expected '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("malformed edge line, expected integers", lineno) from None
        for x in (u, v):
            if not 1 <= x <= n:
                raise GraphParseError(f"vertex {x} out of range 1..{n}", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {u} {v}", lineno)
        if len(edges) >= m:
            raise GraphParseError(f"more than the declared {m} edges", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise GraphParseError("missing header", None)
    if len(edges) != m:
        raise GraphParseError(f"declared {m} edges but found {len(edges)}", None)
    return Graph.from_edges(n, edges, directed, labels)


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}" + (" directed" if g.directed else "")]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    if g.labels:
        lines.append("labels")
        lines += [f"{v} {g.labels[v]}" for v in sorted(g.labels)]
    return "\n".join(lines) + "\n"


# -- tree decompositions -----------------------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    parent: tuple[int | None, ...]
    bags: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.parent) != len(self.bags):
            raise DecompositionError("parent and bags differ in length")
        roots = [i for i, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise DecompositionError(f"expected exactly one root, found {len(roots)}")
        object.__setattr__(self, "bags", tuple(tuple(sorted(set(b))) for b in self.bags))
        # reject cycles in the parent relation
        for i in range(len(self.parent)):
            steps, j = 0, i
            while self.parent[j] is not None:
                j = self.parent[j]
                steps += 1
                if steps > len(self.parent):
                    raise DecompositionError("parent pointers contain a cycle")

    @property
    def node_count(self) -> int:
        return len(self.bags)

    @property
    def root(self) -> int:
        return self.parent.index(None)

    @functools.cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(i)
        return tuple(tuple(c) for c in ch)

    @functools.cached_property
    def node_height(self) -> tuple[int, ...]:
        """Edges on the longest downward path from each node to a leaf."""
        h = [0] * self.node_count
        for node in self.postorder():
            h[node] = max((h[c] + 1 for c in self.children[node]), default=0)
        return tuple(h)

    def postorder(self) -> list[int]:
        order, stack = [], [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            stack.append((node, True))
            for c in reversed(self.children[node]):
                stack.append((c, False))
        return order

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    @property
    def height(self) -> int:
        return self.node_height[self.root]

    @property
    def depth(self) -> int:
        return max(self.height, self.width)

    @property
    def levels(self) -> int:
        """Number of sequential bottom-up phases of a level-synchronous DP."""
        return self.height + 1


@dataclass(frozen=True)
class TDValidation:
    valid: bool
    width: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate_tree_decomposition(h: Graph, td: TreeDecomposition) -> TDValidation:
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 1 <= v <= h.n:
                return TDValidation(False, None, f"bag {i} references vertex {v} outside the graph")
    bag_sets = [set(b) for b in td.bags]
    for u, v in h.sorted_edges():
        if not any(u in b and v in b for b in bag_sets):
            return TDValidation(False, None, f"edge {{{u},{v}}} is not covered by any bag")
    for v in h.vertices:
        nodes = [i for i, b in enumerate(bag_sets) if v in b]
        if not nodes:
            return TDValidation(False, None, f"vertex {v} appears in no bag")
        # connected iff exactly one node of the occurrence set has its parent outside it
        tops = [i for i in nodes if td.parent[i] is None or v not in bag_sets[td.parent[i]]]
        if len(tops) != 1:
            return TDValidation(False, None, f"bags containing vertex {v} are not connected")
    return TDValidation(True, td.width)


def require_valid(h: Graph, td: TreeDecomposition) -> None:
    res = validate_tree_decomposition(h, td)
    if not res:
        raise DecompositionError(res.reason)


EXACT_TD_LIMIT = 8


def _elimination_width(n: int, adj: list[int]) -> tuple[int, list[int]]:
    """Exact treewidth by dynamic programming over eliminated vertex sets."""
    full = (1 << n) - 1

    def q_value(S: int, v: int) -> int:
        # vertices outside S+v reachable from v through S
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            x = stack.pop()
            nb = adj[x] & ~seen
            seen |= nb
            while nb:
                low = nb & -nb
                y = low.bit_length() - 1
                nb ^= low
                if S >> y & 1:
                    stack.append(y)
                else:
                    out |= low
        return bin(out).count("1")

    best = {0: -1}
    choice = {}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            S = 0
            for v in combo:
                S |= 1 << v
            val, arg = None, None
            for v in combo:
                rest = S & ~(1 << v)
                cand = max(best[rest], q_value(rest, v))
                if val is None or cand < val:
                    val, arg = cand, v
            best[S] = val
            choice[S] = arg
    order = []
    S = full
    while S:
        v = choice[S]
        order.append(v)
        S &= ~(1 << v)
    order.reverse()
    return max(best[full], 0), order


def _decomposition_from_order(h: Graph, order: list[int]) -> TreeDecomposition:
    """Bags {v} + later neighbours in the fill-in graph; parent is the earliest later neighbour."""
    n = h.n
    pos = {v: i for i, v in enumerate(order)}
    nbrs = {v: set(u for u in h.undirected_neighbors(v)) for v in h.vertices}
    bags, higher = {}, {}
    for v in order:
        later = {u for u in nbrs[v] if pos[u] > pos[v]}
        higher[v] = later
        bags[v] = tuple(sorted(later | {v}))
        for a in later:
            nbrs[a] |= later - {a}
    node_of = {v: i + 1 for i, v in enumerate(order)}
    parent: list[int | None] = [None] + [0] * n
    bag_list: list[tuple[int, ...]] = [()] + [bags[v] for v in order]
    for v in order:
        if higher[v]:
            parent[node_of[v]] = node_of[min(higher[v], key=pos.get)]
        else:
            parent[node_of[v]] = 0
    return _prune_root(TreeDecomposition(tuple(parent), tuple(bag_list)))


def _prune_root(td: TreeDecomposition) -> TreeDecomposition:
    """Drop an empty synthetic root when it has a single child."""
    r = td.root
    if td.bags[r] or len(td.children[r]) != 1:
        return td
    keep = [i for i in range(td.node_count) if i != r]
    remap = {old: new for new, old in enumerate(keep)}
    parent = tuple(None if td.parent[i] == r else remap[td.parent[i]] for i in keep)
    return TreeDecomposition(parent, tuple(td.bags[i] for i in keep))


def exact_tree_decomposition(h: Graph) -> TreeDecomposition:
    if h.n > EXACT_TD_LIMIT:
        raise GuardError(f"exact tree decomposition limited to {EXACT_TD_LIMIT} vertices")
    if h.n == 0:
        return TreeDecomposition((None,), ((),))
    adj = [0] * h.n
    for v in h.vertices:
        for u in h.undirected_neighbors(v):
            adj[v - 1] |= 1 << (u - 1)
    _, order = _elimination_width(h.n, adj)
    return _decomposition_from_order(h, [v + 1 for v in order])


def treewidth(h: Graph) -> int:
    return exact_tree_decomposition(h).width


# -- patterns ------------------------------------------------------------------

PATTERN_COMPONENT_LIMIT = 8


@dataclass(frozen=True)
class PatternSpec:
    """kind is one of: 'copies' (k copies of ``graphs[0]``), 'multiset' (one copy of each
    graph), 'cycles', 'paths', 'forest', 'anchored_path'."""

    kind: str
    k: int = 1
    l: int = 0
    graphs: tuple[Graph, ...] = ()
    anchors: Mapping[int, int] = field(default_factory=dict, compare=False)
    directed: bool = False


def k2() -> Graph:
    return Graph.from_edges(2, [(1, 2)])


def k3() -> Graph:
    return Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])


def path_graph(vertices: int, directed: bool = False) -> Graph:
    return Graph.from_edges(vertices, [(i, i + 1) for i in range(1, vertices)], directed)


def cycle_graph(length: int) -> Graph:
    return Graph.from_edges(length, [(i, i + 1) for i in range(1, length)] + [(length, 1)])


def complete_graph(size: int) -> Graph:
    return Graph.from_edges(size, itertools.combinations(range(1, size + 1), 2))


def _union(parts: Sequence[Graph], directed: bool = False) -> tuple[Graph, list[int]]:
    edges, offsets, off = [], [], 0
    for g in parts:
        offsets.append(off)
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph.from_edges(off, edges, directed), offsets


def _join(root_children: list[tuple[list[int | None], list[tuple[int, ...]]]]) -> TreeDecomposition:
    """Hang several rooted decompositions below a fresh root with an empty bag."""
    parent: list[int | None] = [None]
    bags: list[tuple[int, ...]] = [()]
    for sub_parent, sub_bags in root_children:
        base = len(bags)
        for p, b in zip(sub_parent, sub_bags):
            parent.append(0 if p is None else p + base)
            bags.append(b)
    return TreeDecomposition(tuple(parent), tuple(bags))


def _chain(bags: list[tuple[int, ...]]) -> tuple[list[int | None], list[tuple[int, ...]]]:
    return [None] + list(range(len(bags) - 1)), bags


def _forest_decomposition(g: Graph, offset: int = 0) -> list[tuple[list[int | None], list[tuple[int, ...]]]]:
    """Width-1 decompositions of each tree: bag {parent, v} below the parent's bag."""
    out, seen = [], set()
    for r in g.vertices:
        if r in seen:
            continue
        seen.add(r)
        node = {r: 0}
        parent: list[int | None] = [None]
        bags = [(r + offset,)]
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in g.undirected_neighbors(x):
                if y not in seen:
                    seen.add(y)
                    node[y] = len(bags)
                    parent.append(node[x])
                    bags.append((x + offset, y + offset))
                    queue.append(y)
        out.append((parent, bags))
    return out


def _is_forest(g: Graph) -> bool:
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def build_pattern(spec: PatternSpec) -> tuple[Graph, TreeDecomposition]:
    kind, k, l = spec.kind, spec.k, spec.l
    if k < 1:
        raise ParameterError("pattern copy count must be >= 1")
    if kind in ("copies", "multiset"):
        parts = list(spec.graphs) * k if kind == "copies" else list(spec.graphs)
        if not parts or (kind == "copies" and len(spec.graphs) != 1):
            raise ParameterError("copies needs exactly one graph, multiset at least one")
        for g in parts:
            if g.n > PATTERN_COMPONENT_LIMIT:
                raise ParameterError(f"pattern component with {g.n} vertices exceeds {PATTERN_COMPONENT_LIMIT}")
            if g.n == 0:
                raise ParameterError("pattern components must have at least one vertex")
        h, offsets = _union(parts)
        subs = [([None], [tuple(range(off + 1, off + g.n + 1))]) for g, off in zip(parts, offsets)]
        return h, _join(subs)
    if kind == "cycles":
        if l < 3:
            raise ParameterError("cycle length must be >= 3")
        h, offsets = _union([cycle_graph(l)] * k)
        subs = []
        for off in offsets:
            subs.append(_chain([(off + 1, off + i, off + i + 1) for i in range(2, l)]))
        return h, _join(subs)
    if kind in ("paths", "anchored_path"):
        if l < 1:
            raise ParameterError("path length (vertex count) must be >= 1")
        copies = 1 if kind == "anchored_path" else k
        h, offsets = _union([path_graph(l, spec.directed)] * copies, spec.directed)
        subs = []
        for off in offsets:
            if l == 1:
                subs.append(([None], [(off + 1,)]))
            else:
                subs.append(_chain([(off + i, off + i + 1) for i in range(1, l)]))
        td = _join(subs)
        return h, _prune_root(td)
    if kind == "forest":
        if len(spec.graphs) != 1:
            raise ParameterError("forest pattern needs exactly one graph")
        forest = spec.graphs[0]
        if not _is_forest(forest):
            raise ParameterError("forest pattern contains a cycle")
        subs = []
        comps = components(forest)
        for comp in comps:
            sub, keep = forest.induced(comp)
            if sub.n <= EXACT_TD_LIMIT:
                td = exact_tree_decomposition(sub)
                subs.append((list(td.parent), [tuple(keep[v - 1] for v in b) for b in td.bags]))
            else:
                sp, sb = _forest_decomposition(sub)[0]
                subs.append((sp, [tuple(keep[v - 1] for v in b) for b in sb]))
        return forest, _prune_root(_join(subs))
    raise ParameterError(f"unknown pattern kind {kind!r}")


def anchored_path_spec(vertices: int, s: int, t: int, directed: bool = False) -> PatternSpec:
    anchors = {1: s} if vertices == 1 else {1: s, vertices: t}
    return PatternSpec("anchored_path", l=vertices, anchors=anchors, directed=directed)


# -- traversal helpers ---------------------------------------------------------

def components(g: Graph) -> list[list[int]]:
    seen, out = set(), []
    for r in g.vertices:
        if r in seen:
            continue
        comp, queue = [], deque([r])
        seen.add(r)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in g.undirected_neighbors(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def bfs_distances(g: Graph, source: int, directed: bool = False, limit: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        nbrs = g.neighbors(x) if directed else g.undirected_neighbors(x)
        for y in nbrs:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def ball(g: Graph, center: int, r: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on the radius-``r`` ball around ``center`` and the new->old vertex map."""
    if not 1 <= center <= g.n:
        raise ParameterError(f"center {center} not a vertex")
    if r < 0:
        raise ParameterError("radius must be >= 0")
    return g.induced(list(bfs_distances(g, center, limit=r)))


def complement(g: Graph) -> Graph:
    if g.directed:
        raise ParameterError("complement is defined for undirected graphs only")
    edges = [(u, v) for u, v in itertools.combinations(g.vertices, 2) if (u, v) not in g.edges]
    return Graph.from_edges(g.n, edges, labels=g.labels)
