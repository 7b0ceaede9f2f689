import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paracc import distance, embed, k_path, matching
from paracc.checkers import check_embedding
from paracc.embed import evaluate_coloring, make_plan
from paracc.errors import DecompositionError, GuardError, ParameterError
from paracc.graph import (
    Graph,
    PatternSpec,
    TreeDecomposition,
    build_pattern,
    exact_tree_decomposition,
    k2,
    k3,
)
from paracc.oracle import oracle_distance, oracle_embed, oracle_k_path, oracle_matching
from paracc.runner import Stats
from support import complete, cycle, path, random_graphs, small_graphs, star, union

PATTERNS = {
    "K2": k2(),
    "P3": path(3),
    "P4": path(4),
    "K3": k3(),
    "C4": cycle(4),
    "2K2": union(k2(), k2()),
}


def solve(h, g, **kw):
    return embed(h, exact_tree_decomposition(h), g, **kw)


def test_edge_into_triangle():
    w = solve(k2(), k3())
    assert w is not None and check_embedding(k2(), k3(), w.assignment)


def test_triangle_not_in_c4():
    assert solve(k3(), cycle(4)) is None


def test_anchored_path():
    h, td = build_pattern(PatternSpec("paths", k=1, l=3))
    w = embed(h, td, path(3), anchors={1: 1, 3: 3})
    assert w.assignment == {1: 1, 2: 2, 3: 3}


def test_anchor_that_cannot_hold():
    h, td = build_pattern(PatternSpec("paths", k=1, l=3))
    assert embed(h, td, path(3), anchors={2: 1}) is None


@pytest.mark.parametrize("anchors", [{4: 1}, {1: 9}, {1: 2, 2: 2}])
def test_anchor_errors(anchors):
    h, td = build_pattern(PatternSpec("paths", k=1, l=3))
    with pytest.raises(ParameterError):
        embed(h, td, path(4), anchors=anchors)


def test_invalid_decomposition_rejected():
    with pytest.raises(DecompositionError):
        embed(path(3), TreeDecomposition((None, 0), ((1, 2), (3,))), path(3))


def test_direction_mismatch_rejected():
    arc = Graph.from_edges(2, [(1, 2)], directed=True)
    with pytest.raises(ParameterError):
        embed(arc, exact_tree_decomposition(arc), path(3))


def test_directed_embedding_respects_arcs():
    host = Graph.from_edges(3, [(1, 2), (3, 2)], directed=True)
    h2 = Graph.from_edges(3, [(1, 2), (2, 3)], directed=True)
    assert solve(h2, host) is None
    fork = Graph.from_edges(3, [(1, 2), (3, 2)], directed=True)
    w = solve(fork, host)
    assert w is not None and check_embedding(fork, host, w.assignment)


def test_empty_pattern_and_oversized_pattern():
    assert solve(Graph.from_edges(0, []), k3()).assignment == {}
    assert solve(complete(4), k3()) is None


def test_unknown_engine():
    with pytest.raises(ParameterError):
        solve(k2(), k3(), engine="magic")


def test_exhaustive_engine_guard():
    with pytest.raises(GuardError):
        solve(k2(), path(11), engine="exhaustive")


@pytest.mark.parametrize("name", sorted(PATTERNS))
@pytest.mark.parametrize("engine", ["colorcode", "exhaustive"])
def test_matches_oracle_on_random_hosts(name, engine):
    h = PATTERNS[name]
    for g in random_graphs(6, 40, seed=sorted(PATTERNS).index(name), densities=(0.3, 0.5, 0.7)):
        w = solve(h, g, engine=engine)
        assert (w is None) == (oracle_embed(h, g) is None)
        if w is not None:
            assert check_embedding(h, g, w.assignment)


@given(small_graphs(max_n=6), st.sampled_from(sorted(PATTERNS)))
def test_embedding_property(g, name):
    h = PATTERNS[name]
    w = solve(h, g)
    assert (w is None) == (oracle_embed(h, g) is None)
    if w is not None:
        assert check_embedding(h, g, w.assignment)


def test_witness_independent_of_threads_and_stats():
    g = random_graphs(8, 1, seed=3, densities=(0.5,))[0]
    runs = []
    for threads in (1, 2, 8):
        st_ = Stats()
        runs.append((solve(path(4), g, threads=threads, stats=st_), st_.index, st_.colorings_checked))
    assert runs[0] == runs[1] == runs[2]


def test_multiplier_enlarges_family_only():
    a, b = Stats(), Stats()
    g = cycle(7)
    assert solve(path(4), g, stats=a) == solve(path(4), g, multiplier=2, stats=b)
    assert b.family_size > a.family_size


def test_distance_examples():
    c5 = cycle(5)
    assert distance(c5, 1, 3, 2) and not distance(c5, 1, 3, 1)
    assert distance(c5, 2, 2, 0)
    dp = Graph.from_edges(3, [(1, 2), (2, 3)], directed=True)
    assert not distance(dp, 3, 1, 5) and distance(dp, 1, 3, 2)


def test_distance_errors():
    with pytest.raises(ParameterError):
        distance(path(3), 1, 3, -1)
    with pytest.raises(ParameterError):
        distance(path(3), 1, 4, 2)


@given(small_graphs(max_n=6), st.data())
def test_distance_matches_bfs(g, data):
    s, t = data.draw(st.integers(1, g.n)), data.draw(st.integers(1, g.n))
    d = data.draw(st.integers(0, 4))
    assert distance(g, s, t, d) == oracle_distance(g, s, t, d)


def test_k_path_examples():
    assert k_path(path(5), 4)
    assert not k_path(star(3), 4)
    assert k_path(Graph.from_edges(1, []), 1)
    assert not k_path(Graph.from_edges(0, []), 1)
    with pytest.raises(ParameterError):
        k_path(path(3), 0)


def test_matching_examples():
    assert matching(cycle(4), 2)
    assert not matching(k3(), 2)
    assert matching(complete(4), 2)
    with pytest.raises(ParameterError):
        matching(Graph.from_edges(2, [(1, 2)], directed=True), 1)


@given(small_graphs(max_n=7), st.integers(1, 4))
def test_k_path_and_matching_match_oracle(g, k):
    assert k_path(g, k) == (oracle_k_path(g, k) is not None)
    if k <= 3:
        assert matching(g, k) == (oracle_matching(g, k) is not None)


# -- instrumentation: tuple checks per node and sequential phases per coloring --

@pytest.mark.parametrize("h,td", [
    build_pattern(PatternSpec("paths", k=1, l=5)),
    build_pattern(PatternSpec("copies", k=2, graphs=(k3(),))),
    build_pattern(PatternSpec("cycles", k=1, l=5)),
    (cycle(4), exact_tree_decomposition(cycle(4))),
])
def test_dp_work_and_phase_counters(h, td):
    g = complete(8)
    plan = make_plan(h, td, None, g.n)
    rng = np.random.default_rng(5)
    width = td.width
    for _ in range(25):
        table = rng.integers(1, h.n + 1, size=g.n).astype(np.int16)
        ok, assignment, counters = evaluate_coloring(plan, g, table)
        class_size = np.bincount(table, minlength=h.n + 1)[1:]
        for x, bag in enumerate(td.bags):
            bound = int(np.prod([class_size[v - 1] for v in bag])) if bag else 1
            assert counters["checks"][x] <= bound <= g.n ** (width + 1)
        if ok:
            assert counters["phases"] == td.levels
            assert check_embedding(h, g, assignment)
