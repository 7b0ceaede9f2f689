import pytest
from hypothesis import given
from hypothesis import strategies as st

from paracc import cut_at_most, cut_connected
from paracc.checkers import check_cut
from paracc.errors import ParameterError
from paracc.graph import Graph
from paracc.oracle import oracle_cut
from support import atlas, complete, cycle, empty, path, random_graphs, small_graphs, star, union


def run(g, k, l, connected, terminal=None):
    solver = cut_connected if connected else cut_at_most
    w = solver(g, k, l, terminal)
    if w is not None:
        assert check_cut(g, w.X, w.S, w.Y, k=k, l=l, connected=connected, terminal=terminal)
    return w


def agree(g, k, l, connected, terminal=None):
    return (run(g, k, l, connected, terminal) is None) == (oracle_cut(g, k, l, connected, terminal) is None)


def test_connected_examples():
    w = run(path(5), 1, 2, True)
    assert (set(w.X), set(w.S), set(w.Y)) == ({1, 2}, {3}, {4, 5})
    w = run(star(5), 1, 1, True)
    assert len(w.X) == 1 and 1 not in w.X and set(w.S) == {1}
    assert run(complete(4), 2, 1, True) is None
    assert run(complete(4), 3, 1, True) is not None


def test_at_most_examples():
    g = union(empty(1), empty(1), complete(4))
    w = run(g, 0, 2, False)
    assert set(w.X) == {1, 2} and not w.S
    w = run(cycle(6), 2, 2, False)
    a, b = sorted(w.X)
    assert cycle(6).has_edge(a, b) and len(w.S) == 2
    assert all(cycle(6).has_edge(s, a) or cycle(6).has_edge(s, b) for s in w.S)
    assert run(complete(4), 1, 2, False) is None


def test_at_most_needs_disconnected_x():
    # isolated vertex beside a 3-leaf star: every 2-set with one boundary vertex is disconnected
    g = union(empty(1), star(3))
    w = run(g, 1, 2, False)
    assert w is not None and not any(g.has_edge(a, b) for a in w.X for b in w.X)
    assert run(g, 1, 2, True) is None
    w = run(g, 1, 2, False, terminal=1)
    assert w is not None and 1 in w.X


def test_terminal_mode():
    g = path(5)
    w = run(g, 1, 2, True, terminal=5)
    assert set(w.X) == {4, 5}
    assert run(g, 1, 2, True, terminal=3) is None
    assert agree(g, 1, 2, True, 3)
    w = run(union(empty(1), complete(3)), 0, 2, False, terminal=1)
    assert w is None and agree(union(empty(1), complete(3)), 0, 2, False, 1)


@pytest.mark.parametrize("call", [
    lambda: cut_connected(path(3), -1, 1),
    lambda: cut_connected(path(3), 1, 0),
    lambda: cut_at_most(path(3), 1, 1),
    lambda: cut_connected(path(3), 1, 1, terminal=4),
    lambda: cut_connected(Graph.from_edges(2, [(1, 2)], directed=True), 1, 1),
])
def test_errors(call):
    with pytest.raises(ParameterError):
        call()


def test_matches_oracle_on_small_graphs():
    for g in atlas(6):
        for terminal in (None, 1, g.n):
            for k in range(4):
                for l in (1, 2, 3):
                    assert agree(g, k, l, True, terminal)
                    if l >= 2:
                        assert agree(g, k, l, False, terminal)


def test_matches_oracle_on_random_nine_vertex_graphs():
    for g in random_graphs(9, 30, seed=19):
        for terminal in (None, 1, 9):
            for k in range(4):
                for l in (1, 2, 3):
                    assert agree(g, k, l, True, terminal)
                    if l >= 2:
                        assert agree(g, k, l, False, terminal)


@given(small_graphs(max_n=8), st.integers(0, 3), st.integers(1, 3), st.booleans(), st.data())
def test_property(g, k, l, connected, data):
    terminal = data.draw(st.one_of(st.none(), st.integers(1, g.n)))
    if not connected and l < 2:
        l = 2
    assert agree(g, k, l, connected, terminal)
