import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paracc import buss_kernel, exact_partial_vertex_cover, partial_vertex_cover, vertex_cover
from paracc.checkers import check_cover
from paracc.cover import KERNELIZED, RED, RESIDUAL_TOO_LARGE, TOO_MANY_FORCED, split_high_degree
from paracc.errors import ParameterError
from paracc.graph import Graph, k3
from paracc.oracle import (
    oracle_exact_partial_vertex_cover,
    oracle_partial_vertex_cover,
    oracle_vertex_cover,
)
from support import atlas, complete, cycle, empty, random_graphs, small_graphs, star


def vc(g, k):
    w = vertex_cover(g, k)
    if w is not None:
        assert check_cover(g, w.vertices, w.covered, k=k, full=True)
    return w


def pvc(g, k, t, prefilter=True):
    w = partial_vertex_cover(g, k, t, prefilter=prefilter)
    if w is not None:
        assert check_cover(g, w.vertices, w.covered, k=k, at_least=t)
    return w


def epvc(g, t):
    w = exact_partial_vertex_cover(g, t)
    if w is not None:
        assert check_cover(g, w.vertices, w.covered, exactly=t)
    return w


# -- Buss kernel ---------------------------------------------------------------

def test_kernel_star():
    kern = buss_kernel(star(5), 1)
    assert kern.forced == {1} and kern.residual.n == 0 and kern.verdict == KERNELIZED


def test_kernel_k5_rejects():
    assert buss_kernel(complete(5), 1).verdict == TOO_MANY_FORCED
    assert oracle_vertex_cover(complete(5), 1) is None


def test_kernel_c5():
    kern = buss_kernel(cycle(5), 2)
    assert kern.forced == frozenset() and kern.residual == cycle(5) and kern.verdict == KERNELIZED


def test_kernel_large_residual():
    g = Graph.from_edges(6, [(1, 2), (3, 4), (5, 6)])
    assert buss_kernel(g, 1).verdict == RESIDUAL_TOO_LARGE


@given(small_graphs(max_n=9), st.integers(0, 3))
def test_kernel_invariants(g, k):
    kern = buss_kernel(g, k)
    assert all(g.degree(v) >= k + 1 for v in kern.forced)
    assert kern.forced == {v for v in g.vertices if g.degree(v) > k}
    if len(kern.forced) > k:
        assert kern.verdict == TOO_MANY_FORCED
    elif kern.verdict == KERNELIZED:
        assert kern.residual.n <= k * (k + 1)
        assert kern.residual.max_degree() <= k
        assert all(kern.residual.degree(v) >= 1 for v in kern.residual.vertices)


# -- vertex cover --------------------------------------------------------------

def test_vc_examples():
    assert vc(star(5), 1).vertices == {1}
    assert vc(cycle(5), 2) is None
    assert len(vc(cycle(5), 3).vertices) == 3
    w = vc(empty(0), 0)
    assert w is not None and not w.vertices


def test_vc_errors():
    with pytest.raises(ParameterError):
        vertex_cover(k3(), -1)
    with pytest.raises(ParameterError):
        vertex_cover(Graph.from_edges(2, [(1, 2)], directed=True), 1)


def test_vc_random_corpus_up_to_twelve_vertices():
    for n in (9, 10, 12):
        for g in random_graphs(n, 25, seed=n, densities=(0.1, 0.2, 0.3)):
            for k in range(5):
                w = vc(g, k)
                best = None
                for size in range(min(k, g.n) + 1):
                    if any(all(u in S or v in S for u, v in g.edges)
                           for S in map(set, itertools.combinations(g.vertices, size))):
                        best = size
                        break
                assert (w is None) == (best is None)


# -- partial vertex cover ------------------------------------------------------

def test_pvc_examples():
    assert pvc(star(4), 1, 4).vertices == {1}
    assert pvc(cycle(5), 1, 3) is None
    w = pvc(cycle(5), 2, 4)
    a, b = sorted(w.vertices)
    assert not cycle(5).has_edge(a, b)


def test_pvc_errors():
    with pytest.raises(ParameterError):
        partial_vertex_cover(k3(), 1, 0)
    with pytest.raises(ParameterError):
        partial_vertex_cover(k3(), -1, 1)


def test_pvc_target_exceeds_edges():
    assert pvc(k3(), 3, 4) is None


@pytest.mark.parametrize("prefilter", [True, False])
def test_pvc_matches_oracle_small(prefilter):
    for g in atlas(6):
        for k in (1, 2, 3):
            for t in (1, 2, 3, 4):
                assert (pvc(g, k, t, prefilter) is None) == (oracle_partial_vertex_cover(g, k, t) is None)


@given(small_graphs(max_n=8), st.integers(1, 3), st.integers(1, 4))
def test_pvc_property_without_prefilter(g, k, t):
    assert (pvc(g, k, t, False) is None) == (oracle_partial_vertex_cover(g, k, t) is None)


# -- exact partial vertex cover ------------------------------------------------

def test_epvc_examples():
    w = epvc(cycle(4), 2)
    assert len(w.vertices) == 1
    assert epvc(k3(), 1) is None
    w = epvc(complete(4), 5)
    a, b = w.vertices
    assert complete(4).has_edge(a, b)


def test_epvc_edge_cases():
    assert epvc(k3(), 0).vertices == frozenset()
    assert epvc(k3(), 4) is None
    with pytest.raises(ParameterError):
        exact_partial_vertex_cover(k3(), -1)


def test_split_high_degree():
    g = star(4)
    split, origin = split_high_degree(g, 2)
    assert split.n == 8 and split.m == 4
    assert origin[:4] == [2, 3, 4, 5] and origin[4:] == [None] * 4
    assert all(split.labels[v] == RED for v in range(5, 9))
    assert all(split.degree(v) == 1 for v in split.vertices)


def test_epvc_matches_oracle_small():
    for g in atlas(6):
        for t in range(5):
            assert (epvc(g, t) is None) == (oracle_exact_partial_vertex_cover(g, t) is None)


@given(small_graphs(max_n=8), st.integers(0, 4))
def test_epvc_property(g, t):
    assert (epvc(g, t) is None) == (oracle_exact_partial_vertex_cover(g, t) is None)
