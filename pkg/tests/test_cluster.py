import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paracc import (
    cluster_editing,
    cluster_editing_free_l,
    many_cluster_editing,
    multipartite_cluster_editing,
    p_partite_editing,
)
from paracc.checkers import check_clustering, check_p_partite
from paracc.cluster import BIG, edits_to_partition, min_cluster_cost
from paracc.errors import ParameterError
from paracc.graph import Graph, k2, k3
from paracc.oracle import (
    oracle_cluster_editing,
    oracle_many_cluster_editing,
    oracle_multipartite,
    oracle_p_partite_editing,
)
from support import atlas, complete, cycle, empty, path, small_graphs, union


def ce(g, k, l):
    w = cluster_editing(g, k, l)
    if w is not None:
        assert check_clustering(g, w.edits.additions, w.edits.deletions, w.clusters, k=k, l=l)
    return w


def free(g, k, l):
    w = cluster_editing_free_l(g, k, l)
    if w is not None:
        assert check_clustering(g, w.edits.additions, w.edits.deletions, w.clusters, k=k, l=l)
    return w


def many(g, k):
    w = many_cluster_editing(g, k)
    if w is not None:
        assert check_clustering(g, w.edits.additions, w.edits.deletions, w.clusters, k=k)
    return w


def pp(g, k, p, flag=True):
    w = p_partite_editing(g, k, p, flag)
    if w is not None:
        assert check_p_partite(g, w.additions, w.deletions, p, k)
    return w


def mp(g, k, parts):
    w = multipartite_cluster_editing(g, k, parts)
    if w is not None:
        assert check_clustering(g, w.edits.additions, w.edits.deletions, w.clusters, k=k, parts=parts)
    return w


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


# -- examples ----------------------------------------------------------------

def test_cluster_examples():
    w = ce(path(3), 1, 1)
    assert w.edits.additions == {(1, 3)} and not w.edits.deletions
    w = ce(path(3), 1, 2)
    assert not w.edits.additions and len(w.edits.deletions) == 1
    w = ce(k3(), 0, 1)
    assert w.edits.cost == 0 and w.clusters == ((1, 2, 3),)


def test_many_examples():
    w = many(union(k3(), k2()), 0)
    assert w.edits.cost == 0
    assert many(path(3), 1) is not None
    w = many(path(4), 1)
    assert w.edits.deletions == {(2, 3)} and w.clusters == ((1, 2), (3, 4))
    assert many(empty(0), 0).clusters == ()


def test_free_l_examples():
    w = free(union(*[k3()] * 30), 1, 30)
    assert w is not None and w.edits.cost == 0
    w = free(union(path(3), complete(5)), 1, 2)
    assert w.edits.additions == {(1, 3)}
    assert free(k3(), 0, 2) is None


def test_free_l_small_cliques_can_be_split():
    # a K2 component has size <= k+1 and may be split by one deletion
    assert free(k2(), 1, 2) is not None
    assert free(union(empty(1), empty(1), k2(), k2()), 1, 5) is not None
    assert oracle_cluster_editing(union(empty(1), empty(1), k2(), k2()), 1, 5) is not None


def test_p_partite_examples():
    assert pp(cycle(4), 0, 2).cost == 0
    assert pp(path(3), 0, 2).cost == 0
    assert pp(k3(), 0, 2) is None
    assert pp(k3(), 0, 3).cost == 0
    assert pp(k3(), 0, 3, flag=False).cost == 0


def test_multipartite_examples():
    assert mp(union(cycle(4), k3()), 0, (2, 3)).edits.cost == 0
    w = mp(path(4), 1, (2,))
    assert w.edits.additions == {(1, 4)} and not w.edits.deletions
    assert mp(k3(), 0, (2,)) is None


@pytest.mark.parametrize("call", [
    lambda: cluster_editing(k3(), -1, 1),
    lambda: cluster_editing(k3(), 1, 0),
    lambda: many_cluster_editing(k3(), -1),
    lambda: cluster_editing_free_l(k3(), 1, 0),
    lambda: p_partite_editing(k3(), 1, 0),
    lambda: multipartite_cluster_editing(k3(), 1, ()),
    lambda: multipartite_cluster_editing(k3(), 1, (0,)),
    lambda: cluster_editing(Graph.from_edges(2, [(1, 2)], directed=True), 1, 1),
])
def test_errors(call):
    with pytest.raises(ParameterError):
        call()


def test_edits_to_partition():
    e = edits_to_partition(path(4), [[1, 2, 3], [4]])
    assert e.additions == {(1, 3)} and e.deletions == {(3, 4)} and e.cost == 2


# -- oracle agreement ----------------------------------------------------------

def test_min_cost_matches_partition_enumeration():
    for g in atlas(6):
        for l in (1, 2, 3):
            best = min((edits_to_partition(g, p).cost for p in set_partitions(list(g.vertices)) if len(p) == l),
                       default=None)
            for k in (0, 1, 2, 3):
                cost, blocks = min_cluster_cost(g, k, l)
                if best is not None and best <= k:
                    assert cost == best and edits_to_partition(g, blocks).cost == best
                else:
                    assert cost == BIG or cost > k


def test_editing_modes_match_oracle():
    for g in atlas(6):
        for k in range(4):
            assert (many(g, k) is None) == (oracle_many_cluster_editing(g, k) is None)
            for l in (1, 2, 3):
                truth = oracle_cluster_editing(g, k, l) is None
                assert (ce(g, k, l) is None) == truth
                assert (free(g, k, l) is None) == truth
                assert (pp(g, k, l) is None) == (oracle_p_partite_editing(g, k, l) is None)
                assert (pp(g, k, l, False) is None) == (oracle_p_partite_editing(g, k, l) is None)


PARTS = [c for size in (1, 2, 3) for c in itertools.combinations_with_replacement((1, 2, 3), size)]


def test_multipartite_matches_oracle():
    for g in atlas(6):
        for k in range(4):
            for parts in PARTS:
                assert (mp(g, k, parts) is None) == (oracle_multipartite(g, k, parts) is None)


@given(small_graphs(max_n=6), st.integers(0, 3), st.integers(1, 3))
def test_cluster_property(g, k, l):
    truth = oracle_cluster_editing(g, k, l) is None
    assert (ce(g, k, l) is None) == truth
    assert (free(g, k, l) is None) == truth


@given(small_graphs(max_n=6), st.integers(0, 2), st.sampled_from(PARTS))
def test_multipartite_property(g, k, parts):
    assert (mp(g, k, parts) is None) == (oracle_multipartite(g, k, parts) is None)


def test_larger_free_l_instances_stay_fast():
    # many small identical components, l near the component count
    g = union(*[k2()] * 12, *[k3()] * 6, path(3))
    w = free(g, 2, 20)
    assert w is not None and w.edits.cost <= 2
    assert free(g, 2, 30) is None
