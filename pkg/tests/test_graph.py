import pytest
from hypothesis import given, settings, strategies as st

from edgecolour.errors import (
    DuplicateEdgeError, LevelError, MissingEdgeError, SelfLoopError, VertexRangeError,
)
from edgecolour.graph import OUT, LevelledAdjacency, SimpleGraph, edge_key
from edgecolour.oracle import check_adjacency


def raise_to(adj, v, level):
    while adj.level(v) < level:
        adj.split_out_list(v)


def test_same_level_edge_is_out_both_ways():
    adj = LevelledAdjacency(4, 5)
    adj.attach_edge(0, 1)
    assert adj.out_neighbours(0) == [1]
    assert adj.out_neighbours(1) == [0]
    assert adj.locate(0, 1) == OUT and adj.locate(1, 0) == OUT


def test_lower_neighbour_goes_to_its_level_bucket():
    adj = LevelledAdjacency(4, 5)
    raise_to(adj, 1, 3)
    adj.attach_edge(0, 1)
    assert adj.bucket(1, 1) == [0]
    assert adj.out_neighbours(1) == []
    assert adj.out_neighbours(0) == [1]


def test_rejections():
    adj = LevelledAdjacency(3, 2)
    with pytest.raises(SelfLoopError):
        adj.attach_edge(1, 1)
    adj.attach_edge(0, 1)
    with pytest.raises(DuplicateEdgeError):
        adj.attach_edge(1, 0)
    with pytest.raises(MissingEdgeError):
        adj.detach_edge((0, 2))
    with pytest.raises(VertexRangeError):
        adj.attach_edge(0, 3)


def test_attach_then_detach_restores_adjacency():
    adj = LevelledAdjacency(3, 2)
    adj.attach_edge(0, 2)
    before = [adj.buckets(v) for v in range(3)]
    adj.attach_edge(1, 2)
    adj.detach_edge((2, 1))
    assert [adj.buckets(v) for v in range(3)] == before
    assert adj.degree(2) == 1


def test_split_moves_same_level_neighbours_down():
    adj = LevelledAdjacency(4, 5)
    v, a, b = 0, 1, 2
    raise_to(adj, b, 3)
    adj.attach_edge(v, a)
    adj.attach_edge(v, b)

    previous = adj.split_out_list(v)

    assert sorted(previous) == [a, b]
    assert adj.level(v) == 2
    assert adj.bucket(v, 1) == [a]
    assert adj.out_neighbours(v) == [b]
    assert adj.locate(b, v) == 2
    assert adj.locate(a, v) == OUT
    assert check_adjacency(adj).ok


def test_split_of_empty_out_list_only_changes_level():
    adj = LevelledAdjacency(2, 3)
    assert adj.split_out_list(0) == []
    assert adj.level(0) == 2
    assert adj.buckets(0) == {}


def test_split_at_top_level_rejected():
    adj = LevelledAdjacency(2, 2)
    adj.split_out_list(0)
    with pytest.raises(LevelError):
        adj.split_out_list(0)


def test_merge_down_joins_bucket_and_out_list():
    adj = LevelledAdjacency(4, 5)
    v, a, b = 0, 1, 2
    raise_to(adj, b, 3)
    adj.attach_edge(v, a)
    adj.attach_edge(v, b)
    adj.split_out_list(v)

    adj.merge_down(v)

    assert adj.level(v) == 1
    assert sorted(adj.out_neighbours(v)) == [a, b]
    assert adj.locate(b, v) == 1
    assert check_adjacency(adj).ok


def test_merge_after_split_restores_buckets():
    adj = LevelledAdjacency(6, 4)
    for u in range(1, 6):
        adj.attach_edge(0, u)
    raise_to(adj, 5, 3)
    before = [adj.buckets(v) for v in range(6)]
    adj.split_out_list(0)
    adj.merge_down(0)
    assert [{b: sorted(m) for b, m in adj.buckets(v).items()} for v in range(6)] == \
        [{b: sorted(m) for b, m in bk.items()} for bk in before]


def test_merge_at_level_one_rejected():
    adj = LevelledAdjacency(2, 3)
    with pytest.raises(LevelError):
        adj.merge_down(0)


def test_down_degree_counts_bucket_below():
    adj = LevelledAdjacency(5, 4)
    for u in range(1, 5):
        adj.attach_edge(0, u)
    raise_to(adj, 4, 2)
    adj.split_out_list(0)
    # 1..3 dropped into H_1, 4 is level 2 and stays out
    assert adj.out_degree(0) == 1
    assert adj.down_degree(0) == 4
    adj.split_out_list(0)
    assert adj.down_degree(0) == 1


OPS = st.lists(
    st.tuples(
        st.sampled_from(['attach', 'detach', 'split', 'merge']),
        st.integers(0, 7),
        st.integers(0, 7),
    ),
    max_size=200,
)


@settings(max_examples=150, deadline=None)
@given(OPS)
def test_random_operations_match_reference(ops):
    adj = LevelledAdjacency(8, 4)
    reference = set()
    for op, u, v in ops:
        if op == 'attach' and u != v and edge_key(u, v) not in reference:
            adj.attach_edge(u, v)
            reference.add(edge_key(u, v))
        elif op == 'detach' and edge_key(u, v) in reference:
            adj.detach_edge((v, u))
            reference.discard(edge_key(u, v))
        elif op == 'split' and adj.level(u) < 4:
            adj.split_out_list(u)
        elif op == 'merge' and adj.level(u) > 1:
            adj.merge_down(u)

    assert set(adj.edges()) == reference
    for v in range(8):
        assert sorted(adj.neighbours(v)) == sorted(
            w for e in reference if v in e for w in e if w != v
        )
    report = check_adjacency(adj)
    assert report.ok, report.format_report()


def test_simple_graph_basics():
    g = SimpleGraph.from_edges(4, [(0, 1), (1, 2)])
    assert g.num_edges() == 2
    assert g.max_degree() == 2
    assert sorted(g.edges()) == [(0, 1), (1, 2)]
    g.remove_edge(2, 1)
    assert not g.has_edge(1, 2)
    with pytest.raises(MissingEdgeError):
        g.remove_edge(1, 2)
