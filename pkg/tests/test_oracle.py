import pytest
from hypothesis import given, settings, strategies as st

from edgecolour.colouring import GreedyColourer
from edgecolour.errors import UsageError
from edgecolour.graph import SimpleGraph
from edgecolour.oracle import (
    arboricity_bound, audit_engine, exact_arboricity, min_free_colour, verify_proper,
)
from edgecolour.static import degeneracy_order
from edgecolour.streams import generate_stream


def complete(n):
    return SimpleGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def test_proper_triangle():
    graph = complete(3)
    report = verify_proper(graph, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
    assert report.ok
    assert report.counters['proper'] == 3


def test_repeated_colour_reported_at_shared_vertex():
    graph = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    report = verify_proper(graph, {(0, 1): 1, (1, 2): 1})
    assert [(v.kind, v.where) for v in report.violations] == [('improper', 1)]


def test_uncoloured_edge_is_a_violation_not_an_exception():
    graph = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    report = verify_proper(graph, {(0, 1): 1})
    assert report.kinds() == {'uncoloured': 1}
    assert 'uncoloured' in report.format_report()


def test_exact_arboricity_examples():
    forest = SimpleGraph.from_edges(7, [(0, 1), (0, 2), (2, 3), (4, 5)])
    assert exact_arboricity(forest) == 1
    assert exact_arboricity(complete(4)) == 2
    assert exact_arboricity(complete(5)) == 3
    assert exact_arboricity(SimpleGraph(4)) == 0


def test_exact_arboricity_rejects_large_graphs():
    with pytest.raises(UsageError):
        exact_arboricity(complete(17))
    # falls back to the degeneracy
    assert arboricity_bound(complete(17)) == 16


def test_isolated_vertices_do_not_count_towards_the_limit():
    graph = SimpleGraph.from_edges(40, [(30, 31), (31, 32), (30, 32)])
    assert exact_arboricity(graph) == 2


@pytest.mark.parametrize('seed', range(5))
def test_forest_unions_stay_within_their_count(seed):
    stream = generate_stream('forests(3)', 11, 120, seed=seed, delete_prob=0.25)
    live = set()
    for i, event in enumerate(stream):
        if event.op == '+':
            live.add(event.edge)
        else:
            live.discard(event.edge)
        if i % 10 == 0:
            graph = SimpleGraph.from_edges(11, live)
            alpha = exact_arboricity(graph)
            assert alpha <= 3
            assert alpha <= degeneracy_order(graph).degeneracy


def test_min_free_colour_examples():
    assert min_free_colour(set(), set()) == 1
    assert min_free_colour({1, 2}, {1, 3}) == 4
    assert min_free_colour({1, 2, 3}, {4, 5}) == 6


@settings(max_examples=300)
@given(st.sets(st.integers(1, 30)), st.sets(st.integers(1, 30)))
def test_min_free_colour_bound(a, b):
    colour = min_free_colour(a, b)
    assert colour not in a and colour not in b
    assert colour <= len(a) + len(b) + 1


def test_fresh_engines_audit_clean(max_engine, adaptive_engine):
    for engine in (max_engine(8), adaptive_engine(8), GreedyColourer(8)):
        assert audit_engine(engine).ok


def test_corrupted_palette_bit_is_one_mismatch(max_engine):
    engine = max_engine(16)
    for u, v in [(0, 1), (1, 2), (2, 3), (0, 4)]:
        engine.insert(u, v)
    assert audit_engine(engine).ok

    palette = engine.palette(2)
    palette.reserve(40)
    palette.mark(40, (2, 9))

    report = audit_engine(engine)
    assert report.kinds() == {'palette-mismatch': 1}
    assert report.violations[0].where == 2


def test_corrupted_out_palette_is_reported(max_engine):
    engine = max_engine(16)
    engine.insert(0, 1)
    engine.out_palette(0).unmark(engine.colours[(0, 1)])
    assert audit_engine(engine).kinds() == {'out-palette-mismatch': 1}
