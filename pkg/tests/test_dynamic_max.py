import logging

import pytest

from conftest import replay
from edgecolour.config import PartitionConfig
from edgecolour.dynamic_max import DynamicMaxEngine
from edgecolour.errors import (
    ColouringError, DuplicateEdgeError, LevelError, MissingEdgeError, SelfLoopError,
)
from edgecolour.graph import SimpleGraph
from edgecolour.oracle import audit_engine, exact_arboricity, verify_proper
from edgecolour.streams import generate_stream


def star(engine, centre, leaves):
    for leaf in leaves:
        engine.insert(centre, leaf)


def test_first_edges_take_the_smallest_colours(max_engine):
    engine = max_engine(8)
    assert engine.insert(0, 1) == 1
    assert engine.insert(1, 2) == 2
    assert engine.insert(2, 3) == 1
    assert engine.insert(0, 3) == 2
    assert audit_engine(engine).ok


def test_star_promotes_centre_past_the_out_degree_bound(max_engine):
    engine = max_engine(64)
    star(engine, 0, range(1, 21))
    assert engine.level(0) == 1
    assert engine.graph.out_degree(0) == 20

    assert engine.insert(0, 21) == 21
    assert engine.level(0) == 2
    assert engine.graph.out_degree(0) == 0
    assert engine.graph.down_degree(0) == 21
    assert engine.stats.increments == 1
    assert audit_engine(engine).ok


def test_star_centre_drops_once_support_runs_out(max_engine):
    engine = max_engine(64)
    star(engine, 0, range(1, 22))
    for leaf in range(1, 18):
        engine.delete(0, leaf)
    assert engine.level(0) == 2
    assert engine.graph.down_degree(0) == 4

    engine.delete(0, 18)
    assert engine.level(0) == 1
    assert engine.stats.decrements == 1
    assert engine.stats.level_moves == 2
    report = audit_engine(engine)
    assert report.ok, report.format_report()


def test_conflict_cascades_down_one_level(max_engine):
    engine = max_engine(128)
    star(engine, 0, range(1, 22))
    star(engine, 100, range(101, 122))
    for leaf in range(105, 122):
        engine.delete(100, leaf)
    assert engine.level(0) == engine.level(100) == 2
    steps_before = engine.stats.cascade_steps

    assert engine.insert(0, 100) == 5
    assert engine.colours[(0, 5)] == 22
    assert engine.stats.cascade_steps == steps_before + 1
    report = audit_engine(engine)
    assert report.ok, report.format_report()


def test_rejected_updates_leave_the_engine_untouched(max_engine):
    engine = max_engine(8)
    engine.insert(0, 1)
    with pytest.raises(DuplicateEdgeError):
        engine.insert(1, 0)
    with pytest.raises(SelfLoopError):
        engine.insert(2, 2)
    with pytest.raises(MissingEdgeError):
        engine.delete(2, 3)
    assert engine.colours == {(0, 1): 1}
    assert audit_engine(engine).ok


def test_recolour_requires_an_uncoloured_live_edge(max_engine):
    engine = max_engine(8)
    engine.insert(0, 1)
    with pytest.raises(ColouringError):
        engine.recolour(0, 1)
    with pytest.raises(MissingEdgeError):
        engine.recolour(2, 3)


def test_level_moves_check_their_preconditions(max_engine):
    engine = max_engine(8)
    engine.insert(0, 1)
    with pytest.raises(LevelError):
        engine.increment(0)
    with pytest.raises(LevelError):
        engine.decrement(0)


def test_saturated_top_level_warns_once(caplog):
    config = PartitionConfig(capacity=8, d=1, beta=2, k=1, alpha_max=1)
    engine = DynamicMaxEngine(config)
    with caplog.at_level(logging.WARNING, logger='edgecolour.dynamic_max'):
        star(engine, 0, range(1, 6))
    assert engine.stats.saturated == 1
    assert engine.max_level() == 1
    assert sum('top level' in r.getMessage() for r in caplog.records) == 1
    assert verify_proper(engine.graph, engine.colours).ok


@pytest.mark.parametrize('kind,n,alpha', [
    ('forest', 40, 1),
    ('forests(2)', 40, 2),
    ('star-of-trees(6)', 40, 1),
])
@pytest.mark.parametrize('seed', [0, 1])
def test_tight_epsilon_preset_survives_streams(max_engine, kind, n, alpha, seed):
    stream = generate_stream(kind, n, 300, seed=seed, delete_prob=0.3)
    engine = max_engine(n, alpha, epsilon=0.1)
    for step, _ in enumerate(replay(engine, stream)):
        if step % 5 == 0:
            report = audit_engine(engine)
            assert report.ok, report.format_report()
    report = audit_engine(engine)
    assert report.ok, report.format_report()


def test_tight_preset_actually_moves_levels(max_engine):
    stream = generate_stream('star-of-trees(6)', 40)
    engine = max_engine(40, 1, epsilon=0.1)
    for _ in replay(engine, stream):
        pass
    assert engine.stats.increments > 0
    assert engine.max_level() > 1


def test_engine_agrees_with_the_stream_on_final_edges(max_engine):
    stream = generate_stream('erdos-renyi(0.3)', 20, 400, seed=4, delete_prob=0.2)
    edges = set()
    for event in stream:
        (edges.add if event.op == '+' else edges.discard)(event.edge)
    engine = max_engine(20, 10)
    for _ in replay(engine, stream):
        pass
    assert set(engine.edges()) == edges == set(stream.final_edges())
    assert audit_engine(engine).ok


@pytest.mark.parametrize('seed', range(4))
def test_epsilon_colours_stay_under_the_bound(seed):
    stream = generate_stream('forests(2)', 12, 120, seed=seed, delete_prob=0.3)
    union = SimpleGraph.from_edges(12, {e.edge for e in stream})
    alpha_max = exact_arboricity(union)

    engine = DynamicMaxEngine(PartitionConfig.for_alpha(12, alpha_max, epsilon=0.5))
    delta_max = 0
    for _ in replay(engine, stream):
        delta_max = max(delta_max, engine.graph.max_degree())
    assert engine.config.out_bound == pytest.approx(8.75 * alpha_max)
    assert engine.state.peak <= delta_max + 8.75 * alpha_max
    assert audit_engine(engine).ok


def test_palettes_shrink_after_mass_deletion(max_engine):
    engine = max_engine(64)
    star(engine, 0, range(1, 40))
    assert engine.palette(0).capacity >= 64
    for leaf in range(39, 1, -1):
        engine.delete(0, leaf)
    assert engine.colours == {(0, 1): 1}
    assert engine.palette(0).capacity <= 4
    assert audit_engine(engine).ok


def stream_maxima(stream):
    """Largest degree and exact arboricity any snapshot of a small stream reaches."""
    graph = SimpleGraph(stream.capacity)
    delta_max = alpha_max = 0
    for event in stream:
        if event.op == '+':
            graph.add_edge(event.u, event.v)
        else:
            graph.remove_edge(event.u, event.v)
        delta_max = max(delta_max, graph.max_degree())
        alpha_max = max(alpha_max, exact_arboricity(graph))
    return delta_max, alpha_max


@pytest.mark.parametrize('kind', ['forest', 'forests(3)', 'grid-planar'])
@pytest.mark.parametrize('seed', [0, 1])
def test_peak_colour_stays_under_the_default_bound(max_engine, kind, seed):
    stream = generate_stream(kind, 200, 4000, seed=seed, delete_prob=0.35)
    engine = max_engine(200, stream.alpha)
    assert engine.config.out_bound == 20 * stream.alpha
    delta_max = 0
    for event in replay(engine, stream):
        delta_max = max(delta_max, engine.degree(event.u), engine.degree(event.v))
    assert engine.state.peak <= delta_max + 20 * stream.alpha
    assert audit_engine(engine).ok


@pytest.mark.parametrize('seed', range(5))
def test_peak_colour_with_exact_arboricity(seed):
    stream = generate_stream('erdos-renyi(0.4)', 12, 200, seed=seed, delete_prob=0.3)
    delta_max, alpha_max = stream_maxima(stream)
    engine = DynamicMaxEngine(PartitionConfig.for_alpha(12, alpha_max), debug=True)
    for _ in replay(engine, stream):
        pass
    assert engine.state.peak <= delta_max + 20 * alpha_max
    assert audit_engine(engine).ok


@pytest.mark.parametrize('epsilon', [None, 0.1])
@pytest.mark.parametrize('kind,alpha', [('forest', 1), ('forests(3)', 3), ('grid-planar', 3)])
def test_level_moves_stay_within_budget(kind, alpha, epsilon):
    stream = generate_stream(kind, 100, 3000, seed=11, delete_prob=0.45)
    engine = DynamicMaxEngine(PartitionConfig.for_alpha(100, alpha, epsilon=epsilon))
    budget = 10 * engine.config.k
    for step, _ in enumerate(replay(engine, stream), start=1):
        assert engine.stats.level_moves <= budget * step
        assert not engine.dirty_vertices()
    assert engine.stats.level_moves == engine.stats.increments + engine.stats.decrements
