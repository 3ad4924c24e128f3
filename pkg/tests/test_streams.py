import networkx as nx
import pytest

from edgecolour.errors import ConfigError, StreamError
from edgecolour.graph import SimpleGraph
from edgecolour.oracle import exact_arboricity
from edgecolour.streams import (
    Event, UpdateStream, generate_stream, load_stream, parse_stream, save_stream,
)


def live_graphs(stream, every=1):
    """networkx snapshot of the live edges after every `every` events."""
    graph = nx.Graph()
    graph.add_nodes_from(range(stream.capacity))
    for i, event in enumerate(stream):
        if event.op == '+':
            graph.add_edge(event.u, event.v)
        else:
            graph.remove_edge(event.u, event.v)
        if i % every == 0:
            yield graph


class TestParse:

    def test_comments_and_blank_lines(self):
        stream = parse_stream("# sample\nn 4\n\n+ 0 1  # first\n+ 1 2\n- 0 1\n", label="s")
        assert stream.capacity == 4
        assert stream.events == [Event('+', 0, 1), Event('+', 1, 2), Event('-', 0, 1)]
        assert stream.has_deletes
        assert stream.final_edges() == [(1, 2)]

    def test_text_survives_a_save(self, tmp_path):
        stream = generate_stream('forest', 12, 60, seed=3, delete_prob=0.3)
        path = tmp_path / 'streams' / 'forest.txt'
        save_stream(stream, str(path))
        loaded = load_stream(str(path))
        assert loaded.events == stream.events
        assert loaded.capacity == 12
        assert loaded.label == 'forest.txt'

    @pytest.mark.parametrize('text,line,column,fragment', [
        ("n 3\n- 0 1", 2, 1, 'absent'),
        ("n 3\n+ 0 7", 2, 5, 'out of range'),
        ("n 3\n+ 0 0", 2, 5, 'self-loop'),
        ("n 3\n+ 0 1\n+ 1 0", 3, 1, 'duplicate'),
        ("n 3\n+ 0 x", 2, 5, 'not an integer'),
        ("n 3\n* 0 1", 2, 1, 'unknown operation'),
        ("n 3\n+ 0", 2, 1, 'fields'),
        ("+ 0 1", 1, 1, 'header'),
        ("n 0", 1, 3, 'capacity'),
        ("", 1, 1, 'missing header'),
    ])
    def test_errors_point_at_the_offending_token(self, text, line, column, fragment):
        with pytest.raises(StreamError) as exc:
            parse_stream(text)
        assert (exc.value.line, exc.value.column) == (line, column)
        assert fragment in exc.value.reason

    def test_validate_counts_the_header_line(self):
        stream = UpdateStream(capacity=3, events=[Event('+', 0, 1), Event('-', 1, 2)])
        with pytest.raises(StreamError) as exc:
            stream.validate()
        assert exc.value.line == 3

    def test_undecodable_bytes_are_a_stream_error(self, tmp_path):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"n 3\n+ 0 1\n+ 1 \xff\n")
        with pytest.raises(StreamError) as exc:
            load_stream(str(path))
        assert (exc.value.line, exc.value.column) == (3, 5)
        assert "UTF-8" in exc.value.reason


class TestGenerate:

    @pytest.mark.parametrize('kind', [
        'forest', 'forests(3)', 'grid-planar', 'erdos-renyi(0.2)',
        'sliding-window(15)',
    ])
    def test_random_kinds_are_legal_and_sized(self, kind):
        stream = generate_stream(kind, 30, 250, seed=1, delete_prob=0.3)
        assert len(stream) == 250
        stream.validate()
        assert stream.label == f"{kind}:n=30:seed=1"

    def test_default_length_is_ten_per_vertex(self):
        assert len(generate_stream('forest', 10)) == 100

    def test_same_seed_same_stream(self):
        a = generate_stream('erdos-renyi(0.3)', 40, 400, seed=9, delete_prob=0.2)
        b = generate_stream('erdos-renyi(0.3)', 40, 400, seed=9, delete_prob=0.2)
        c = generate_stream('erdos-renyi(0.3)', 40, 400, seed=10, delete_prob=0.2)
        assert a.events == b.events
        assert a.events != c.events

    def test_forest_stays_acyclic(self):
        stream = generate_stream('forest', 30, 400, seed=2, delete_prob=0.3)
        assert stream.alpha == 1
        for graph in live_graphs(stream):
            assert nx.is_forest(graph)

    def test_forest_unions_respect_their_count(self):
        stream = generate_stream('forests(2)', 12, 200, seed=5, delete_prob=0.25)
        assert stream.alpha == 2
        for graph in live_graphs(stream, every=7):
            simple = SimpleGraph.from_edges(12, graph.edges())
            assert exact_arboricity(simple) <= 2

    def test_grid_is_planar(self):
        stream = generate_stream('grid-planar', 64, 500, seed=0, delete_prob=0.2)
        assert stream.alpha == 3
        for graph in live_graphs(stream, every=50):
            planar, _ = nx.check_planarity(graph)
            assert planar

    def test_sliding_window_caps_live_edges(self):
        stream = generate_stream('sliding-window(20)', 30, 300, seed=4)
        for graph in live_graphs(stream):
            assert graph.number_of_edges() <= 20

    def test_erdos_renyi_hovers_at_its_density(self):
        stream = generate_stream('erdos-renyi(0.1)', 30, 600, seed=4)
        target = round(0.1 * 30 * 29 / 2)
        sizes = [g.number_of_edges() for g in live_graphs(stream)]
        assert max(sizes) == target

    def test_star_of_trees_shape(self):
        stream = generate_stream('star-of-trees(5)', 26)
        assert len(stream) == 25
        assert not stream.has_deletes
        graph = nx.Graph(stream.final_edges())
        assert nx.is_tree(graph)
        last = stream.events[-1]
        assert graph.degree(last.u) == graph.degree(last.v) == 5

    def test_clique_burst_returns_to_a_tree(self):
        stream = generate_stream('clique-burst(8)', 40, seed=6)
        stream.validate()
        graph = nx.Graph(stream.final_edges())
        assert graph.number_of_nodes() == 40
        assert nx.is_tree(graph)
        peak = max(
            max((d for _, d in g.degree()), default=0)
            for g in live_graphs(stream)
        )
        assert peak >= 7

    def test_steps_truncate_constructions(self):
        assert len(generate_stream('star-of-trees(4)', 20, steps=5)) == 5

    @pytest.mark.parametrize('kind,n,kwargs', [
        ('nope', 10, {}),
        ('forest(2)', 10, {}),
        ('forests(0)', 10, {}),
        ('erdos-renyi(2)', 10, {}),
        ('sliding-window(x)', 10, {}),
        ('star-of-trees(5)', 20, {}),
        ('clique-burst(12)', 10, {}),
        ('forest', 1, {}),
        ('forest', 10, {'delete_prob': 1.0}),
        ('forest', 10, {'steps': -1}),
    ])
    def test_bad_requests(self, kind, n, kwargs):
        with pytest.raises(ConfigError):
            generate_stream(kind, n, **kwargs)
