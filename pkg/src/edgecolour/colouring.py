"""
Colouring State and Greedy Baseline

ColouringState is the edge -> colour map every algorithm produces, with a
full palette per vertex kept in sync. GreedyColourer is the classic
dynamic 2*Delta(uv) - 1 colourer used as the comparison baseline.
"""

from dataclasses import asdict, dataclass
from typing import Dict, Iterable, Iterator, List

from .errors import ColouringError, MissingEdgeError
from .graph import Edge, SimpleGraph, edge_key
from .palette import Palette, find_joint_free


@dataclass
class EngineStats:
    """Work counters exposed for metrics."""
    palette_searches: int = 0
    recolours: int = 0              # every colour assignment
    cascade_steps: int = 0          # recolours forced by a conflict
    level_moves: int = 0            # increments + decrements
    moved_entries: int = 0          # list entries touched by level moves
    increments: int = 0
    decrements: int = 0
    adaptation_recolours: int = 0   # edges recoloured after a degree drop
    saturated: int = 0              # increments refused at the top level

    @property
    def recourse(self) -> int:
        return self.level_moves + self.cascade_steps

    def as_dict(self) -> Dict[str, int]:
        data = asdict(self)
        data['recourse'] = self.recourse
        return data


def align_palettes(palettes: Iterable[Palette], need: int) -> None:
    """Grow palettes to one common capacity that fits colour `need`."""
    palettes = list(palettes)
    target = max([need] + [p.capacity for p in palettes])
    for p in palettes:
        p.reserve(target)


class ColouringState:
    """Edge colours plus a full palette per vertex."""

    def __init__(self, n: int):
        self.n = n
        self.colours: Dict[Edge, int] = {}
        self.full: List[Palette] = [Palette() for _ in range(n)]
        self.peak = 0               # largest colour ever assigned

    def assign(self, edge: Edge, colour: int) -> None:
        key = edge_key(*edge)
        if key in self.colours:
            raise ColouringError(f"edge {key} is already coloured")
        for w in key:
            self.full[w].reserve(colour)
            self.full[w].mark(colour, key)
        self.colours[key] = colour
        if colour > self.peak:
            self.peak = colour

    def release(self, edge: Edge) -> int:
        key = edge_key(*edge)
        colour = self.colours.pop(key, None)
        if colour is None:
            raise MissingEdgeError(key)
        for w in key:
            self.full[w].unmark(colour)
        return colour

    def max_colour(self) -> int:
        return max(self.colours.values(), default=0)


class GreedyColourer:
    """
    Dynamic greedy baseline: each new edge takes the smallest colour free
    at both endpoints, which is at most 2*Delta(uv) - 1. Deletions never
    trigger recolouring.
    """

    name = "greedy-baseline"

    def __init__(self, capacity: int):
        self.graph = SimpleGraph(capacity)
        self.state = ColouringState(capacity)
        self.stats = EngineStats()
        self.delta_seen = 0

    @property
    def colours(self) -> Dict[Edge, int]:
        return self.state.colours

    def palette(self, v: int) -> Palette:
        return self.state.full[v]

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def edges(self) -> Iterator[Edge]:
        return iter(list(self.state.colours))

    def max_colour(self) -> int:
        return self.state.max_colour()

    def colour_limit(self, edge: Edge) -> int:
        return 2 * self.delta_seen - 1

    def insert(self, u: int, v: int) -> int:
        key = self.graph.add_edge(u, v)
        self.delta_seen = max(self.delta_seen, self.graph.degree(u), self.graph.degree(v))
        pu, pv = self.state.full[u], self.state.full[v]
        align_palettes((pu, pv), pu.used_count + pv.used_count + 1)
        colour = find_joint_free(pu, pv)
        self.stats.palette_searches += 1
        self.state.assign(key, colour)
        self.stats.recolours += 1
        return colour

    def delete(self, u: int, v: int) -> None:
        key = self.graph.remove_edge(u, v)
        self.state.release(key)
