"""
Dynamic Colouring Engine (fixed thresholds)

Maintains a proper colouring with at most Delta_max + beta*d colours
under edge insertions and deletions, where d = 4*alpha_max by default.

Two invariants are kept on the level partition after every update:
1. deg+(v) <= beta*d            (few out-neighbours)
2. deg_{Z_{l(v)-1}}(v) >= d     (enough support below, for l(v) > 1)

An edge uv with l(u) <= l(v) takes the smallest colour free in u's
out-palette and v's full palette. If that colour is already held at u it
belongs to an edge towards a strictly lower level, which is uncoloured
and recoloured in turn, so the cascade shortens at every step.
"""

import logging
from typing import Dict, Iterator, List, Set

from .colouring import ColouringState, EngineStats, align_palettes
from .config import PartitionConfig
from .errors import ColouringError, InvariantError, LevelError, MissingEdgeError
from .graph import Edge, LevelledAdjacency, edge_key
from .palette import Palette, find_joint_free

logger = logging.getLogger(__name__)


class DynamicMaxEngine:
    """Fully dynamic Delta_max + O(alpha_max) edge colourer."""

    name = "dynamic-max"

    def __init__(self, config: PartitionConfig, debug: bool = False):
        self.config = config
        self.debug = debug
        n = config.capacity
        self.graph = LevelledAdjacency(n, config.k)
        self.state = ColouringState(n)
        self._out: List[Palette] = [Palette() for _ in range(n)]

        self._dirty: List[int] = []
        self._in_dirty = [False] * n
        self._pending: List[Edge] = []
        self._saturated: Set[int] = set()

        self.stats = EngineStats()
        self.delta_seen = 0

    # ------------------------------------------------------------------
    # thresholds (overridden by the adaptive engine)
    # ------------------------------------------------------------------

    def upper_bound(self, v: int) -> float:
        """Invariant 1 cap on deg+(v)."""
        return self.config.out_bound

    def lower_bound(self, v: int) -> float:
        """Invariant 2 floor on deg_{Z_{l(v)-1}}(v)."""
        return self.config.d

    def colour_limit(self, edge: Edge) -> float:
        """Largest colour this edge may hold."""
        delta = max(self.config.delta_max, self.delta_seen)
        return delta + self.config.out_bound

    # ------------------------------------------------------------------
    # accessors
    # ------------------------------------------------------------------

    @property
    def colours(self) -> Dict[Edge, int]:
        return self.state.colours

    def palette(self, v: int) -> Palette:
        return self.state.full[v]

    def out_palette(self, v: int) -> Palette:
        return self._out[v]

    def level(self, v: int) -> int:
        return self.graph.level(v)

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def edges(self) -> Iterator[Edge]:
        return self.graph.edges()

    def dirty_vertices(self) -> List[int]:
        return list(self._dirty)

    def max_colour(self) -> int:
        return self.state.max_colour()

    def max_level(self) -> int:
        return max(self.graph.levels())

    # ------------------------------------------------------------------
    # public updates
    # ------------------------------------------------------------------

    def insert(self, u: int, v: int) -> int:
        """Add edge uv, restore the invariants, colour it. Returns its colour."""
        key = self.graph.attach_edge(u, v)
        self.delta_seen = max(self.delta_seen, self.graph.degree(u), self.graph.degree(v))
        self._touch(u)
        self._touch(v)
        self._pending.append(key)
        self.recover()
        self._flush_pending()
        return self.state.colours[key]

    def delete(self, u: int, v: int) -> None:
        key = edge_key(u, v)
        if not self.graph.has_edge(*key):
            raise MissingEdgeError(key)
        if key in self.state.colours:
            self._uncolour(key)
        self.graph.detach_edge(key)
        self._after_detach(key)
        self._touch(u)
        self._touch(v)
        self.recover()
        self._flush_pending()
        for w in key:
            self.state.full[w].ensure_capacity(self.graph.degree(w))
            self._out[w].ensure_capacity(self.graph.out_degree(w))

    def _after_detach(self, edge: Edge) -> None:
        """Hook run once the edge is gone but before Recover."""

    # ------------------------------------------------------------------
    # colouring
    # ------------------------------------------------------------------

    def _colour_edge(self, edge: Edge, colour: int) -> None:
        self.state.assign(edge, colour)
        a, b = edge
        for x, y in ((a, b), (b, a)):
            if self.graph.level(y) >= self.graph.level(x):
                self._out[x].reserve(colour)
                self._out[x].mark(colour, edge)

    def _uncolour(self, edge: Edge) -> int:
        colour = self.state.release(edge)
        a, b = edge
        for x, y in ((a, b), (b, a)):
            if self.graph.level(y) >= self.graph.level(x):
                self._out[x].unmark(colour)
        return colour

    def recolour(self, u: int, v: int) -> int:
        """
        Colour the uncoloured edge uv and settle any cascade.

        Returns the colour given to uv.
        """
        key = edge_key(u, v)
        if not self.graph.has_edge(*key):
            raise MissingEdgeError(key)
        if key in self.state.colours:
            raise ColouringError(f"edge {key} is already coloured")

        first = None
        while True:
            if self.graph.level(u) > self.graph.level(v):
                u, v = v, u
            out_u, full_v = self._out[u], self.state.full[v]
            align_palettes((out_u, full_v), out_u.used_count + full_v.used_count + 1)
            colour = find_joint_free(out_u, full_v)
            self.stats.palette_searches += 1

            conflict = self.state.full[u].owner_of(colour)
            if conflict is not None:
                w = conflict[0] if conflict[1] == u else conflict[1]
                if self.debug and self.graph.level(w) >= self.graph.level(u):
                    raise InvariantError(
                        f"colour {colour} at {u} held by {conflict} with l({w}) >= l({u})"
                    )
                self._uncolour(conflict)

            self._colour_edge(key, colour)
            self.stats.recolours += 1
            if first is None:
                first = colour
            if conflict is None:
                return first

            self.stats.cascade_steps += 1
            logger.debug("cascade: %s takes %d, %s recoloured", key, colour, conflict)
            key, u, v = conflict, w, u

    def _flush_pending(self) -> None:
        while self._pending:
            edge = self._pending.pop()
            if edge in self.state.colours or not self.graph.has_edge(*edge):
                continue
            self.recolour(*edge)

    # ------------------------------------------------------------------
    # level maintenance
    # ------------------------------------------------------------------

    def _too_many_out(self, v: int) -> bool:
        return self.graph.out_degree(v) > self.upper_bound(v)

    def _too_few_down(self, v: int) -> bool:
        return self.graph.level(v) > 1 and self.graph.down_degree(v) < self.lower_bound(v)

    def is_dirty(self, v: int) -> bool:
        if self._too_many_out(v):
            if self.graph.level(v) < self.graph.max_level:
                return True
            if v not in self._saturated:
                self._saturated.add(v)
                self.stats.saturated += 1
                logger.warning(
                    "vertex %d exceeds the out-degree bound at the top level %d; "
                    "the declared arboricity is too small",
                    v, self.graph.level(v),
                )
            return False
        return self._too_few_down(v)

    def _touch(self, v: int) -> None:
        if not self._in_dirty[v] and self.is_dirty(v):
            self._in_dirty[v] = True
            self._dirty.append(v)

    def recover(self) -> None:
        """Fix dirty vertices until none remain."""
        while self._dirty:
            v = self._dirty.pop()
            self._in_dirty[v] = False
            if not self.is_dirty(v):
                continue
            if self._too_many_out(v):
                self.increment(v)
            else:
                self.decrement(v)

    def _rebuild_out_palette(self, v: int) -> None:
        palette = Palette()
        colours = self.state.colours
        for u in self.graph.out_neighbours(v):
            key = edge_key(u, v)
            colour = colours.get(key)
            if colour is not None:
                palette.reserve(colour)
                palette.mark(colour, key)
        self._out[v] = palette

    def increment(self, v: int) -> None:
        """Move v up one level."""
        if not self._too_many_out(v):
            raise LevelError(f"vertex {v} does not exceed its out-degree bound")
        i = self.graph.level(v)
        moved = self.graph.split_out_list(v)
        self.stats.level_moves += 1
        self.stats.increments += 1
        self.stats.moved_entries += len(moved)

        self._rebuild_out_palette(v)
        colours = self.state.colours
        for u in moved:
            if self.graph.level(u) == i + 1:
                key = edge_key(u, v)
                colour = colours.get(key)
                if colour is not None:
                    self._out[u].reserve(colour)
                    self._out[u].mark(colour, key)
        logger.debug("increment %d: %d -> %d (%d entries)", v, i, i + 1, len(moved))

        self._touch(v)
        for u in moved:
            self._touch(u)

    def decrement(self, v: int) -> None:
        """Move v down one level."""
        i = self.graph.level(v)
        if i <= 1:
            raise LevelError(f"vertex {v} is at level 1")
        if not self._too_few_down(v):
            raise LevelError(f"vertex {v} has enough neighbours below")

        colours = self.state.colours
        for u in self.graph.out_neighbours(v):
            if self.graph.level(u) == i:
                key = edge_key(u, v)
                colour = colours.get(key)
                if colour is not None:
                    self._out[u].unmark(colour)
        moved = self.graph.merge_down(v)
        self.stats.level_moves += 1
        self.stats.decrements += 1
        self.stats.moved_entries += self.graph.out_degree(v)

        self._rebuild_out_palette(v)
        logger.debug("decrement %d: %d -> %d", v, i, i - 1)

        self._touch(v)
        for u in moved:
            self._touch(u)
