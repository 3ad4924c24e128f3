"""
Adaptive Colouring Engine

Same machinery as the fixed-threshold engine, but levels are blocked into
groups of L levels and a vertex in group g only promises an out-degree of
about 2^g. Its edges are then coloured within Delta(uv) + 2*beta*d(u),
where u is the lower endpoint and d(u) = 2^g(u), so the colour count
follows the current degree and arboricity instead of their maxima.

Why this matters:
- A dense block that comes and goes leaves no large colours behind
- After a deletion only one colour per group can have become too large
"""

import logging
import math

from .config import GroupedConfig
from .dynamic_max import DynamicMaxEngine
from .errors import LevelError
from .graph import Edge, edge_key

logger = logging.getLogger(__name__)


class AdaptiveEngine(DynamicMaxEngine):
    """Delta(uv) + O(alpha) dynamic edge colourer."""

    name = "dynamic-adaptive"

    def __init__(self, config: GroupedConfig, debug: bool = False):
        super().__init__(config, debug=debug)
        # floor(2 * beta * 2^g) for each group g
        self._group_slack = [0] + [
            math.floor(2 * config.beta * 2 ** g) for g in range(1, config.groups + 1)
        ]

    def cap(self, v: int) -> int:
        """d(v)."""
        return self.config.cap(self.graph.level(v))

    def upper_bound(self, v: int) -> float:
        return 2 * self.config.beta * self.cap(v)

    def lower_bound(self, v: int) -> float:
        return self.cap(v)

    def _lower_endpoint(self, edge: Edge) -> int:
        a, b = edge
        return a if self.graph.level(a) <= self.graph.level(b) else b

    def _edge_delta(self, edge: Edge) -> int:
        return max(self.graph.degree(edge[0]), self.graph.degree(edge[1]))

    def colour_limit(self, edge: Edge) -> float:
        """Delta(uv) + 2*beta*d(u) for the lower endpoint u."""
        return self._edge_delta(edge) + 2 * self.config.beta * self.cap(self._lower_endpoint(edge))

    def strict_limit(self, edge: Edge) -> int:
        """Bound every search result satisfies: Delta(uv) + floor(2*beta*d(u)) - 1."""
        group = self.config.group_of(self.graph.level(self._lower_endpoint(edge)))
        return self._edge_delta(edge) + self._group_slack[group] - 1

    def _after_detach(self, edge: Edge) -> None:
        """
        Probe each endpoint once per group for the colour the degree drop
        invalidated: old degree + floor(2*beta*2^g) - 1.
        """
        for w in edge:
            old_degree = self.graph.degree(w) + 1
            palette = self.state.full[w]
            for g in range(1, self.config.groups + 1):
                colour = old_degree + self._group_slack[g] - 1
                owner = palette.owner_of(colour)
                if owner is None or colour <= self.strict_limit(owner):
                    continue
                self._uncolour(owner)
                self._pending.append(owner)
                self.stats.adaptation_recolours += 1
                logger.debug("adaptation: %s dropped colour %d after deletion at %d",
                             owner, colour, w)

    def adaptive_decrement(self, v: int) -> None:
        """
        Decrement v and recolour every edge to its former out-neighbours,
        since their lower endpoint now sits at a smaller cap.
        """
        if self.graph.level(v) <= 1:
            raise LevelError(f"vertex {v} is at level 1")
        if not self._too_few_down(v):
            raise LevelError(f"vertex {v} has enough neighbours below")

        former = self.graph.out_neighbours(v)
        released = []
        for u in former:
            key = edge_key(u, v)
            if key in self.state.colours:
                self._uncolour(key)
                released.append(key)
        super().decrement(v)
        self._pending.extend(released)
        self.stats.adaptation_recolours += len(released)

    decrement = adaptive_decrement
