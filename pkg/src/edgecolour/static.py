"""
Static Colouring

Offline algorithms over a fixed SimpleGraph:
- degeneracy_order: repeated minimum-degree removal
- colour_by_order: Delta(uv) + 2*alpha - 2 colouring along that order
- build_hpartition: peel low active-degree vertices into levels H_1..H_k
- colour_by_partition: Delta(uv) + d - 1 colouring, top level first
"""

import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

from .colouring import ColouringState, align_palettes
from .errors import ColouringError, ConfigError
from .graph import SimpleGraph
from .palette import find_joint_free

logger = logging.getLogger(__name__)


@dataclass
class DegeneracyOrder:
    order: List[int]            # v_1 .. v_n, first removed first
    degeneracy: int             # max forward neighbours of any v_i

    def positions(self) -> List[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


@dataclass
class StaticHPartition:
    levels: List[int]           # vertex -> level in 1..k
    k: int
    d: int                      # out-degree threshold
    z_sizes: List[int] = field(default_factory=list)   # |Z_1|, |Z_2|, ...

    def members(self, level: int) -> List[int]:
        return [v for v, l in enumerate(self.levels) if l == level]


def degeneracy_order(graph: SimpleGraph) -> DegeneracyOrder:
    """Matula-Beck peeling; ties go to the lowest vertex id."""
    n = graph.n
    remaining = [graph.degree(v) for v in range(n)]
    removed = [False] * n
    heap = [(remaining[v], v) for v in range(n)]
    heapq.heapify(heap)

    order = []
    degeneracy = 0
    while heap:
        deg, v = heapq.heappop(heap)
        if removed[v] or deg != remaining[v]:
            continue
        removed[v] = True
        order.append(v)
        degeneracy = max(degeneracy, deg)
        for w in graph.neighbours(v):
            if not removed[w]:
                remaining[w] -= 1
                heapq.heappush(heap, (remaining[w], w))
    return DegeneracyOrder(order=order, degeneracy=degeneracy)


def _colour_edge(state: ColouringState, u: int, w: int) -> int:
    pu, pw = state.full[u], state.full[w]
    align_palettes((pu, pw), pu.used_count + pw.used_count + 1)
    colour = find_joint_free(pu, pw)
    state.assign((u, w), colour)
    return colour


def colour_by_order(
    graph: SimpleGraph,
    order: Union[DegeneracyOrder, Sequence[int]],
) -> ColouringState:
    """
    Colour the edges from v_i to later vertices for i = n-1 .. 1.

    When v_i is processed every coloured edge at v_i leads to a later
    vertex, so its full palette is its out-palette.
    """
    sequence = list(order.order if isinstance(order, DegeneracyOrder) else order)
    if sorted(sequence) != list(range(graph.n)):
        raise ColouringError("order is not a permutation of the vertices")

    pos = [0] * graph.n
    for i, v in enumerate(sequence):
        pos[v] = i

    state = ColouringState(graph.n)
    for i in range(graph.n - 1, -1, -1):
        v = sequence[i]
        for w in sorted(w for w in graph.neighbours(v) if pos[w] > i):
            _colour_edge(state, v, w)
    return state


def build_hpartition(
    graph: SimpleGraph,
    alpha: int,
    epsilon: Optional[float] = None,
) -> StaticHPartition:
    """
    Peel vertices level by level.

    H_i takes every active vertex whose active degree is at most d when
    iteration i starts; vertices that drop below d during the iteration
    wait for H_{i+1}.
    """
    if alpha < 1:
        raise ConfigError(f"alpha must be >= 1, got {alpha}")
    if epsilon is not None and epsilon <= 0:
        raise ConfigError(f"epsilon must be > 0, got {epsilon}")
    d = 4 * alpha if epsilon is None else math.ceil((2 + epsilon) * alpha)

    n = graph.n
    levels = [0] * n
    active_degree = [graph.degree(v) for v in range(n)]
    active = set(range(n))
    z_sizes = []
    level = 0

    while active:
        level += 1
        z_sizes.append(len(active))
        peeled = sorted(v for v in active if active_degree[v] <= d)
        if not peeled:
            raise ColouringError(
                f"no vertex of active degree <= {d} at level {level}; "
                f"alpha={alpha} is below the arboricity"
            )
        for v in peeled:
            levels[v] = level
            active.discard(v)
        for v in peeled:
            for w in graph.neighbours(v):
                if w in active:
                    active_degree[w] -= 1
        logger.debug("level %d: peeled %d, %d left", level, len(peeled), len(active))

    return StaticHPartition(levels=levels, k=max(level, 1), d=d, z_sizes=z_sizes)


def validate_partition(graph: SimpleGraph, partition: StaticHPartition) -> None:
    """Reject partitions whose levels are out of range or too dense."""
    if len(partition.levels) != graph.n:
        raise ColouringError("partition does not cover every vertex")
    for v, lv in enumerate(partition.levels):
        if not 1 <= lv <= partition.k:
            raise ColouringError(f"vertex {v} has level {lv} outside [1, {partition.k}]")
        up = sum(1 for w in graph.neighbours(v) if partition.levels[w] >= lv)
        if up > partition.d:
            raise ColouringError(
                f"vertex {v} has {up} neighbours at or above level {lv} (d={partition.d})"
            )


def colour_by_partition(graph: SimpleGraph, partition: StaticHPartition) -> ColouringState:
    """Colour edges from H_i to H_{j >= i} for i = k .. 1."""
    validate_partition(graph, partition)
    levels = partition.levels
    state = ColouringState(graph.n)
    for i in range(partition.k, 0, -1):
        for v in partition.members(i):
            for w in sorted(graph.neighbours(v)):
                if levels[w] > i or (levels[w] == i and w > v):
                    _colour_edge(state, v, w)
    return state
