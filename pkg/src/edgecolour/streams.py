"""
Update Streams

Text format (vertex ids 0-based, '#' starts a comment):

    n 5
    + 0 1
    + 1 2
    - 0 1

Generators build streams with a known arboricity bound:
- forest, forests(f): every insertion stays acyclic inside one of f forests
- grid-planar: subgraph of a triangulated grid (planar, alpha <= 3)
- erdos-renyi(p): random pairs hovering around density p
- sliding-window(w): random pairs, the oldest dropped beyond w live edges
- star-of-trees(D): a tree on D^2 + 1 vertices where greedy needs 2D - 1 colours
- clique-burst(c): random tree, then a c-clique inserted and deleted again
"""

import logging
import os
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

import numpy as np

from .errors import ConfigError, StreamError
from .graph import Edge, edge_key

logger = logging.getLogger(__name__)

INSERT = '+'
DELETE = '-'

KINDS = (
    'forest', 'forests', 'grid-planar', 'erdos-renyi',
    'sliding-window', 'star-of-trees', 'clique-burst',
)

_KIND_RE = re.compile(r'^\s*([a-z-]+)\s*(?:\(\s*([^)]*?)\s*\))?\s*$')
_TOKEN_RE = re.compile(r'\S+')


class Event(NamedTuple):
    op: str         # '+' or '-'
    u: int
    v: int

    @property
    def edge(self) -> Edge:
        return edge_key(self.u, self.v)


@dataclass
class UpdateStream:
    capacity: int
    events: List[Event] = field(default_factory=list)
    label: str = ""
    alpha: Optional[int] = None     # constructive arboricity bound, if known

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    @property
    def has_deletes(self) -> bool:
        return any(e.op == DELETE for e in self.events)

    def validate(self) -> "UpdateStream":
        """Replay against a live-edge set; line numbers count the header."""
        live: Set[Edge] = set()
        for i, event in enumerate(self.events):
            line = i + 2
            _check_event(event, self.capacity, live, line)
            if event.op == INSERT:
                live.add(event.edge)
            else:
                live.discard(event.edge)
        return self

    def final_edges(self) -> List[Edge]:
        live: Dict[Edge, None] = {}
        for event in self.events:
            if event.op == INSERT:
                live[event.edge] = None
            else:
                live.pop(event.edge, None)
        return list(live)

    def to_text(self) -> str:
        lines = [f"n {self.capacity}"]
        lines.extend(f"{e.op} {e.u} {e.v}" for e in self.events)
        return "\n".join(lines) + "\n"


def _check_event(event: Event, capacity: int, live: Set[Edge], line: int,
                 columns: Tuple[int, int, int] = (1, 3, 5)) -> None:
    op_col, u_col, v_col = columns
    if event.op not in (INSERT, DELETE):
        raise StreamError(f"unknown operation {event.op!r}", line, op_col)
    for value, col in ((event.u, u_col), (event.v, v_col)):
        if not 0 <= value < capacity:
            raise StreamError(f"vertex {value} out of range [0, {capacity})", line, col)
    if event.u == event.v:
        raise StreamError(f"self-loop at vertex {event.u}", line, v_col)
    if event.op == INSERT and event.edge in live:
        raise StreamError(f"duplicate insert of live edge {event.edge}", line, op_col)
    if event.op == DELETE and event.edge not in live:
        raise StreamError(f"illegal delete of absent edge {event.edge}", line, op_col)


def parse_stream(text: str, label: str = "") -> UpdateStream:
    """Parse and validate stream text; errors carry 1-based line and column."""
    capacity = None
    events: List[Event] = []
    live: Set[Edge] = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split('#', 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(content)]
        if not tokens:
            continue

        if capacity is None:
            if tokens[0][0] != 'n' or len(tokens) != 2:
                raise StreamError("expected header 'n <capacity>'", lineno, tokens[0][1])
            try:
                capacity = int(tokens[1][0])
            except ValueError:
                raise StreamError(f"capacity {tokens[1][0]!r} is not an integer",
                                  lineno, tokens[1][1])
            if capacity < 1:
                raise StreamError("capacity must be >= 1", lineno, tokens[1][1])
            continue

        if len(tokens) != 3:
            raise StreamError(f"expected '+|- u v', got {len(tokens)} fields",
                              lineno, tokens[0][1])
        (op, op_col), (u_raw, u_col), (v_raw, v_col) = tokens
        if op not in (INSERT, DELETE):
            raise StreamError(f"unknown operation {op!r}", lineno, op_col)
        ids = []
        for raw_id, col in ((u_raw, u_col), (v_raw, v_col)):
            try:
                ids.append(int(raw_id))
            except ValueError:
                raise StreamError(f"vertex id {raw_id!r} is not an integer", lineno, col)
        event = Event(op, ids[0], ids[1])
        _check_event(event, capacity, live, lineno, (op_col, u_col, v_col))
        if op == INSERT:
            live.add(event.edge)
        else:
            live.discard(event.edge)
        events.append(event)

    if capacity is None:
        raise StreamError("missing header 'n <capacity>'", 1, 1)
    return UpdateStream(capacity=capacity, events=events, label=label)


def load_stream(path: str) -> UpdateStream:
    with open(path, 'rb') as f:
        raw = f.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        lineno = raw.count(b'\n', 0, e.start) + 1
        col = e.start - (raw.rfind(b'\n', 0, e.start) + 1) + 1
        raise StreamError(f"byte {raw[e.start]:#04x} is not valid UTF-8", lineno, col)
    return parse_stream(text, label=os.path.basename(path))



def save_stream(stream: UpdateStream, path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(stream.to_text())


# ----------------------------------------------------------------------
# generators
# ----------------------------------------------------------------------

class _EdgePool:
    """Live edges with O(1) random pick and removal."""

    def __init__(self):
        self.items: List[Edge] = []
        self.index: Dict[Edge, int] = {}

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, edge: Edge) -> bool:
        return edge in self.index

    def add(self, edge: Edge):
        self.index[edge] = len(self.items)
        self.items.append(edge)

    def remove(self, edge: Edge):
        i = self.index.pop(edge)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.index[last] = i

    def pick(self, rng: np.random.Generator) -> Edge:
        return self.items[int(rng.integers(len(self.items)))]


class _Forest:
    """Union-find over one forest's edges, rebuilt after a deletion."""

    def __init__(self, n: int):
        self.n = n
        self.edges: Set[Edge] = set()
        self.parent = list(range(n))
        self.stale = False

    def find(self, x: int) -> int:
        if self.stale:
            self._rebuild()
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def _rebuild(self):
        self.stale = False
        self.parent = list(range(self.n))
        for u, v in sorted(self.edges):
            self.parent[self.find(u)] = self.find(v)

    def can_join(self, u: int, v: int) -> bool:
        return self.find(u) != self.find(v)

    def join(self, edge: Edge):
        u, v = edge
        self.parent[self.find(u)] = self.find(v)
        self.edges.add(edge)

    def cut(self, edge: Edge):
        self.edges.discard(edge)
        self.stale = True

    def spanning(self) -> bool:
        return len(self.edges) == self.n - 1


def _parse_kind(kind: str) -> Tuple[str, Optional[str]]:
    match = _KIND_RE.match(kind)
    if not match or match.group(1) not in KINDS:
        raise ConfigError(f"unknown stream kind {kind!r}; choose from {', '.join(KINDS)}")
    return match.group(1), match.group(2)


def _int_param(name: str, raw: Optional[str], default: int, minimum: int) -> int:
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} parameter {raw!r} is not an integer")
    if value < minimum:
        raise ConfigError(f"{name} parameter must be >= {minimum}, got {value}")
    return value


def _float_param(name: str, raw: Optional[str], default: float) -> float:
    if raw is None or raw == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{name} parameter {raw!r} is not a number")
    if not 0 < value <= 1:
        raise ConfigError(f"{name} parameter must be in (0, 1], got {value}")
    return value


def _random_pair(rng: np.random.Generator, n: int) -> Edge:
    u = int(rng.integers(n))
    v = int(rng.integers(n - 1))
    if v >= u:
        v += 1
    return edge_key(u, v)


def _join_components(rng, n, forests: List[_Forest], try_insert) -> bool:
    """Near-spanning fallback: connect a random vertex to another component."""
    for forest in forests:
        if forest.spanning():
            continue
        roots = [forest.find(x) for x in range(n)]
        u = int(rng.integers(n))
        others = [x for x in range(n) if roots[x] != roots[u]]
        for i in rng.permutation(len(others)):
            if try_insert(edge_key(u, others[int(i)])):
                return True
    return False


def _gen_forests(rng, n, steps, f, delete_prob) -> List[Event]:
    forests = [_Forest(n) for _ in range(f)]
    owner: Dict[Edge, int] = {}
    pool = _EdgePool()
    events = []

    def try_insert(edge: Edge) -> bool:
        if edge in pool:
            return False
        for i, forest in enumerate(forests):
            if forest.can_join(*edge):
                forest.join(edge)
                owner[edge] = i
                pool.add(edge)
                events.append(Event(INSERT, edge[0], edge[1]))
                return True
        return False

    def delete_one():
        edge = pool.pick(rng)
        pool.remove(edge)
        forests[owner.pop(edge)].cut(edge)
        events.append(Event(DELETE, edge[0], edge[1]))

    while len(events) < steps:
        if len(pool) and rng.random() < delete_prob:
            delete_one()
            continue
        if all(forest.spanning() for forest in forests):
            delete_one()
            continue
        if any(try_insert(_random_pair(rng, n)) for _ in range(64)):
            continue
        if not _join_components(rng, n, forests, try_insert):
            if not len(pool):
                break
            delete_one()
    return events


def _grid_candidates(n: int) -> List[Edge]:
    width = max(1, int(np.ceil(np.sqrt(n))))
    candidates = []
    for v in range(n):
        r, c = divmod(v, width)
        right = v + 1 if c + 1 < width else None
        down = v + width
        diagonal = v + width + 1 if c + 1 < width else None
        for w in (right, down, diagonal):
            if w is not None and w < n:
                candidates.append((v, w))
    return candidates


def _gen_grid(rng, n, steps, delete_prob) -> List[Event]:
    absent = _EdgePool()
    for edge in _grid_candidates(n):
        absent.add(edge)
    live = _EdgePool()
    events = []
    if not len(absent):
        return events
    while len(events) < steps:
        deleting = len(live) and (not len(absent) or rng.random() < delete_prob)
        source, target, op = (live, absent, DELETE) if deleting else (absent, live, INSERT)
        edge = source.pick(rng)
        source.remove(edge)
        target.add(edge)
        events.append(Event(op, edge[0], edge[1]))
    return events


def _absent_pair(rng, n, live: _EdgePool) -> Optional[Edge]:
    for _ in range(64):
        edge = _random_pair(rng, n)
        if edge not in live:
            return edge
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in live:
                return (u, v)
    return None


def _gen_erdos_renyi(rng, n, steps, p, delete_prob) -> List[Event]:
    target = max(1, int(round(p * n * (n - 1) / 2)))
    live = _EdgePool()
    events = []
    while len(events) < steps:
        deleting = len(live) and (len(live) >= target or rng.random() < delete_prob)
        edge = live.pick(rng) if deleting else _absent_pair(rng, n, live)
        if deleting:
            live.remove(edge)
            events.append(Event(DELETE, edge[0], edge[1]))
        else:
            live.add(edge)
            events.append(Event(INSERT, edge[0], edge[1]))
    return events


def _gen_sliding_window(rng, n, steps, window) -> List[Event]:
    live = _EdgePool()
    order = deque()
    events = []
    max_edges = n * (n - 1) // 2
    while len(events) < steps:
        if len(live) >= min(window, max_edges):
            edge = order.popleft()
            live.remove(edge)
            events.append(Event(DELETE, edge[0], edge[1]))
            continue
        edge = _absent_pair(rng, n, live)
        live.add(edge)
        order.append(edge)
        events.append(Event(INSERT, edge[0], edge[1]))
    return events


def _gen_star_of_trees(n, degree) -> List[Event]:
    """
    D-1 stars with D-1 leaves each, then u with D-1 leaves, then v joined
    to every star centre, then uv. Greedy colours uv with 2D - 1.
    """
    needed = degree * degree + 1
    if n < needed:
        raise ConfigError(f"star-of-trees({degree}) needs n >= {needed}, got {n}")
    events = []
    nxt = 0

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    centres = []
    for _ in range(degree - 1):
        centre = fresh()
        centres.append(centre)
        for _ in range(degree - 1):
            events.append(Event(INSERT, centre, fresh()))
    u = fresh()
    for _ in range(degree - 1):
        events.append(Event(INSERT, u, fresh()))
    v = fresh()
    for centre in centres:
        events.append(Event(INSERT, v, centre))
    events.append(Event(INSERT, u, v))
    return events


def _gen_clique_burst(rng, n, size) -> List[Event]:
    if size > n:
        raise ConfigError(f"clique-burst({size}) needs n >= {size}, got {n}")
    tree: Set[Edge] = set()
    events = []
    for v in range(1, n):
        edge = edge_key(int(rng.integers(v)), v)
        tree.add(edge)
        events.append(Event(INSERT, edge[0], edge[1]))

    members = sorted(int(x) for x in rng.choice(n, size=size, replace=False))
    burst = [
        (a, b) for i, a in enumerate(members) for b in members[i + 1:]
        if (a, b) not in tree
    ]
    events.extend(Event(INSERT, a, b) for a, b in burst)
    for i in rng.permutation(len(burst)):
        a, b = burst[int(i)]
        events.append(Event(DELETE, a, b))
    return events


def generate_stream(
    kind: str,
    n: int,
    steps: Optional[int] = None,
    seed: int = 0,
    delete_prob: float = 0.0,
) -> UpdateStream:
    """
    Deterministic stream for (kind, n, steps, seed, delete_prob).

    `steps` caps the event count; random kinds default to 10 * n events,
    star-of-trees and clique-burst to their full construction.
    """
    name, raw = _parse_kind(kind)
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}")
    if steps is not None and steps < 0:
        raise ConfigError(f"steps must be >= 0, got {steps}")
    if not 0 <= delete_prob < 1:
        raise ConfigError(f"delete_prob must be in [0, 1), got {delete_prob}")

    rng = np.random.default_rng(seed)
    budget = 10 * n if steps is None else steps
    alpha = None

    if name == 'forest':
        if raw:
            raise ConfigError("forest takes no parameter; use forests(f)")
        events = _gen_forests(rng, n, budget, 1, delete_prob)
        alpha = 1
    elif name == 'forests':
        f = _int_param('forests', raw, 1, 1)
        events = _gen_forests(rng, n, budget, f, delete_prob)
        alpha = f
    elif name == 'grid-planar':
        events = _gen_grid(rng, n, budget, delete_prob)
        alpha = 3
    elif name == 'erdos-renyi':
        p = _float_param('erdos-renyi', raw, 0.1)
        events = _gen_erdos_renyi(rng, n, budget, p, delete_prob)
    elif name == 'sliding-window':
        window = _int_param('sliding-window', raw, n, 1)
        events = _gen_sliding_window(rng, n, budget, window)
    elif name == 'star-of-trees':
        degree = _int_param('star-of-trees', raw, 8, 2)
        events = _gen_star_of_trees(n, degree)
        alpha = 1
    else:
        size = _int_param('clique-burst', raw, 12, 2)
        events = _gen_clique_burst(rng, n, size)

    if steps is not None:
        events = events[:steps]
    label = f"{kind}:n={n}:seed={seed}"
    logger.debug("generated %s with %d events", label, len(events))
    return UpdateStream(capacity=n, events=events, label=label, alpha=alpha)
