"""
Levelled Adjacency

The dynamic graph every engine mutates. Each vertex v sits at a level
l(v) >= 1 and keeps its neighbours in buckets:

- OUT: neighbours u with l(u) >= l(v)  (the out-list, N_Z(v))
- j:   neighbours u with l(u) = j < l(v)  (down bucket N_H_j(v))

Same-level edges therefore appear in both out-lists. Lists are doubly
linked inside one shared arena; each edge keeps a handle to its entry in
both endpoints' lists, so removal and bucket moves are O(1) and handles
stay valid while an entry migrates between buckets.
"""

from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from .errors import (
    DuplicateEdgeError, LevelError, MissingEdgeError,
    SelfLoopError, VertexRangeError,
)

Edge = Tuple[int, int]

OUT = 0
NIL = -1


def edge_key(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class SimpleGraph:
    """Static simple graph used by the offline algorithms and the oracle."""

    def __init__(self, n: int):
        if n < 0:
            raise VertexRangeError(n, 0)
        self.n = n
        self.adj: List[Set[int]] = [set() for _ in range(n)]
        self._m = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "SimpleGraph":
        graph = cls(n)
        for u, v in edges:
            graph.add_edge(u, v)
        return graph

    def add_edge(self, u: int, v: int) -> Edge:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise VertexRangeError(x, self.n)
        if u == v:
            raise SelfLoopError(u)
        if v in self.adj[u]:
            raise DuplicateEdgeError(edge_key(u, v))
        self.adj[u].add(v)
        self.adj[v].add(u)
        self._m += 1
        return edge_key(u, v)

    def remove_edge(self, u: int, v: int) -> Edge:
        if not self.has_edge(u, v):
            raise MissingEdgeError(edge_key(u, v))
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self._m -= 1
        return edge_key(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbours(self, v: int) -> Set[int]:
        return self.adj[v]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def num_edges(self) -> int:
        return self._m

    def edges(self) -> Iterator[Edge]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)


class LevelledAdjacency:
    """Bucketed adjacency with vertex levels and O(1) edge handles."""

    def __init__(self, capacity: int, max_level: int):
        if capacity < 1:
            raise VertexRangeError(capacity, 1)
        if max_level < 1:
            raise LevelError(f"max_level must be >= 1, got {max_level}")
        self.capacity = capacity
        self.max_level = max_level

        self._level = [1] * capacity
        self._degree = [0] * capacity
        # Sparse per-vertex buckets: only non-empty ones have keys
        self._heads: List[Dict[int, int]] = [{} for _ in range(capacity)]
        self._sizes: List[Dict[int, int]] = [{} for _ in range(capacity)]
        self._handles: Dict[Edge, Tuple[int, int]] = {}

        # Arena
        self._vertex: List[int] = []
        self._owner: List[int] = []
        self._bucket: List[int] = []
        self._prev: List[int] = []
        self._next: List[int] = []
        self._free: List[int] = []

    # ------------------------------------------------------------------
    # arena plumbing
    # ------------------------------------------------------------------

    def _alloc(self) -> int:
        if self._free:
            return self._free.pop()
        self._vertex.append(NIL)
        self._owner.append(NIL)
        self._bucket.append(NIL)
        self._prev.append(NIL)
        self._next.append(NIL)
        return len(self._vertex) - 1

    def _push(self, node: int, owner: int, bucket: int):
        heads = self._heads[owner]
        head = heads.get(bucket, NIL)
        self._owner[node] = owner
        self._bucket[node] = bucket
        self._prev[node] = NIL
        self._next[node] = head
        if head != NIL:
            self._prev[head] = node
        heads[bucket] = node
        sizes = self._sizes[owner]
        sizes[bucket] = sizes.get(bucket, 0) + 1

    def _pop(self, node: int):
        owner, bucket = self._owner[node], self._bucket[node]
        prev, nxt = self._prev[node], self._next[node]
        if prev == NIL:
            if nxt == NIL:
                del self._heads[owner][bucket]
            else:
                self._heads[owner][bucket] = nxt
        else:
            self._next[prev] = nxt
        if nxt != NIL:
            self._prev[nxt] = prev
        sizes = self._sizes[owner]
        sizes[bucket] -= 1
        if sizes[bucket] == 0:
            del sizes[bucket]
        self._prev[node] = self._next[node] = NIL

    def _move(self, node: int, bucket: int):
        if self._bucket[node] != bucket:
            owner = self._owner[node]
            self._pop(node)
            self._push(node, owner, bucket)

    def _iter_bucket(self, v: int, bucket: int) -> Iterator[int]:
        node = self._heads[v].get(bucket, NIL)
        while node != NIL:
            nxt = self._next[node]
            yield node
            node = nxt

    def _node_at(self, owner: int, other: int) -> int:
        a, b = edge_key(owner, other)
        handle = self._handles[(a, b)]
        return handle[0] if owner == a else handle[1]

    def _check_vertex(self, v: int):
        if not 0 <= v < self.capacity:
            raise VertexRangeError(v, self.capacity)

    # ------------------------------------------------------------------
    # orientation rule
    # ------------------------------------------------------------------

    def bucket_for(self, owner: int, other: int) -> int:
        """Bucket of `other` inside `owner`'s lists."""
        other_level = self._level[other]
        return OUT if other_level >= self._level[owner] else other_level

    # ------------------------------------------------------------------
    # mutation
    # ------------------------------------------------------------------

    def attach_edge(self, u: int, v: int) -> Edge:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SelfLoopError(u)
        key = edge_key(u, v)
        if key in self._handles:
            raise DuplicateEdgeError(key)

        a, b = key
        node_a = self._alloc()
        self._vertex[node_a] = b
        self._push(node_a, a, self.bucket_for(a, b))
        node_b = self._alloc()
        self._vertex[node_b] = a
        self._push(node_b, b, self.bucket_for(b, a))

        self._handles[key] = (node_a, node_b)
        self._degree[a] += 1
        self._degree[b] += 1
        return key

    def detach_edge(self, edge: Edge) -> None:
        key = edge_key(*edge)
        handle = self._handles.pop(key, None)
        if handle is None:
            raise MissingEdgeError(key)
        for node in handle:
            self._pop(node)
            self._vertex[node] = NIL
            self._free.append(node)
        self._degree[key[0]] -= 1
        self._degree[key[1]] -= 1

    def split_out_list(self, v: int) -> List[int]:
        """
        Raise v from level i to i+1.

        Out-neighbours at level i drop into the new bucket H_i(v); the rest
        stay out. Returns the out-list as it was before the split.
        """
        self._check_vertex(v)
        i = self._level[v]
        if i >= self.max_level:
            raise LevelError(f"vertex {v} already at top level {i}")

        old_out = list(self._iter_bucket(v, OUT))
        self._level[v] = i + 1
        previous = []
        for node in old_out:
            u = self._vertex[node]
            previous.append(u)
            if self._level[u] == i:
                self._move(node, i)
            self._move(self._node_at(u, v), self.bucket_for(u, v))
        return previous

    def merge_down(self, v: int) -> List[int]:
        """
        Lower v from level i to i-1, merging H_{i-1}(v) into its out-list.

        Returns the out-list as it was before the merge.
        """
        self._check_vertex(v)
        i = self._level[v]
        if i <= 1:
            raise LevelError(f"vertex {v} is at level 1")

        previous = [self._vertex[node] for node in self._iter_bucket(v, OUT)]
        lowered = list(self._iter_bucket(v, i - 1))
        self._level[v] = i - 1
        for node in lowered:
            self._move(node, OUT)
        for u in previous:
            self._move(self._node_at(u, v), i - 1)
        return previous

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def level(self, v: int) -> int:
        return self._level[v]

    def degree(self, v: int) -> int:
        return self._degree[v]

    def out_degree(self, v: int) -> int:
        """deg+(v): neighbours at level >= l(v)."""
        return self._sizes[v].get(OUT, 0)

    def down_degree(self, v: int) -> int:
        """Neighbours in Z_{l(v)-1}; the full degree at level 1."""
        i = self._level[v]
        if i == 1:
            return self._degree[v]
        return self._sizes[v].get(OUT, 0) + self._sizes[v].get(i - 1, 0)

    def cached_size(self, v: int, bucket: int) -> int:
        return self._sizes[v].get(bucket, 0)

    def bucket(self, v: int, bucket: int) -> List[int]:
        return [self._vertex[node] for node in self._iter_bucket(v, bucket)]

    def out_neighbours(self, v: int) -> List[int]:
        return self.bucket(v, OUT)

    def buckets(self, v: int) -> Dict[int, List[int]]:
        """All non-empty buckets of v."""
        return {b: self.bucket(v, b) for b in sorted(self._heads[v])}

    def neighbours(self, v: int) -> List[int]:
        found = []
        for b in self._heads[v]:
            found.extend(self.bucket(v, b))
        return found

    def locate(self, owner: int, other: int) -> Optional[int]:
        """Bucket holding `other` at `owner` by following the edge handle."""
        key = edge_key(owner, other)
        if key not in self._handles:
            return None
        node = self._node_at(owner, other)
        if self._owner[node] != owner or self._vertex[node] != other:
            return NIL
        return self._bucket[node]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._handles

    def edges(self) -> Iterator[Edge]:
        return iter(list(self._handles))

    def num_edges(self) -> int:
        return len(self._handles)

    def max_degree(self) -> int:
        return max(self._degree)

    def levels(self) -> List[int]:
        return list(self._level)
