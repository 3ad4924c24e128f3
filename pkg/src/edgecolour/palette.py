"""
Colour Palette

Per-vertex record of which colours its edges use:
- owners: colour -> edge holding it (C(v))
- a sum tree over the used-bit vector A(v); leaves are the bits

Colours are 1-based. Capacity is always a power of two so the tree is
complete. Searches for a colour free at two vertices walk both trees in
lockstep and skip any subtree that is full at either vertex.
"""

import logging
from typing import Hashable, List, Optional

import numpy as np

from .errors import PaletteError

logger = logging.getLogger(__name__)


def _next_pow2(x: int) -> int:
    return 1 if x <= 1 else 1 << (x - 1).bit_length()


def capacity_for(delta: int) -> int:
    """Power of two covering 2*delta - 1 colours."""
    return _next_pow2(max(1, 2 * delta - 1))


class Palette:
    """Colour ownership array plus used-bit sum tree."""

    def __init__(self, delta: int = 1, capacity: Optional[int] = None):
        cap = _next_pow2(capacity) if capacity is not None else capacity_for(delta)
        self.capacity = cap
        self._tree = np.zeros(2 * cap, dtype=np.int64)
        self._owners: List[Optional[Hashable]] = [None] * (cap + 1)

    def __repr__(self) -> str:
        return f"Palette(capacity={self.capacity}, used={self.used_count})"

    def _check_colour(self, c: int):
        if not 1 <= c <= self.capacity:
            raise PaletteError(f"colour {c} outside [1, {self.capacity}]")

    def _add(self, c: int, delta: int):
        node = self.capacity + c - 1
        tree = self._tree
        while node >= 1:
            tree[node] += delta
            node >>= 1

    # ------------------------------------------------------------------

    @property
    def used_count(self) -> int:
        return int(self._tree[1])

    def is_used(self, c: int) -> bool:
        return 1 <= c <= self.capacity and self._owners[c] is not None

    def owner_of(self, c: int) -> Optional[Hashable]:
        if not 1 <= c <= self.capacity:
            return None
        return self._owners[c]

    def mark(self, c: int, edge: Hashable) -> None:
        self._check_colour(c)
        if self._owners[c] is not None:
            raise PaletteError(f"colour {c} already used by {self._owners[c]}")
        self._owners[c] = edge
        self._add(c, 1)

    def unmark(self, c: int) -> Hashable:
        self._check_colour(c)
        owner = self._owners[c]
        if owner is None:
            raise PaletteError(f"colour {c} is not used")
        self._owners[c] = None
        self._add(c, -1)
        return owner

    def range_count(self, i: int, j: int) -> int:
        """Number of used colours in [i, j)."""
        if not 1 <= i <= j <= self.capacity + 1:
            raise PaletteError(
                f"range [{i}, {j}) outside [1, {self.capacity + 1}]"
            )
        tree = self._tree
        lo = self.capacity + i - 1
        hi = self.capacity + j - 1
        total = 0
        while lo < hi:
            if lo & 1:
                total += tree[lo]
                lo += 1
            if hi & 1:
                hi -= 1
                total += tree[hi]
            lo >>= 1
            hi >>= 1
        return int(total)

    def highest_used(self) -> int:
        """Largest used colour, 0 when empty."""
        tree = self._tree
        if tree[1] == 0:
            return 0
        node = 1
        while node < self.capacity:
            node = 2 * node + 1 if tree[2 * node + 1] > 0 else 2 * node
        return node - self.capacity + 1

    def marked(self) -> List[int]:
        leaves = self._tree[self.capacity:]
        return (np.flatnonzero(leaves) + 1).tolist()

    # ------------------------------------------------------------------
    # resizing
    # ------------------------------------------------------------------

    def _resize(self, new_cap: int):
        old_cap = self.capacity
        keep = min(old_cap, new_cap)
        leaves = np.zeros(new_cap, dtype=np.int64)
        leaves[:keep] = self._tree[old_cap:old_cap + keep]

        tree = np.zeros(2 * new_cap, dtype=np.int64)
        tree[new_cap:] = leaves
        size = new_cap // 2
        while size >= 1:
            tree[size:2 * size] = tree[2 * size:4 * size:2] + tree[2 * size + 1:4 * size:2]
            size //= 2

        self._tree = tree
        if new_cap > old_cap:
            self._owners.extend([None] * (new_cap - old_cap))
        else:
            del self._owners[new_cap + 1:]
        self.capacity = new_cap

    def reserve(self, colours: int) -> None:
        """Grow (never shrink) so colour index `colours` fits."""
        if colours > self.capacity:
            self._resize(_next_pow2(colours))

    def ensure_capacity(self, delta: int) -> None:
        """
        Track a degree bound: double while 2*delta - 1 exceeds capacity,
        halve while every used colour sits in the first quarter and
        2*delta - 1 fits in half the capacity.
        """
        if delta < 0:
            raise PaletteError(f"delta must be >= 0, got {delta}")
        target = max(1, 2 * delta - 1)
        cap = self.capacity
        while cap < target:
            cap *= 2
        highest = self.highest_used()
        while cap > 1 and highest <= cap // 4 and target <= cap // 2:
            cap //= 2
        if cap != self.capacity:
            logger.debug("palette resize %d -> %d", self.capacity, cap)
            self._resize(cap)

    def check_tree(self) -> bool:
        """Every internal node equals the sum of its two children."""
        tree = self._tree
        cap = self.capacity
        if cap == 1:
            return True
        internal = np.arange(1, cap)
        return bool(np.array_equal(tree[internal], tree[2 * internal] + tree[2 * internal + 1]))


def find_joint_free(p: Palette, q: Palette) -> int:
    """
    Smallest colour free in both palettes.

    Left subtrees are always explored first and a subtree is skipped once
    it is full at either vertex, so the first leaf reached is the answer.
    Interleaved occupancy (one palette holding the even colours, the other
    the odd ones) leaves no subtree full at either side, and the walk then
    visits every leaf: O(capacity) in the worst case, O(log capacity) when
    either palette is empty.
    Both palettes must share one capacity.
    """
    if p.capacity != q.capacity:
        raise PaletteError(
            f"palettes must share a capacity ({p.capacity} != {q.capacity})"
        )
    cap = p.capacity
    pt, qt = p._tree, q._tree
    stack = [(1, cap)]
    while stack:
        node, width = stack.pop()
        if pt[node] == width or qt[node] == width:
            continue
        if node >= cap:
            return node - cap + 1
        half = width // 2
        stack.append((2 * node + 1, half))
        stack.append((2 * node, half))
    raise PaletteError(f"no jointly free colour within capacity {cap}")
