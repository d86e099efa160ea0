"""Offline compaction of a given layout.

``left_right_shift`` is the two-pass compaction; ``min_moves_oracle`` is an
exhaustive breadth-first search used to check it on tiny arrays, and
``gen_hardness_instance`` builds the 3-Partition gadget layout.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .array import (
    ArrayState,
    MoveRecord,
    eq1_holds,
    eq2_holds,
    free_spaces,
    shift_as_far,
)

MoveHook = Optional[Callable[[ArrayState, MoveRecord], None]]

ORACLE_MAX_CAPACITY = 16
ORACLE_MAX_MODULES = 5


@dataclass
class DefragReport:
    move_log: list[MoveRecord]
    final_free_spaces: list[tuple[int, int]]

    @property
    def connected(self) -> bool:
        return len(self.final_free_spaces) <= 1


def left_right_shift(state: ArrayState, on_move: MoveHook = None) -> DefragReport:
    """Shift every module right (rightmost first), then left (leftmost first).

    Mutates ``state`` in place. Modules that cannot move are skipped, so the
    function is total; a single free space is guaranteed only when one of
    the density conditions held on entry.
    """
    log: list[MoveRecord] = []
    order = state.ids_in_order()
    for direction, ids in (("right", reversed(order)), ("left", order)):
        for mid in ids:
            rec = shift_as_far(state, mid, direction)
            if rec is not None:
                log.append(rec)
                if on_move is not None:
                    on_move(state, rec)
    return DefragReport(log, free_spaces(state))


# -- exhaustive search ----------------------------------------------------

Layout = tuple[tuple[int, int], ...]


def layout_of(state: ArrayState) -> Layout:
    """Occupancy as sorted ``(start, size)`` pairs; module identity is dropped."""
    return tuple((s, z) for s, z, _ in state.modules())


def layout_free_spaces(layout: Layout, capacity: int) -> list[tuple[int, int]]:
    out = []
    pos = 0
    for s, z in layout:
        if s > pos:
            out.append((pos, s - pos))
        pos = s + z
    if pos < capacity:
        out.append((pos, capacity - pos))
    return out


def layout_successors(layout: Layout, capacity: int):
    """Every layout reachable by one legal move."""
    full = 0
    for s, z in layout:
        full |= ((1 << z) - 1) << s
    for j, (s, z) in enumerate(layout):
        block = (1 << z) - 1
        others = full & ~(block << s)
        rest = layout[:j] + layout[j + 1:]
        for t in range(capacity - z + 1):
            if abs(t - s) < z or others & (block << t):
                continue
            yield tuple(sorted(rest + ((t, z),)))


def search_min_moves(
    state: ArrayState,
    goal: Callable[[Layout], bool],
    move_budget: int,
) -> Optional[int]:
    """Breadth-first search for the fewest moves reaching a goal layout."""
    start = layout_of(state)
    if goal(start):
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        layout, depth = frontier.popleft()
        if depth >= move_budget:
            continue
        for nxt in layout_successors(layout, state.capacity):
            if nxt in seen:
                continue
            if goal(nxt):
                return depth + 1
            seen.add(nxt)
            frontier.append((nxt, depth + 1))
    return None


def _guard(state: ArrayState) -> None:
    if state.capacity > ORACLE_MAX_CAPACITY or len(state) > ORACLE_MAX_MODULES:
        raise ValueError(
            f"instance too large for exhaustive search "
            f"(capacity {state.capacity} > {ORACLE_MAX_CAPACITY} "
            f"or {len(state)} modules > {ORACLE_MAX_MODULES})"
        )


def min_moves_oracle(state: ArrayState, move_budget: int = 12) -> Optional[int]:
    """Fewest moves that leave a single free space, or None beyond ``move_budget``.

    Refuses arrays larger than 16 cells or with more than 5 modules.
    """
    _guard(state)
    cap = state.capacity
    return search_min_moves(
        state, lambda lay: len(layout_free_spaces(lay, cap)) <= 1, move_budget
    )


# -- 3-Partition gadget ---------------------------------------------------


@dataclass(frozen=True)
class PartitionInstance:
    elements: tuple[int, ...]
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        n = len(self.elements)
        if n == 0 or n % 3:
            raise ValueError(f"need 3k elements with k >= 1, got {n}")
        k = n // 3
        if self.bound < 1 or sum(self.elements) != k * self.bound:
            raise ValueError(f"elements must sum to k*B = {k * self.bound}")
        for e in self.elements:
            if not (self.bound <= 4 * e and 2 * e <= self.bound):
                raise ValueError(f"element {e} outside [B/4, B/2] for B={self.bound}")

    @property
    def k(self) -> int:
        return len(self.elements) // 3


def gen_hardness_instance(p: PartitionInstance) -> ArrayState:
    """Element modules packed at the left, then ``k`` (wall, gap) pairs.

    Walls have size B+1 and every gap has size B, so a wall never fits
    into any gap that exists before the element modules leave.
    """
    B, k = p.bound, p.k
    state = ArrayState(k * B + k * (B + 1) + k * B)
    pos = 0
    mid = 1
    for e in p.elements:
        state.place(mid, e, pos)
        pos += e
        mid += 1
    for _ in range(k):
        state.place(mid, B + 1, pos)
        pos += 2 * B + 1
        mid += 1
    return state


def partition_solvable(p: PartitionInstance) -> bool:
    """Brute force: can the elements be split into k triples of sum B?"""
    elems = sorted(p.elements, reverse=True)

    def fill(bins: list[int], i: int) -> bool:
        if i == len(elems):
            return all(b == p.bound for b in bins)
        tried = set()
        for j, b in enumerate(bins):
            if b + elems[i] <= p.bound and b not in tried:
                tried.add(b)
                bins[j] += elems[i]
                if fill(bins, i + 1):
                    return True
                bins[j] -= elems[i]
        return False

    return fill([0] * p.k, 0)


# -- random instance families ---------------------------------------------


def layout_from_gaps(sizes: Sequence[int], gaps: Sequence[int]) -> ArrayState:
    """Build ``gap0, m1, gap1, m2, ..., mn, gapn`` with ids 1..n."""
    assert len(gaps) == len(sizes) + 1
    state = ArrayState(sum(sizes) + sum(gaps))
    pos = gaps[0]
    for i, z in enumerate(sizes, start=1):
        state.place(i, z, pos)
        pos += z + gaps[i]
    return state


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def random_eq1_instance(rng: random.Random, max_n: int = 50, max_capacity: int = 4096) -> ArrayState:
    """Random layout whose density satisfies the low-density condition."""
    while True:
        n = rng.randint(1, max_n)
        top = rng.randint(1, 64)
        sizes = [rng.randint(1, top) for _ in range(n)]
        lo = 2 * sum(sizes) + max(sizes)
        if lo > max_capacity:
            continue
        capacity = rng.randint(lo, min(max_capacity, 2 * lo))
        state = layout_from_gaps(sizes, _composition(rng, capacity - sum(sizes), n + 1))
        if eq1_holds(state):
            return state


def random_eq2_instance(rng: random.Random, max_n: int = 50, max_capacity: int = 4096) -> ArrayState:
    """Random layout in which the largest module fits the largest free space."""
    while True:
        n = rng.randint(1, max_n)
        top = rng.randint(1, 64)
        sizes = [rng.randint(1, top) for _ in range(n)]
        biggest = max(sizes)
        spare = rng.randint(0, 2 * sum(sizes))
        if sum(sizes) + biggest + spare > max_capacity:
            continue
        gaps = _composition(rng, spare, n + 1)
        gaps[rng.randrange(n + 1)] += biggest
        state = layout_from_gaps(sizes, gaps)
        if eq2_holds(state):
            return state
