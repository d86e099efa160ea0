"""Strategies that keep (or fall back to) size-sorted layouts."""

from __future__ import annotations

from bisect import bisect_left

from ..array import (
    ArrayState,
    ModuleSpec,
    MoveKind,
    MoveRecord,
    commit_plan,
    eq2_holds,
    free_spaces,
    shift_as_far,
    translate_run,
)
from ..sorter import sort_array
from .base import Strategy, StrategyDecision


# -- AlwaysSorted ---------------------------------------------------------


def always_sorted_arrival(state: ArrayState, module: ModuleSpec) -> StrategyDecision:
    """Insert into a non-increasing, left-packed layout at the sorted position.

    Waits iff the total free space is smaller than the module.
    """
    m = module.size
    if state.total_free() < m:
        return StrategyDecision(None)
    moves = []
    pos = 0
    for s, z, mid in state.modules():
        if s > pos:
            rec = shift_as_far(state, mid, "left")
            if rec is not None:
                moves.append(rec)
                s = rec.target_start
        pos = s + z
    mods = state.modules()
    # equal sizes stay in arrival order: the newcomer goes after them
    pos = 0
    p = 0
    while p < len(mods) and mods[p][1] >= m:
        pos = mods[p][0] + mods[p][1]
        p += 1
    moves.extend(translate_run(state, p, len(mods) - p, m))
    state.place(module.id, m, pos)
    return StrategyDecision(pos, moves)


def always_sorted_departure(state: ArrayState, module_id: int) -> list[MoveRecord]:
    """Remove and close the hole; everything to the right is no larger."""
    s, m = state.remove(module_id)
    first = bisect_left(state._starts, s)
    return translate_run(state, first, len(state._starts) - first, -m)


class AlwaysSorted(Strategy):
    name = "alwayssorted"

    def arrive(self, state, module):
        return always_sorted_arrival(state, module)

    def depart(self, state, module_id):
        return always_sorted_departure(state, module_id)


# -- DelayedSort ----------------------------------------------------------


def _first_fit_keeping_condition(gaps, biggest: int, m: int):
    """First-fit start for size ``m`` if a module of size ``biggest`` still
    fits the largest free space afterwards, else None."""
    for i, (s, z) in enumerate(gaps):
        if z >= m:
            break
    else:
        return None
    if z - m >= biggest:
        return s
    for j, (_, g) in enumerate(gaps):
        if g >= biggest and j != i:
            return s
    return None


def plan_compaction(state: ArrayState, side: str, mods=None) -> list[MoveRecord]:
    """Moves of one shifting pass toward ``side``, nearest module first.

    Each module slides across its whole gap when the gap is at least its
    size, as in :func:`shift_as_far`; the state is not touched.
    """
    if mods is None:
        mods = state.modules()
    moves = []
    shift = MoveKind.SHIFT
    if side == "right":
        edge = state.capacity
        for s, z, mid in reversed(mods):
            if edge - s - z >= z:
                moves.append(MoveRecord(mid, s, edge - z, shift, z))
                s = edge - z
            edge = s
    elif side == "left":
        edge = 0
        for s, z, mid in mods:
            if s - edge >= z:
                moves.append(MoveRecord(mid, s, edge, shift, z))
                s = edge
            edge = s + z
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return moves


def _gaps_after_compaction(mods, capacity: int, side: str) -> list[tuple[int, int]]:
    """Free spaces that :func:`plan_compaction` would leave, without building moves."""
    out = []
    if side == "right":
        edge = capacity
        for s, z, _ in reversed(mods):
            if edge - s - z >= z:
                s = edge - z
            elif edge > s + z:
                out.append((s + z, edge - s - z))
            edge = s
        if edge > 0:
            out.append((0, edge))
        out.reverse()
    else:
        edge = 0
        for s, z, _ in mods:
            if s - edge >= z:
                s = edge
            elif s > edge:
                out.append((edge, s - edge))
            edge = s + z
        if edge < capacity:
            out.append((edge, capacity - edge))
    return out


def compact_toward(state: ArrayState, side: str) -> list[MoveRecord]:
    """One shifting pass toward ``side``, starting with the module nearest it."""
    plan = plan_compaction(state, side)
    commit_plan(state, plan)
    return plan


def pack_right(state: ArrayState) -> list[MoveRecord]:
    moves = compact_toward(state, "right")
    spaces = free_spaces(state)
    if len(spaces) > 1 or (spaces and spaces[0][0] != 0):
        raise AssertionError(f"sorted layout did not pack to the right: {spaces}")
    return moves


def ascending_insert(state: ArrayState, module: ModuleSpec) -> tuple[int, list[MoveRecord]]:
    """Insert into a non-decreasing layout packed at the right end.

    Modules smaller than the newcomer each shift left by its size, leftmost
    first, which opens a slot of exactly that size.
    """
    m = module.size
    mods = state.modules()
    p = 0
    while p < len(mods) and mods[p][1] < m:
        p += 1
    moves = translate_run(state, 0, p, -m)
    pos = mods[p][0] - m if p < len(mods) else state.capacity - m
    state.place(module.id, m, pos)
    return pos, moves


class DelayedSort(Strategy):
    """First fit while the largest module still fits the largest free space.

    When first fit would break that condition, try compacting toward the
    side holding the large free space; if that fails too, sort the whole
    array and insert in sorted order. While the condition stays broken the
    array is kept sorted (``sorted_mode``) so any module that fits the
    total free space can still be placed.
    """

    name = "delayedsort"

    def __init__(self):
        self.side = "right"
        self.sorted_mode = False

    def arrive(self, state, module):
        m = module.size
        if m > state.total_free():
            return StrategyDecision(None)

        biggest = max(m, state.max_size())
        start = _first_fit_keeping_condition(free_spaces(state), biggest, m)
        if start is not None:
            state.place(module.id, m, start)
            self.sorted_mode = False
            return StrategyDecision(start)

        mods = state.modules()
        start = _first_fit_keeping_condition(_gaps_after_compaction(mods, state.capacity, self.side), biggest, m)
        if start is not None:
            planned = plan_compaction(state, self.side, mods)
            commit_plan(state, planned)
            state.place(module.id, m, start)
            self.side = "left" if self.side == "right" else "right"
            self.sorted_mode = False
            return StrategyDecision(start, planned)

        if self.sorted_mode:
            moves = pack_right(state)
        else:
            moves = sort_array(state).move_log
        pos, more = ascending_insert(state, module)
        moves.extend(more)
        self.side = "left"
        self.sorted_mode = not eq2_holds(state)
        return StrategyDecision(pos, moves)


def delayed_sort_arrival(state: ArrayState, strategy: DelayedSort, module: ModuleSpec) -> StrategyDecision:
    return strategy.arrive(state, module)


def delayed_sort_departure(state: ArrayState, strategy: DelayedSort, module_id: int) -> list[MoveRecord]:
    """Departures never move anything."""
    return strategy.depart(state, module_id)
