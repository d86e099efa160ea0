"""Physical sorting of modules by size, and the quadratic lower-bound instance."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Optional

from .array import ArrayState, MoveRecord, apply_move, eq2_holds, free_spaces, shift_as_far, translate_run
from .defrag import (
    Layout,
    MoveHook,
    _guard,
    layout_free_spaces,
    left_right_shift,
    search_min_moves,
)


class SortRefused(ValueError):
    """The largest module does not fit the largest free space."""


@dataclass
class SortReport:
    move_log: list[MoveRecord]
    sorted: bool
    free_space_at_left: bool
    prepass_moves: int
    loop_moves: int


def is_sorted_layout(state: ArrayState, descending: bool = False) -> bool:
    """Modules side by side with monotone sizes (non-decreasing unless ``descending``)."""
    mods = state.modules()
    for (s0, z0, _), (s1, z1, _) in zip(mods, mods[1:]):
        if s0 + z0 != s1:
            return False
        if (z1 > z0) if descending else (z1 < z0):
            return False
    return True


def sort_array(state: ArrayState, on_move: MoveHook = None) -> SortReport:
    """Sort modules into non-decreasing size order with one free space at the left.

    Runs the two-pass compaction first, then repeatedly flips the largest
    unsorted module to the right end of the free space and closes the hole
    it left behind. Mutates ``state`` in place.
    """
    if not eq2_holds(state):
        raise SortRefused(
            f"largest module ({state.max_size()}) does not fit the largest free space"
        )
    pre = left_right_shift(state, on_move)
    log = list(pre.move_log)
    if not pre.connected:
        raise AssertionError(f"compaction left {len(pre.final_free_spaces)} free spaces")

    # renumber left to right after compaction
    unsorted = state.ids_in_order()
    size = state._size
    spaces = free_spaces(state)
    (fs, fz), = spaces or [(state.capacity, 0)]
    while unsorted:
        k_idx = 0
        for i, mid in enumerate(unsorted):
            if size[mid] > size[unsorted[k_idx]]:
                k_idx = i
        k = unsorted[k_idx]
        mk = size[k]
        if fz < mk:
            raise AssertionError(f"free space {fz} smaller than module {k} of size {mk}")
        k_end = state._start[k] + mk
        rec = apply_move(state, k, fs + fz - mk)
        log.append(rec)
        if on_move is not None:
            on_move(state, rec)
        right_of_k = unsorted[k_idx + 1:]
        del unsorted[k_idx]
        if on_move is None and right_of_k:
            # the modules behind k are adjacent and no larger, so each
            # closes the hole by sliding exactly mk to the left
            first = bisect_left(state._starts, k_end)
            if state._at.get(state._starts[first]) != right_of_k[0] or state._starts[first] != k_end:
                raise AssertionError(f"modules behind {k} are not adjacent to it")
            log.extend(translate_run(state, first, len(right_of_k), -mk))
        else:
            for mid in right_of_k:
                rec = shift_as_far(state, mid, "left")
                if rec is None:
                    raise AssertionError(f"module {mid} could not close the hole left by {k}")
                log.append(rec)
                if on_move is not None:
                    on_move(state, rec)
        # everything left of the free space now sits mk further left, so the
        # single free space does too
        fs -= mk
        if not state.is_free(fs, fz):
            raise AssertionError(f"free space did not move to [{fs},{fs + fz})")


    spaces = free_spaces(state)
    at_left = not spaces or (len(spaces) == 1 and spaces[0][0] == 0)
    return SortReport(
        move_log=log,
        sorted=is_sorted_layout(state) and len(spaces) <= 1,
        free_space_at_left=at_left,
        prepass_moves=len(pre.move_log),
        loop_moves=len(log) - len(pre.move_log),
    )


def gen_lower_bound_instance(n: int, k: int) -> ArrayState:
    """Free space of size k+1 at the left, then sizes k, k+1, k, k+1, ..."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    half = n // 2
    state = ArrayState((k + 1) + half * k + half * (k + 1))
    pos = k + 1
    for i in range(1, n + 1):
        z = k if i % 2 else k + 1
        state.place(i, z, pos)
        pos += z
    return state


def steps_lower_bound(n: int) -> int:
    """Fewest moves any algorithm needs on the n-module lower-bound instance."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be a positive even integer, got {n}")
    return -(-n * (n + 2) // 8)


def gap_invariant_holds(state: ArrayState, k: int) -> bool:
    """Exactly one free space has size k or k+1."""
    return sum(1 for _, z in free_spaces(state) if z in (k, k + 1)) == 1


def min_sort_moves(state: ArrayState, move_budget: int = 12, descending: bool = False) -> Optional[int]:
    """Exhaustive search for the fewest moves to a sorted, connected layout."""
    _guard(state)
    cap = state.capacity

    def goal(lay: Layout) -> bool:
        if len(layout_free_spaces(lay, cap)) > 1:
            return False
        sizes = [z for _, z in lay]
        pairs = zip(sizes, sizes[1:])
        return all(a >= b for a, b in pairs) if descending else all(a <= b for a, b in pairs)

    return search_min_moves(state, goal, move_budget)
