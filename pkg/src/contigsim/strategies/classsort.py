"""Power-of-two size classes whose buffer counts form a regular redundant counter.

Physical layout: the classes sit at the right end of the array in
decreasing level from left to right, so ``C_0`` ends at the last cell and
the unclaimed pool ``[0, C_top.start)`` lies to the left of the top class.
Class ``C_i`` is a run of slots of size ``2**i``; each slot holds one
module whose rounded size is ``2**i`` (aligned to the slot start) or is a
buffer. The counter digit ``i`` is the buffer count of ``C_i``.

Counter steps map onto the layout as follows:

* ``split(j)``: the right-edge slot of ``C_j`` must be a buffer (at most
  one relocation inside ``C_j``); the boundary moves right by ``2**j`` so
  that slot becomes two buffers at the left edge of ``C_{j-1}``.
* ``merge(j)``: the two left-edge slots of ``C_j`` must be buffers (at most
  two relocations); they become one buffer at the right edge of
  ``C_{j+1}``, creating that class when ``j`` is the top.
* ``draw``: the top class grows by one buffer taken from the pool.

Arrivals go to the rightmost buffer of their class, which keeps left-edge
buffers available for later merges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..array import ArrayState, ModuleSpec, MoveRecord, apply_move
from ..counter import RedundantCounter, Step, apply_step, plan_add, plan_subtract
from .base import Strategy, StrategyDecision


def rounded_level(size: int) -> int:
    """Level i of the smallest power of two 2**i >= size."""
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    return (size - 1).bit_length()


def class_count(capacity: int) -> int:
    """Highest class index a = ceil(lg(capacity / 2))."""
    return max(0, (capacity - 1).bit_length() - 1)


@dataclass
class SizeClass:
    level: int
    start: int
    slots: list[Optional[int]] = field(default_factory=list)
    width: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.width = 1 << self.level

    @property
    def end(self) -> int:
        return self.start + len(self.slots) * self.width

    def slot_start(self, idx: int) -> int:
        return self.start + idx * self.width

    def buffers(self) -> list[int]:
        return [i for i, mid in enumerate(self.slots) if mid is None]


@dataclass
class ClassLayout:
    capacity: int
    classes: list[SizeClass] = field(default_factory=list)  # index = level

    @property
    def top(self) -> int:
        return len(self.classes) - 1

    @property
    def pool(self) -> int:
        return self.classes[-1].start if self.classes else self.capacity

    def digits(self) -> tuple[int, ...]:
        return tuple(c.slots.count(None) for c in self.classes)

    def counter(self) -> RedundantCounter:
        return RedundantCounter(self.digits())

    def copy(self) -> "ClassLayout":
        return ClassLayout(self.capacity, [SizeClass(c.level, c.start, list(c.slots)) for c in self.classes])


class ClassSortWait(Exception):
    pass


class ClassSort(Strategy):
    name = "classsort"

    def __init__(self):
        self.layout: Optional[ClassLayout] = None
        self.level_of: dict[int, int] = {}

    # -- helpers -----------------------------------------------------------

    def _relocate(self, state: ArrayState, cls: SizeClass, src: int, dst: int, moves: list) -> None:
        mid = cls.slots[src]
        moves.append(apply_move(state, mid, cls.slot_start(dst)))
        cls.slots[dst] = mid
        cls.slots[src] = None

    def _free_slots(self, state, cls: SizeClass, needed: list[int], moves: list) -> None:
        """Empty the slots in ``needed`` by moving their modules to other buffers."""
        spare = [i for i in reversed(cls.buffers()) if i not in needed]
        for idx in needed:
            if cls.slots[idx] is not None:
                self._relocate(state, cls, idx, spare.pop(0), moves)

    def _execute(self, state: ArrayState, step: Step, moves: list) -> None:
        layout = self.layout
        op, j = step
        if op == "split":
            hi, lo = layout.classes[j], layout.classes[j - 1]
            self._free_slots(state, hi, [len(hi.slots) - 1], moves)
            hi.slots.pop()
            lo.start -= hi.width
            lo.slots[0:0] = [None, None]
        elif op == "merge":
            lo = layout.classes[j]
            self._free_slots(state, lo, [0, 1], moves)
            del lo.slots[0:2]
            lo.start += 2 * lo.width
            if j == layout.top:
                layout.classes.append(SizeClass(j + 1, lo.start - 2 * lo.width, [None]))
            else:
                layout.classes[j + 1].slots.append(None)
        elif op == "draw":
            top = layout.classes[j]
            top.start -= top.width
            top.slots.insert(0, None)
        else:
            raise ValueError(f"unexpected step {step}")

    # -- arrival -----------------------------------------------------------

    def arrive(self, state, module):
        return class_sort_arrival(state, self, module)

    def depart(self, state, module_id):
        return class_sort_departure(state, self, module_id)

    def check(self, state: ArrayState) -> None:
        """Assert the structural invariants; used by tests and the bench harness."""
        layout = self.layout
        if layout is None:
            return
        assert layout.counter().is_regular(), f"irregular counter {layout.counter()}"
        expect_end = layout.capacity
        occupied = 0
        starts, sizes = state._start, state._size
        for cls in layout.classes:
            assert cls.end == expect_end, f"class {cls.level} ends at {cls.end}, expected {expect_end}"
            expect_end = cls.start
            lv, w, s = cls.level, cls.width, cls.start
            for mid in cls.slots:
                if mid is not None:
                    occupied += 1
                    assert starts.get(mid) == s, f"module {mid} is not at its slot start {s}"
                    assert (sizes[mid] - 1).bit_length() == lv, f"module {mid} is in class {lv}"
                s += w
        # every module sits in its own slot, so the remaining slots are empty
        assert occupied == len(state), f"{len(state) - occupied} modules outside the classes"
        assert layout.pool >= 0


def _ensure_classes(layout: ClassLayout, level: int) -> list[SizeClass]:
    """New classes up to ``level`` (one buffer each); raises if the pool is short."""
    new = []
    start = layout.pool
    for lv in range(layout.top + 1, level + 1):
        start -= 1 << lv
        new.append(SizeClass(lv, start, [None]))
    if start < 0:
        raise ClassSortWait
    return new


def class_sort_arrival(state: ArrayState, strategy: ClassSort, module: ModuleSpec) -> StrategyDecision:
    """Place a module into a buffer of its class, borrowing at most once.

    An empty array drops the class structure and starts over, since a
    layout grown for earlier sizes may leave too little pool for a new
    large class and nothing would ever free it.
    """
    if 2 * module.size > state.capacity:
        raise ValueError(f"module {module.id} of size {module.size} exceeds half the array")
    if strategy.layout is None:
        strategy.layout = ClassLayout(state.capacity)
    decision = _arrive(state, strategy, module)
    if decision.wait and len(state) == 0 and strategy.layout.classes:
        strategy.layout = ClassLayout(state.capacity)
        decision = _arrive(state, strategy, module)
    return decision


def _arrive(state: ArrayState, strategy: ClassSort, module: ModuleSpec) -> StrategyDecision:
    layout = strategy.layout
    level = rounded_level(module.size)
    try:
        new = _ensure_classes(layout, level)
    except ClassSortWait:
        return StrategyDecision(None)
    digits = list(layout.digits()) + [1] * len(new)
    steps = plan_subtract(digits, level)
    top = len(digits) - 1
    need = sum(1 << top for op, _ in steps if op == "draw")
    pool_after = (new[-1].start if new else layout.pool)
    if need > pool_after:
        return StrategyDecision(None)

    layout.classes.extend(new)
    moves: list[MoveRecord] = []
    for step in steps:
        if step[0] == "take":
            cls = layout.classes[level]
            idx = cls.buffers()[-1]
            cls.slots[idx] = module.id
            state.place(module.id, module.size, cls.slot_start(idx))
        else:
            strategy._execute(state, step, moves)
        apply_step(digits, step)
    strategy.level_of[module.id] = level
    return StrategyDecision(state.start(module.id), moves)


def class_sort_departure(state: ArrayState, strategy: ClassSort, module_id: int) -> list[MoveRecord]:
    """Turn the vacated slot into a buffer, merging at most once."""
    layout = strategy.layout
    level = strategy.level_of.pop(module_id)
    cls = layout.classes[level]
    s, _ = state.remove(module_id)
    digits = list(layout.digits())
    steps = plan_add(digits, level)
    moves: list[MoveRecord] = []
    for step in steps:
        if step[0] == "give":
            cls.slots[(s - cls.start) >> level] = None
        else:
            strategy._execute(state, step, moves)
    return moves
