"""Cell array model: placements, move legality, density predicates, costs.

Cells are 0-based and every interval is half-open ``[start, start + size)``.
All other modules mutate an :class:`ArrayState` only through ``place``,
``remove`` and the move functions here (:func:`apply_move`,
:func:`translate_run`, :func:`commit_plan` and friends), which check
legality before touching the layout.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional


class IllegalMoveError(ValueError):
    """A requested move violates the non-overlap or free-target rule."""


class UnknownModuleError(KeyError):
    """No module with the given id is placed in the array."""


@dataclass(frozen=True)
class ModuleSpec:
    id: int
    size: int
    duration: int = 1

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"module {self.id}: size must be >= 1, got {self.size}")
        if self.duration < 1:
            raise ValueError(f"module {self.id}: duration must be >= 1, got {self.duration}")


class MoveKind(enum.Enum):
    SHIFT = "shift"
    FLIP = "flip"


class MoveRecord(NamedTuple):
    module_id: int
    source_start: int
    target_start: int
    kind: MoveKind
    size: int

    @property
    def distance(self) -> int:
        return abs(self.target_start - self.source_start)

    def to_line(self) -> str:
        return f"move,{self.module_id},{self.source_start},{self.target_start},{self.kind.value}"


class CostModel(enum.Enum):
    UNIT_COUNT = "unit"
    MASS = "mass"

    def cost(self, size: int) -> int:
        return 1 if self is CostModel.UNIT_COUNT else size


def log_cost(log: Iterable[MoveRecord], model: CostModel) -> int:
    return sum(model.cost(rec.size) for rec in log)


class ArrayState:
    """A fixed-capacity array holding disjoint module intervals.

    Placements are kept in a start-sorted list so that occupancy and
    "anything between" queries are logarithmic.
    """

    __slots__ = ("capacity", "_start", "_size", "_starts", "_at")

    def __init__(self, capacity: int):
        if not isinstance(capacity, int) or capacity < 1:
            raise ValueError(f"capacity must be a positive integer, got {capacity!r}")
        self.capacity = capacity
        self._start: dict[int, int] = {}
        self._size: dict[int, int] = {}
        self._starts: list[int] = []
        self._at: dict[int, int] = {}

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._start)

    def __contains__(self, module_id: int) -> bool:
        return module_id in self._start

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArrayState):
            return NotImplemented
        return self.capacity == other.capacity and self.placements() == other.placements()

    def __repr__(self) -> str:
        body = ", ".join(f"{mid}:[{s},{s + z})" for s, z, mid in self.modules())
        return f"ArrayState(capacity={self.capacity}, {{{body}}})"

    def start(self, module_id: int) -> int:
        try:
            return self._start[module_id]
        except KeyError:
            raise UnknownModuleError(module_id) from None

    def size(self, module_id: int) -> int:
        try:
            return self._size[module_id]
        except KeyError:
            raise UnknownModuleError(module_id) from None

    def interval(self, module_id: int) -> tuple[int, int]:
        s = self.start(module_id)
        return s, s + self._size[module_id]

    def placements(self) -> dict[int, tuple[int, int]]:
        """Map of module id to ``(start, size)``."""
        return {mid: (s, self._size[mid]) for mid, s in self._start.items()}

    def modules(self) -> list[tuple[int, int, int]]:
        """``(start, size, id)`` triples ordered left to right."""
        at, size = self._at, self._size
        return [(s, size[at[s]], at[s]) for s in self._starts]

    def ids_in_order(self) -> list[int]:
        at = self._at
        return [at[s] for s in self._starts]

    def used(self) -> int:
        return sum(self._size.values())

    def total_free(self) -> int:
        return self.capacity - self.used()

    def max_size(self) -> int:
        return max(self._size.values(), default=0)

    def iter_blocks(self) -> Iterator[tuple[str, int, int, Optional[int]]]:
        """Yield ``(kind, start, size, id)`` for modules and free spaces in order.

        ``kind`` is ``"module"`` or ``"free"``; ``id`` is None for free spaces.
        """
        pos = 0
        for s in self._starts:
            if s > pos:
                yield "free", pos, s - pos, None
            mid = self._at[s]
            z = self._size[mid]
            yield "module", s, z, mid
            pos = s + z
        if pos < self.capacity:
            yield "free", pos, self.capacity - pos, None

    def is_free(self, start: int, size: int) -> bool:
        """True iff ``[start, start + size)`` lies in the array and holds no module."""
        if start < 0 or size < 1 or start + size > self.capacity:
            return False
        starts = self._starts
        i = bisect_left(starts, start + size) - 1
        if i < 0:
            return True
        s = starts[i]
        return s + self._size[self._at[s]] <= start

    def any_between(self, lo: int, hi: int) -> bool:
        """True iff some module starts inside ``[lo, hi)``."""
        if hi <= lo:
            return False
        i = bisect_left(self._starts, lo)
        return i < len(self._starts) and self._starts[i] < hi

    def gap_left(self, module_id: int) -> int:
        s = self.start(module_id)
        i = bisect_left(self._starts, s)
        if i == 0:
            return s
        p = self._starts[i - 1]
        return s - (p + self._size[self._at[p]])

    def gap_right(self, module_id: int) -> int:
        s = self.start(module_id)
        end = s + self._size[module_id]
        i = bisect_right(self._starts, s)
        nxt = self._starts[i] if i < len(self._starts) else self.capacity
        return nxt - end

    # -- mutation ----------------------------------------------------------

    def place(self, module_id: int, size: int, start: int) -> None:
        """Insert a new module; placement is not a move and costs nothing."""
        if module_id in self._start:
            raise ValueError(f"module {module_id} is already placed")
        if size < 1:
            raise ValueError(f"module {module_id}: size must be >= 1")
        if not self.is_free(start, size):
            raise IllegalMoveError(f"cannot place module {module_id} at [{start},{start + size}): not free")
        self._start[module_id] = start
        self._size[module_id] = size
        insort(self._starts, start)
        self._at[start] = module_id

    def remove(self, module_id: int) -> tuple[int, int]:
        """Delete a module and return its former ``(start, size)``."""
        s = self.start(module_id)
        z = self._size.pop(module_id)
        del self._start[module_id]
        del self._starts[bisect_left(self._starts, s)]
        del self._at[s]
        return s, z

    def _relocate(self, module_id: int, source: int, target: int) -> None:
        starts = self._starts
        del starts[bisect_left(starts, source)]
        del self._at[source]
        insort(starts, target)
        self._at[target] = module_id
        self._start[module_id] = target

    def copy(self) -> "ArrayState":
        new = ArrayState.__new__(ArrayState)
        new.capacity = self.capacity
        new._start = dict(self._start)
        new._size = dict(self._size)
        new._starts = list(self._starts)
        new._at = dict(self._at)
        return new


    def assign(self, other: "ArrayState") -> None:
        """Take over ``other``'s placements (used to commit a scratch copy)."""
        if other.capacity != self.capacity:
            raise ValueError("capacity mismatch")
        self._start = other._start
        self._size = other._size
        self._starts = other._starts
        self._at = other._at


def translate_run(state: ArrayState, first: int, count: int, delta: int) -> list[MoveRecord]:
    """Move ``count`` consecutive modules (from the ``first``-th, left to right) by ``delta``.

    The moves run from the end the run is heading to, so each one is a
    legal shift provided every size is at most ``|delta|`` and the gap on
    that side is at least ``|delta|``; both are checked up front. The
    records come back in execution order.
    """
    if count <= 0 or delta == 0:
        return []
    starts, at, size, start = state._starts, state._at, state._size, state._start
    if first < 0 or first + count > len(starts):
        raise IndexError(f"run {first}..{first + count} outside {len(starts)} modules")
    run = starts[first:first + count]
    ids = [at[s] for s in run]
    sizes = [size[mid] for mid in ids]
    step = abs(delta)
    if max(sizes) > step:
        mid = ids[sizes.index(max(sizes))]
        raise IllegalMoveError(f"module {mid} of size {size[mid]} cannot move by {delta}")
    if delta > 0:
        limit = starts[first + count] if first + count < len(starts) else state.capacity
        if run[-1] + sizes[-1] + delta > limit:
            raise IllegalMoveError(f"no room to move run right by {delta}")
    else:
        if first == 0:
            prev_end = 0
        else:
            p = starts[first - 1]
            prev_end = p + size[at[p]]
        if run[0] + delta < prev_end:
            raise IllegalMoveError(f"no room to move run left by {-delta}")
    moved = [s + delta for s in run]
    new, shift = tuple.__new__, MoveKind.SHIFT
    moves = [new(MoveRecord, (mid, s, t, shift, z)) for mid, s, t, z in zip(ids, run, moved, sizes)]
    if delta > 0:
        moves.reverse()
    for s in run:
        del at[s]
    at.update(zip(moved, ids))
    start.update(zip(ids, moved))
    starts[first:first + count] = moved
    return moves


def commit_plan(state: ArrayState, plan: Iterable[MoveRecord]) -> None:
    """Execute moves that keep the left-to-right module order, in one pass.

    Every record is checked against the positions left by the records
    before it (source matches, no overlap with its own source, target
    clear of both neighbours), which is exactly move legality when the
    order is preserved. Raises IllegalMoveError and leaves ``state``
    untouched otherwise.
    """
    start, size = dict(state._start), state._size
    order = list(state._starts)
    ids = [state._at[s] for s in order]
    index = {mid: i for i, mid in enumerate(ids)}
    cap = state.capacity
    for rec in plan:
        mid = rec.module_id
        i = index.get(mid)
        if i is None:
            raise UnknownModuleError(mid)
        s, t, z = start[mid], rec.target_start, size[mid]
        if s != rec.source_start:
            raise IllegalMoveError(f"module {mid} is at {s}, not {rec.source_start}")
        if abs(t - s) < z:
            raise IllegalMoveError(f"module {mid}: move from {s} to {t} overlaps itself")
        lo = 0 if i == 0 else order[i - 1] + size[ids[i - 1]]
        hi = cap if i + 1 == len(order) else order[i + 1]
        if t < lo or t + z > hi:
            raise IllegalMoveError(f"module {mid}: target [{t},{t + z}) is not free")
        if rec.kind is not MoveKind.SHIFT:
            raise IllegalMoveError(f"module {mid}: move within one gap is a shift, not a {rec.kind.value}")
        order[i] = t
        start[mid] = t
    state._at = dict(zip(order, ids))
    state._starts = order
    state._start = start


def new_array(capacity: int) -> ArrayState:
    return ArrayState(capacity)


def free_spaces(state: ArrayState) -> list[tuple[int, int]]:
    """Maximal unoccupied intervals as ``(start, size)``, left to right."""
    out = []
    pos = 0
    size = state._size
    at = state._at
    for s in state._starts:
        if s > pos:
            out.append((pos, s - pos))
        pos = s + size[at[s]]
    if pos < state.capacity:
        out.append((pos, state.capacity - pos))
    return out


def largest_free(state: ArrayState) -> int:
    return max((z for _, z in free_spaces(state)), default=0)


def classify(state: ArrayState, module_id: int, target_start: int) -> MoveKind:
    """Shift or flip, judged against the current layout (the move is not executed)."""
    s = state.start(module_id)
    z = state._size[module_id]
    if target_start > s:
        between = state.any_between(s + z, target_start)
    else:
        between = state.any_between(target_start + z, s)
    return MoveKind.FLIP if between else MoveKind.SHIFT


def check_move(state: ArrayState, module_id: int, target_start: int) -> None:
    """Raise if moving ``module_id`` to ``target_start`` is not a legal move."""
    s = state.start(module_id)
    z = state._size[module_id]
    if abs(target_start - s) < z:
        raise IllegalMoveError(
            f"module {module_id}: source [{s},{s + z}) and target "
            f"[{target_start},{target_start + z}) overlap"
        )
    if not state.is_free(target_start, z):
        raise IllegalMoveError(
            f"module {module_id}: target [{target_start},{target_start + z}) is not free"
        )


def apply_move(state: ArrayState, module_id: int, target_start: int) -> MoveRecord:
    """Relocate one module atomically and return the executed move."""
    check_move(state, module_id, target_start)
    s = state._start[module_id]
    z = state._size[module_id]
    # with the target free and disjoint from the source, any module starting
    # strictly between the two intervals lies wholly between them
    if target_start > s:
        lo, hi = s + z, target_start
    else:
        lo, hi = target_start + z, s
    starts = state._starts
    i = bisect_left(starts, lo)
    kind = MoveKind.FLIP if i < len(starts) and starts[i] < hi else MoveKind.SHIFT
    state._relocate(module_id, s, target_start)
    return MoveRecord(module_id, s, target_start, kind, z)


def shift_as_far(state: ArrayState, module_id: int, direction: str) -> Optional[MoveRecord]:
    """Slide a module across the whole adjacent gap in ``direction``.

    The move happens only when the gap is at least the module size; a
    shorter slide would overlap the module's own cells. Returns None when
    nothing moved.
    """
    try:
        s = state._start[module_id]
    except KeyError:
        raise UnknownModuleError(module_id) from None
    z = state._size[module_id]
    starts = state._starts
    i = bisect_left(starts, s)
    if direction == "left":
        if i == 0:
            target = 0
        else:
            p = starts[i - 1]
            target = p + state._size[state._at[p]]
        if s - target < z:
            return None
    elif direction == "right":
        nxt = starts[i + 1] if i + 1 < len(starts) else state.capacity
        target = nxt - z
        if target - s < z:
            return None
    else:
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    state._relocate(module_id, s, target)
    return MoveRecord(module_id, s, target, MoveKind.SHIFT, z)


# -- density predicates ---------------------------------------------------


def density(state: ArrayState) -> Fraction:
    return Fraction(state.used(), state.capacity)


def eq1_holds(state: ArrayState) -> bool:
    """Low-density condition: density <= 1/2 - max size / (2 * capacity)."""
    return density(state) <= Fraction(1, 2) - Fraction(state.max_size(), 2 * state.capacity)


def eq2_holds(state: ArrayState) -> bool:
    """Every module fits into the largest free space."""
    return state.max_size() <= largest_free(state)


# -- text formats ---------------------------------------------------------


def dump_snapshot(state: ArrayState) -> str:
    lines = [f"capacity={state.capacity}"]
    lines.extend(f"{mid},{z},{s}" for s, z, mid in state.modules())
    return "\n".join(lines) + "\n"


def parse_snapshot(text: str) -> ArrayState:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("capacity="):
        raise ValueError("line 1: expected 'capacity=<int>'")
    try:
        state = ArrayState(int(lines[0][len("capacity="):]))
    except ValueError as exc:
        raise ValueError(f"line 1: {exc}") from None
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'id,size,start', got {line!r}")
        try:
            mid, z, s = (int(p) for p in parts)
            state.place(mid, z, s)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return state


def format_moves(log: Iterable[MoveRecord]) -> str:
    return "".join(rec.to_line() + "\n" for rec in log)


def parse_moves(text: str) -> list[tuple[int, int, int, MoveKind]]:
    """Read ``move,<id>,<from>,<to>,<kind>`` lines back as tuples.

    Sizes are not part of the line format; replay the tuples through
    :func:`apply_move` to recover full records.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split(",")
        if len(parts) != 5 or parts[0] != "move":
            raise ValueError(f"line {lineno}: expected 'move,<id>,<from>,<to>,<shift|flip>'")
        out.append((int(parts[1]), int(parts[2]), int(parts[3]), MoveKind(parts[4])))
    return out
