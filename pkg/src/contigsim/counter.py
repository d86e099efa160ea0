"""Regular redundant binary counter over the digits {0, 1, 2}.

A digit string is *regular* when its 0s and 2s alternate once the 1s are
ignored. Adding or subtracting ``2**level`` then needs at most one carry
(``merge``) or one borrow (``split``), each touching two adjacent digits.

Digits are stored least significant first; ``str()`` prints them most
significant first, e.g. ``RedundantCounter.parse("012").value == 4``.

Steps produced by the planners are ``(op, level)`` tuples:

``take``   one buffer at ``level`` is consumed (digit -1)
``give``   one buffer at ``level`` is released (digit +1)
``split``  digit ``level`` -1, digit ``level-1`` +2
``merge``  digit ``level`` -2, digit ``level+1`` +1 (may add a new top digit)
``draw``   digit ``level`` (the top) +1, supplied from outside the counter
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Step = tuple[str, int]


def is_regular_digits(digits: Sequence[int]) -> bool:
    prev = None
    for d in digits:
        if d not in (0, 1, 2):
            return False
        if d == 1:
            continue
        if d == prev:
            return False
        prev = d
    return True


def _neighbors(d: Sequence[int], i: int) -> tuple[Optional[int], Optional[int]]:
    """Nearest non-1 digit positions below and above ``i``."""
    p = next((j for j in range(i - 1, -1, -1) if d[j] != 1), None)
    q = next((j for j in range(i + 1, len(d)) if d[j] != 1), None)
    return p, q


def apply_step(d: list[int], step: Step) -> None:
    op, j = step
    if op == "take":
        d[j] -= 1
    elif op == "give":
        d[j] += 1
    elif op == "split":
        d[j] -= 1
        d[j - 1] += 2
    elif op == "merge":
        d[j] -= 2
        if j + 1 == len(d):
            d.append(0)
        d[j + 1] += 1
    elif op == "draw":
        d[j] += 1
    else:
        raise ValueError(f"unknown step {op!r}")
    if d[j] < 0:
        raise ValueError(f"step {step} drove digit {j} negative")


def _borrow_above(d: Sequence[int], j: int) -> Step:
    """Turn the 0 at ``j`` into a larger digit using the digit above it."""
    return ("draw", j) if j == len(d) - 1 else ("split", j + 1)


def plan_subtract(digits: Sequence[int], level: int) -> list[Step]:
    """Steps that consume one buffer at ``level`` and keep the string regular."""
    d = list(digits)
    if not 0 <= level < len(d):
        raise ValueError(f"level {level} outside digit range 0..{len(d) - 1}")
    if d[level] == 0:
        return [_borrow_above(d, level), ("take", level)]
    old = d[level]
    d[level] -= 1
    p, q = _neighbors(d, level)
    if old == 2:
        if p is not None and q is not None:
            return [("take", level), _borrow_above(d, q)]
        return [("take", level)]
    if p is not None and d[p] == 0:
        return [("take", level), _borrow_above(d, level)]
    if q is not None and d[q] == 0:
        return [("take", level), _borrow_above(d, q)]
    return [("take", level)]


def plan_add(digits: Sequence[int], level: int) -> list[Step]:
    """Steps that release one buffer at ``level`` and keep the string regular."""
    d = list(digits)
    if not 0 <= level < len(d):
        raise ValueError(f"level {level} outside digit range 0..{len(d) - 1}")
    d[level] += 1
    new = d[level]
    if new == 3:
        return [("give", level), ("merge", level)]
    p, q = _neighbors(d, level)
    if new == 1:
        if p is not None and q is not None:
            return [("give", level), ("merge", q)]
        return [("give", level)]
    if p is not None and d[p] == 2:
        return [("give", level), ("merge", level)]
    if q is not None and d[q] == 2:
        return [("give", level), ("merge", q)]
    return [("give", level)]


@dataclass(frozen=True)
class RedundantCounter:
    digits: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "RedundantCounter":
        return cls(tuple(int(c) for c in reversed(text)))

    def __str__(self) -> str:
        return "".join(str(d) for d in reversed(self.digits))

    @property
    def value(self) -> int:
        return sum(d << i for i, d in enumerate(self.digits))

    def is_regular(self) -> bool:
        return is_regular_digits(self.digits)


def is_regular(counter: RedundantCounter) -> bool:
    return counter.is_regular()


def _run(counter: RedundantCounter, steps: list[Step]) -> RedundantCounter:
    d = list(counter.digits)
    for step in steps:
        apply_step(d, step)
    return RedundantCounter(tuple(d))


def counter_add(counter: RedundantCounter, level: int) -> RedundantCounter:
    """Add ``2**level``; at most one carry."""
    return _run(counter, plan_add(counter.digits, level))


def counter_subtract(counter: RedundantCounter, level: int) -> RedundantCounter:
    """Subtract ``2**level``; at most one borrow.

    Raises ValueError when the value would go negative or when the borrow
    would have to come from above the top digit.
    """
    if counter.value < (1 << level):
        raise ValueError(f"cannot subtract 2**{level} from {counter.value}")
    steps = plan_subtract(counter.digits, level)
    if any(op == "draw" for op, _ in steps):
        raise ValueError(f"subtracting 2**{level} from {counter} needs a digit above the top")
    return _run(counter, steps)
