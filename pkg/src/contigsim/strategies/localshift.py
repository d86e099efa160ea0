"""Best fit, falling back to shifting the modules around one free space."""

from __future__ import annotations

from ..array import ArrayState, ModuleSpec, MoveKind, MoveRecord, commit_plan
from .base import Strategy, StrategyDecision
from .fit import best_fit

DEFAULT_RADIUS = 8


def _plan_side(mods, first: int, last: int, edge: int, direction: str) -> tuple[list[MoveRecord], int]:
    """Shift ``mods[first:last]`` as far as possible toward ``edge``, nearest first.

    Returns the moves and the position of the inner boundary after moving.
    """
    moves = []
    if direction == "left":
        for s, z, mid in mods[first:last]:
            if s - edge >= z:
                moves.append(MoveRecord(mid, s, edge, MoveKind.SHIFT, z))
                s = edge
            edge = s + z
    else:
        for s, z, mid in reversed(mods[first:last]):
            if edge - s - z >= z:
                moves.append(MoveRecord(mid, s, edge - z, MoveKind.SHIFT, z))
                s = edge - z
            edge = s
    return moves, edge


def local_shift_arrival(state: ArrayState, module: ModuleSpec, radius: int = DEFAULT_RADIUS) -> StrategyDecision:
    """Try best fit, then each free space left to right with its neighborhood pushed aside.

    The neighborhood of a free space is the ``radius`` nearest blocks
    (modules or free spaces) on each side, so at most ``2 * radius``
    modules move.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    decision = best_fit(state, module)
    if not decision.wait:
        return decision
    m = module.size
    cap = state.capacity
    blocks = list(state.iter_blocks())
    mods = state.modules()
    # prefix counts: modules among blocks[:i] and cells used by mods[:j]
    mod_prefix = [0]
    for b in blocks:
        mod_prefix.append(mod_prefix[-1] + (b[0] == "module"))
    used_prefix = [0]
    for _, z, _ in mods:
        used_prefix.append(used_prefix[-1] + z)
    nb = len(blocks)
    for idx, block in enumerate(blocks):
        if block[0] == "module":
            continue
        # the neighborhood modules are contiguous in ``mods`` on each side
        gap = mod_prefix[idx]
        first = mod_prefix[max(0, idx - radius)]
        last = mod_prefix[min(nb, idx + 1 + radius)]
        left_edge = 0 if first == 0 else mods[first - 1][0] + mods[first - 1][1]
        right_edge = cap if last == len(mods) else mods[last][0]
        # even perfect packing cannot beat the free cells between the edges
        if right_edge - left_edge - (used_prefix[last] - used_prefix[first]) < m:
            continue
        left_moves, lo = _plan_side(mods, first, gap, left_edge, "left")
        right_moves, hi = _plan_side(mods, gap, last, right_edge, "right")
        planned = left_moves + right_moves
        if not planned or hi - lo < m:
            continue
        commit_plan(state, planned)
        state.place(module.id, m, lo)
        return StrategyDecision(lo, planned)
    return StrategyDecision(None)


class LocalShift(Strategy):
    def __init__(self, radius: int = DEFAULT_RADIUS):
        if radius < 1:
            raise ValueError(f"radius must be >= 1, got {radius}")
        self.radius = radius
        self.name = f"localshift:{radius}"

    def arrive(self, state, module):
        return local_shift_arrival(state, module, self.radius)
