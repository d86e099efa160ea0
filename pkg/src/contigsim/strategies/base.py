from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..array import ArrayState, MoveRecord, ModuleSpec


@dataclass
class StrategyDecision:
    """Outcome of one arrival: ``placed`` is the start cell, or None for Wait."""

    placed: Optional[int]
    moves: list[MoveRecord] = field(default_factory=list)

    @property
    def wait(self) -> bool:
        return self.placed is None


WAIT = None


class Strategy:
    """Online placement policy.

    ``arrive`` either places the module (after zero or more moves) or
    returns a Wait decision and leaves the array untouched. ``depart``
    removes the module and returns the moves it triggered.
    """

    name = "strategy"

    def arrive(self, state: ArrayState, module: ModuleSpec) -> StrategyDecision:
        raise NotImplementedError

    def depart(self, state: ArrayState, module_id: int) -> list[MoveRecord]:
        state.remove(module_id)
        return []

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"
