"""Classical placement rules; neither ever moves a placed module."""

from __future__ import annotations

from typing import Optional

from ..array import ArrayState, ModuleSpec, free_spaces
from .base import Strategy, StrategyDecision


def first_fit_start(state: ArrayState, size: int) -> Optional[int]:
    for s, z in free_spaces(state):
        if z >= size:
            return s
    return None


def best_fit_start(state: ArrayState, size: int) -> Optional[int]:
    best = None
    for s, z in free_spaces(state):
        if z >= size and (best is None or z < best[1]):
            best = (s, z)
    return None if best is None else best[0]


def first_fit(state: ArrayState, module: ModuleSpec) -> StrategyDecision:
    start = first_fit_start(state, module.size)
    if start is not None:
        state.place(module.id, module.size, start)
    return StrategyDecision(start)


def best_fit(state: ArrayState, module: ModuleSpec) -> StrategyDecision:
    start = best_fit_start(state, module.size)
    if start is not None:
        state.place(module.id, module.size, start)
    return StrategyDecision(start)


class FirstFit(Strategy):
    name = "firstfit"

    def arrive(self, state, module):
        return first_fit(state, module)


class BestFit(Strategy):
    name = "bestfit"

    def arrive(self, state, module):
        return best_fit(state, module)
