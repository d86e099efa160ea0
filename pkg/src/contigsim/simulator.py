"""Discrete-event replay of a trace against one strategy.

Timing rule: module 1 becomes available at t=0 and module i at one time
unit after module i-1 was placed. Placement and moves take no time. A
placed module departs at ``placement + duration``; departures due at or
before the current time are processed before an arrival is attempted. A
module that cannot be placed blocks the queue (no overtaking) and retries
after each later departure time. The makespan is the time of the last
departure.
"""

from __future__ import annotations

import heapq
import operator
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .array import ArrayState, ModuleSpec, MoveRecord
from .strategies import Strategy, make_strategy
from .workload import Trace

RESULT_HEADER = "strategy,capacity,n,seed,size_dist,dur_dist,makespan,moves,moved_mass,waits"

# observer(kind, module, moves, state, strategy); kind is "arrive" or "depart"
Observer = Callable[[str, ModuleSpec, list, ArrayState, Strategy], None]


_size_of = operator.attrgetter("size")


class SimulationStuck(RuntimeError):
    """A module waits while nothing is left to depart."""


@dataclass
class SimMetrics:
    makespan: int = 0
    moves: int = 0
    moved_mass: int = 0
    waits: int = 0
    histogram: Counter = field(default_factory=Counter)
    move_log: Optional[list[MoveRecord]] = None

    def record(self, moves: list[MoveRecord]) -> None:
        self.histogram[len(moves)] += 1
        self.moves += len(moves)
        self.moved_mass += sum(map(_size_of, moves))
        if self.move_log is not None:
            self.move_log.extend(moves)


def _check_trace(trace: Trace) -> None:
    for m in trace.modules:
        if m.size > trace.capacity:
            raise ValueError(f"module {m.id} of size {m.size} exceeds capacity {trace.capacity}")


def run_simulation(
    trace: Trace,
    strategy: Union[str, Strategy],
    observer: Optional[Observer] = None,
    keep_log: bool = False,
) -> SimMetrics:
    _check_trace(trace)
    strat = make_strategy(strategy) if isinstance(strategy, str) else strategy
    state = ArrayState(trace.capacity)
    metrics = SimMetrics(move_log=[] if keep_log else None)
    pending: list[tuple[int, int, int]] = []
    by_id = {m.id: m for m in trace.modules}

    def depart_until(t: int) -> None:
        while pending and pending[0][0] <= t:
            when, _, mid = heapq.heappop(pending)
            moves = strat.depart(state, mid)
            metrics.record(moves)
            metrics.makespan = max(metrics.makespan, when)
            if observer is not None:
                observer("depart", by_id[mid], moves, state, strat)

    t = 0
    for seq, mod in enumerate(trace.modules):
        blocked = False
        while True:
            depart_until(t)
            decision = strat.arrive(state, mod)
            if not decision.wait:
                break
            if decision.moves:
                raise AssertionError(f"{strat.name} moved modules but returned Wait")
            blocked = True
            if not pending:
                raise SimulationStuck(f"{strat.name} cannot place module {mod.id} (size {mod.size}) at t={t}")
            t = pending[0][0]
        metrics.waits += blocked
        metrics.record(decision.moves)
        if observer is not None:
            observer("arrive", mod, decision.moves, state, strat)
        heapq.heappush(pending, (t + mod.duration, seq, mod.id))
        t += 1
    depart_until(float("inf"))
    return metrics


def optimal_makespan_bound(trace: Trace) -> int:
    """Makespan when a module waits only if the total free space is too small."""
    _check_trace(trace)
    pending: list[tuple[int, int]] = []
    used = 0
    makespan = 0
    t = 0
    for mod in trace.modules:
        while True:
            while pending and pending[0][0] <= t:
                when, size = heapq.heappop(pending)
                used -= size
                makespan = max(makespan, when)
            if trace.capacity - used >= mod.size:
                break
            t = pending[0][0]
        used += mod.size
        heapq.heappush(pending, (t + mod.duration, mod.size))
        t += 1
    for when, _ in pending:
        makespan = max(makespan, when)
    return makespan


def result_row(strategy: str, trace: Trace, metrics: SimMetrics) -> str:
    return ",".join(
        str(v)
        for v in (
            strategy,
            trace.capacity,
            len(trace),
            trace.seed,
            trace.size_dist or "-",
            trace.dur_dist or "-",
            metrics.makespan,
            metrics.moves,
            metrics.moved_mass,
            metrics.waits,
        )
    )
