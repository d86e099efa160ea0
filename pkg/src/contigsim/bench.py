"""Batch runs: every strategy against every generated trace."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .simulator import SimMetrics, result_row, run_simulation
from .strategies import expand_names
from .workload import Trace, generate_trace


@dataclass
class BenchConfig:
    capacities: Sequence[int]
    strategies: Sequence[str]
    distributions: Sequence[tuple[str, str]]  # (size, duration) descriptors
    n: int
    seeds: Sequence[int]
    output: Optional[str] = None
    plot_dir: Optional[str] = None
    parallel: int = 1

    def __post_init__(self):
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if not self.capacities or not self.distributions:
            raise ValueError("capacities and distributions must be non-empty")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.parallel < 1:
            raise ValueError(f"parallel must be >= 1, got {self.parallel}")
        self.strategies = expand_names(self.strategies)


@dataclass
class RunResult:
    strategy: str
    trace: Trace
    metrics: SimMetrics

    def row(self) -> str:
        return result_row(self.strategy, self.trace, self.metrics)


def _job(args: tuple[Trace, str]) -> SimMetrics:
    trace, strategy = args
    return run_simulation(trace, strategy)


def run_pairs(pairs: Sequence[tuple[Trace, str]], parallel: int = 1) -> list[RunResult]:
    """Run (trace, strategy) pairs; results come back in input order."""
    if parallel > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            metrics = list(pool.map(_job, pairs, chunksize=1))
    else:
        metrics = [_job(p) for p in pairs]
    return [RunResult(s, t, m) for (t, s), m in zip(pairs, metrics)]


def bench_traces(config: BenchConfig) -> list[Trace]:
    return [
        generate_trace(config.n, cap, size, dur, seed)
        for cap in config.capacities
        for size, dur in config.distributions
        for seed in config.seeds
    ]


def run_bench(config: BenchConfig) -> list[RunResult]:
    traces = bench_traces(config)
    pairs = [(t, s) for t in traces for s in config.strategies]
    return run_pairs(pairs, config.parallel)


def series_by_strategy(results: Sequence[RunResult]) -> dict[str, list[tuple[int, int, int]]]:
    """Group metrics per strategy in run order, for the plot files."""
    out: dict[str, list[tuple[int, int, int]]] = {}
    for r in results:
        m = r.metrics
        out.setdefault(r.strategy, []).append((m.makespan, m.moves, m.moved_mass))
    return out
