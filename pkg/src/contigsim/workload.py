"""Seeded module traces and the trace file format.

Randomness comes from numpy's PCG64 bit generator seeded with the trace
seed. Sizes consume the first ``n`` uniform doubles and durations the next
``n``; each double goes through the inverse CDF of its distribution and is
rounded half-up to an integer. Sizes are clamped to ``[1, capacity // 2]``
and durations to ``>= 1``.

Trace file (ASCII, LF)::

    capacity=<int>
    seed=<int>
    id,size,duration
    1,17,43
    ...
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence, TextIO, Union

import numpy as np

from .array import ModuleSpec

HEADER = "id,size,duration"


class TraceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Distribution:
    """``uniform:LO:HI``, ``exp:MEAN``, ``zipf:ALPHA[:MAX]`` or ``weibull:SHAPE:SCALE``."""

    kind: str
    params: tuple[float, ...]

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        kind, *rest = text.split(":")
        try:
            params = tuple(float(p) for p in rest)
        except ValueError:
            raise ValueError(f"bad distribution parameters in {text!r}") from None
        arity = {"uniform": (2,), "exp": (1,), "zipf": (1, 2), "weibull": (2,)}
        if kind not in arity:
            raise ValueError(f"unknown distribution {kind!r}; use uniform, exp, zipf or weibull")
        if len(params) not in arity[kind]:
            raise ValueError(f"{kind} takes {' or '.join(map(str, arity[kind]))} parameters, got {text!r}")
        if kind == "uniform" and not (1 <= params[0] <= params[1]):
            raise ValueError(f"uniform needs 1 <= LO <= HI, got {text!r}")
        if kind != "uniform" and any(p <= 0 for p in params):
            raise ValueError(f"{kind} parameters must be positive, got {text!r}")
        return cls(kind, params)

    def __str__(self) -> str:
        return ":".join([self.kind] + [f"{p:g}" for p in self.params])

    def quantiles(self, u: np.ndarray, cap: int) -> np.ndarray:
        """Continuous (or discrete) values for uniforms ``u`` in [0, 1)."""
        if self.kind == "uniform":
            lo, hi = self.params
            return np.floor(lo + u * (hi - lo + 1))
        if self.kind == "exp":
            return -self.params[0] * np.log1p(-u)
        if self.kind == "weibull":
            shape, scale = self.params
            return scale * (-np.log1p(-u)) ** (1.0 / shape)
        alpha = self.params[0]
        kmax = int(self.params[1]) if len(self.params) > 1 else cap
        weights = np.arange(1, kmax + 1, dtype=float) ** -alpha
        cdf = np.cumsum(weights) / weights.sum()
        return np.searchsorted(cdf, u, side="right").astype(float) + 1


def round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5).astype(np.int64)


@dataclass(frozen=True)
class Trace:
    capacity: int
    modules: tuple[ModuleSpec, ...]
    seed: int = 0
    size_dist: str = field(default="", compare=False)
    dur_dist: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modules", tuple(self.modules))
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        ids = set()
        for m in self.modules:
            if m.size > self.capacity:
                raise ValueError(f"module {m.id} of size {m.size} exceeds capacity {self.capacity}")
            if m.id in ids:
                raise ValueError(f"duplicate module id {m.id}")
            ids.add(m.id)

    def __len__(self) -> int:
        return len(self.modules)


def generate_trace(
    n: int,
    capacity: int,
    size_dist: Union[str, Distribution],
    dur_dist: Union[str, Distribution],
    seed: int,
) -> Trace:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if capacity < 2:
        raise ValueError(f"capacity must be >= 2, got {capacity}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    sd = Distribution.parse(size_dist) if isinstance(size_dist, str) else size_dist
    dd = Distribution.parse(dur_dist) if isinstance(dur_dist, str) else dur_dist
    rng = np.random.Generator(np.random.PCG64(seed))
    u_size = rng.random(n)
    u_dur = rng.random(n)
    cap = capacity // 2
    sizes = np.clip(round_half_up(sd.quantiles(u_size, cap)), 1, cap)
    durs = np.maximum(round_half_up(dd.quantiles(u_dur, cap)), 1)
    mods = tuple(ModuleSpec(i + 1, int(s), int(d)) for i, (s, d) in enumerate(zip(sizes, durs)))
    return Trace(capacity, mods, seed, str(sd), str(dd))


def format_trace(trace: Trace) -> str:
    out = [f"capacity={trace.capacity}", f"seed={trace.seed}", HEADER]
    out.extend(f"{m.id},{m.size},{m.duration}" for m in trace.modules)
    return "\n".join(out) + "\n"


def write_trace(trace: Trace, sink: Union[str, os.PathLike, TextIO]) -> None:
    text = format_trace(trace)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)


def _expect(line: str, key: str, lineno: int) -> int:
    prefix = key + "="
    if not line.startswith(prefix):
        raise TraceFormatError(f"line {lineno}: expected '{prefix}<int>', got {line!r}")
    try:
        return int(line[len(prefix):])
    except ValueError:
        raise TraceFormatError(f"line {lineno}: {key} is not an integer: {line!r}") from None


def parse_trace(lines: Sequence[str]) -> Trace:
    if len(lines) < 3:
        raise TraceFormatError(f"line {len(lines) + 1}: truncated header")
    capacity = _expect(lines[0], "capacity", 1)
    seed = _expect(lines[1], "seed", 2)
    if lines[2] != HEADER:
        raise TraceFormatError(f"line 3: expected header {HEADER!r}, got {lines[2]!r}")
    mods = []
    for lineno, line in enumerate(lines[3:], start=4):
        parts = line.split(",")
        try:
            if len(parts) != 3:
                raise ValueError(f"expected 3 fields, got {len(parts)}")
            mods.append(ModuleSpec(*(int(p) for p in parts)))
        except ValueError as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from None
    try:
        return Trace(capacity, tuple(mods), seed)
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from None


def read_trace(source: Union[str, os.PathLike, TextIO]) -> Trace:
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="ascii") as fh:
            text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return parse_trace(lines)


def trace_from_pairs(capacity: int, pairs: Sequence[tuple[int, int]], seed: int = 0) -> Trace:
    """Convenience for tests: ``[(size, duration), ...]`` with ids 1..n."""
    return Trace(capacity, tuple(ModuleSpec(i, s, d) for i, (s, d) in enumerate(pairs, start=1)), seed)
