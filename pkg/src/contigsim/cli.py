"""Command-line entry point: ``contigsim {gen,run,bench,defrag,sort}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error (including an
unknown strategy name). ``CONTIG_SIM_SEED`` overrides ``--seed`` when set.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .array import dump_snapshot, format_moves, parse_snapshot
from .bench import BenchConfig, run_bench, run_pairs, series_by_strategy
from .defrag import left_right_shift
from .plotting import render_figures, write_series
from .simulator import RESULT_HEADER, SimulationStuck
from .sorter import SortRefused, sort_array
from .strategies import UnknownStrategyError, expand_names
from .workload import Distribution, TraceFormatError, generate_trace, read_trace, write_trace

SEED_ENV = "CONTIG_SIM_SEED"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {value}")
    return value


def _seed_list(text: str) -> list[int]:
    """``3``, ``0,4,9`` or an inclusive range ``0-9``."""
    out = []
    for part in text.split(","):
        lo, dash, hi = part.partition("-")
        if dash:
            a, b = _seed(lo), _seed(hi)
            if b < a:
                raise argparse.ArgumentTypeError(f"empty seed range {part!r}")
            out.extend(range(a, b + 1))
        else:
            out.append(_seed(part))
    return out


def _distribution(text: str) -> str:
    try:
        return str(Distribution.parse(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _env_seed() -> Optional[int]:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return None
    try:
        return _seed(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{SEED_ENV}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contigsim", description="Contiguous module placement simulator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded trace file")
    g.add_argument("--n", type=_positive, required=True, help="number of modules")
    g.add_argument("--capacity", type=_positive, required=True)
    g.add_argument("--size", type=_distribution, default="exp:32", help="size distribution (default exp:32)")
    g.add_argument("--dur", type=_distribution, default="exp:50", help="duration distribution (default exp:50)")
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("-o", "--output", required=True, help="trace file to write")
    g.set_defaults(func=cmd_gen)

    strategy_help = "strategy name, repeatable; 'all' runs all six (default: all)"

    r = sub.add_parser("run", help="replay trace files against strategies")
    r.add_argument("traces", nargs="+", help="trace files; each one is a run")
    r.add_argument("--strategy", action="append", help=strategy_help)
    r.add_argument("-o", "--output", help="append result rows here (header written for a new file)")
    r.add_argument("--emit-plot", metavar="DIR", help="write per-strategy .dat series and PNG figures")
    r.add_argument("--parallel", type=_positive, default=1, help="worker processes (default 1)")
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("bench", help="generate traces for a seed range and run them")
    b.add_argument("--capacity", type=_positive, action="append", help="repeatable (default 1024)")
    b.add_argument("--n", type=_positive, default=2000)
    b.add_argument("--size", type=_distribution, default="exp:32")
    b.add_argument("--dur", type=_distribution, default="exp:50")
    b.add_argument("--seed", type=_seed_list, default=[0], help="seed, list 0,3,5 or range 0-9")
    b.add_argument("--strategy", action="append", help=strategy_help)
    b.add_argument("-o", "--output", help="append result rows here")
    b.add_argument("--emit-plot", metavar="DIR")
    b.add_argument("--parallel", type=_positive, default=1)
    b.set_defaults(func=cmd_bench)

    for name, func, what in (
        ("defrag", cmd_defrag, "connect the free space with the two-pass shift"),
        ("sort", cmd_sort, "sort modules by size (free space ends at the left)"),
    ):
        p = sub.add_parser(name, help=what)
        p.add_argument("snapshot", help="snapshot file, or - for stdin")
        p.add_argument("--check", action="store_true", help="exit 1 unless the postcondition holds")
        p.set_defaults(func=func)
    return parser


# -- commands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    seed = _env_seed()
    trace = generate_trace(args.n, args.capacity, args.size, args.dur, args.seed if seed is None else seed)
    write_trace(trace, args.output)
    print(args.output)
    return EXIT_OK


def _strategies(names) -> list[str]:
    try:
        return expand_names(names or ["all"])
    except UnknownStrategyError as exc:
        raise UsageError(str(exc)) from None


def _emit(results, output: Optional[str], plot_dir: Optional[str]) -> None:
    rows = [r.row() for r in results]
    if output is None:
        sys.stdout.write(RESULT_HEADER + "\n" + "".join(row + "\n" for row in rows))
    else:
        fresh = not os.path.exists(output) or os.path.getsize(output) == 0
        with open(output, "a", newline="\n", encoding="ascii") as fh:
            if fresh:
                fh.write(RESULT_HEADER + "\n")
            fh.write("".join(row + "\n" for row in rows))
    if plot_dir is not None:
        series = series_by_strategy(results)
        written = write_series(plot_dir, series) + render_figures(plot_dir, series)
        for path in written:
            print(path, file=sys.stderr)


def cmd_run(args) -> int:
    names = _strategies(args.strategy)
    traces = [read_trace(path) for path in args.traces]
    pairs = [(t, s) for t in traces for s in names]
    _emit(run_pairs(pairs, args.parallel), args.output, args.emit_plot)
    return EXIT_OK


def cmd_bench(args) -> int:
    names = _strategies(args.strategy)
    seed = _env_seed()
    config = BenchConfig(
        capacities=args.capacity or [1024],
        strategies=names,
        distributions=[(args.size, args.dur)],
        n=args.n,
        seeds=args.seed if seed is None else [seed],
        output=args.output,
        plot_dir=args.emit_plot,
        parallel=args.parallel,
    )
    _emit(run_bench(config), config.output, config.plot_dir)
    return EXIT_OK


def _read_snapshot(path: str):
    if path == "-":
        return parse_snapshot(sys.stdin.read())
    with open(path, encoding="ascii") as fh:
        return parse_snapshot(fh.read())


def cmd_defrag(args) -> int:
    state = _read_snapshot(args.snapshot)
    report = left_right_shift(state)
    sys.stdout.write(format_moves(report.move_log))
    print(f"report,moves={len(report.move_log)},free_spaces={len(report.final_free_spaces)},"
          f"connected={str(report.connected).lower()}")
    sys.stdout.write(dump_snapshot(state))
    if args.check and not report.connected:
        print("check failed: free space is not connected", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_sort(args) -> int:
    state = _read_snapshot(args.snapshot)
    try:
        report = sort_array(state)
    except SortRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(format_moves(report.move_log))
    print(f"report,moves={len(report.move_log)},prepass={report.prepass_moves},loop={report.loop_moves},"
          f"sorted={str(report.sorted).lower()},free_space_left={str(report.free_space_at_left).lower()}")
    sys.stdout.write(dump_snapshot(state))
    if args.check and not (report.sorted and report.free_space_at_left):
        print("check failed: layout is not sorted with the free space at the left", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, TraceFormatError, SimulationStuck) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
