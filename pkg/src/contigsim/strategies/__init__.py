"""Online placement strategies and the name registry used by the CLI."""

from .base import Strategy, StrategyDecision
from .classsort import ClassLayout, ClassSort, class_sort_arrival, class_sort_departure, rounded_level
from .fit import BestFit, FirstFit, best_fit, first_fit
from .localshift import DEFAULT_RADIUS, LocalShift, local_shift_arrival
from .sorting import (
    AlwaysSorted,
    DelayedSort,
    always_sorted_arrival,
    always_sorted_departure,
    delayed_sort_arrival,
    delayed_sort_departure,
)

STRATEGY_NAMES = ("firstfit", "bestfit", "alwayssorted", "delayedsort", "classsort", "localshift")
ALL_STRATEGIES = ("firstfit", "bestfit", "alwayssorted", "delayedsort", "classsort", f"localshift:{DEFAULT_RADIUS}")


class UnknownStrategyError(ValueError):
    pass


def make_strategy(name: str) -> Strategy:
    """Build a fresh strategy instance from ``firstfit``, ``localshift:8`` and so on."""
    base, _, arg = name.partition(":")
    if base == "localshift":
        if not arg:
            return LocalShift()
        try:
            radius = int(arg)
        except ValueError:
            raise UnknownStrategyError(f"bad localshift radius {arg!r}") from None
        return LocalShift(radius)
    if arg:
        raise UnknownStrategyError(f"strategy {base!r} takes no parameter")
    factories = {
        "firstfit": FirstFit,
        "bestfit": BestFit,
        "alwayssorted": AlwaysSorted,
        "delayedsort": DelayedSort,
        "classsort": ClassSort,
    }
    try:
        return factories[base]()
    except KeyError:
        raise UnknownStrategyError(
            f"unknown strategy {name!r}; valid: {', '.join(STRATEGY_NAMES[:-1])}, localshift:<radius>"
        ) from None


def expand_names(names) -> list[str]:
    out = []
    for n in names:
        out.extend(ALL_STRATEGIES if n == "all" else [n])
    for n in out:
        make_strategy(n)
    return out


__all__ = [
    "ALL_STRATEGIES",
    "AlwaysSorted",
    "BestFit",
    "ClassLayout",
    "ClassSort",
    "DelayedSort",
    "FirstFit",
    "LocalShift",
    "Strategy",
    "StrategyDecision",
    "UnknownStrategyError",
    "always_sorted_arrival",
    "always_sorted_departure",
    "best_fit",
    "class_sort_arrival",
    "class_sort_departure",
    "delayed_sort_arrival",
    "delayed_sort_departure",
    "expand_names",
    "first_fit",
    "local_shift_arrival",
    "make_strategy",
    "rounded_level",
]
