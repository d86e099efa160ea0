"""Contiguous module placement: array model, offline compaction and sorting,
online strategies, trace generation and a discrete-event simulator."""

from .array import (
    ArrayState,
    CostModel,
    IllegalMoveError,
    ModuleSpec,
    MoveKind,
    MoveRecord,
    UnknownModuleError,
    apply_move,
    classify,
    density,
    eq1_holds,
    eq2_holds,
    free_spaces,
    new_array,
    shift_as_far,
)
from .counter import RedundantCounter, counter_add, counter_subtract, is_regular
from .defrag import DefragReport, PartitionInstance, gen_hardness_instance, left_right_shift, min_moves_oracle
from .simulator import SimMetrics, optimal_makespan_bound, run_simulation
from .sorter import SortRefused, SortReport, gen_lower_bound_instance, sort_array, steps_lower_bound
from .strategies import ALL_STRATEGIES, Strategy, StrategyDecision, make_strategy
from .workload import Trace, generate_trace, read_trace, write_trace

__version__ = "0.1.0"

__all__ = [
    "ALL_STRATEGIES",
    "ArrayState",
    "CostModel",
    "DefragReport",
    "IllegalMoveError",
    "ModuleSpec",
    "MoveKind",
    "MoveRecord",
    "PartitionInstance",
    "RedundantCounter",
    "SimMetrics",
    "SortRefused",
    "SortReport",
    "Strategy",
    "StrategyDecision",
    "Trace",
    "UnknownModuleError",
    "apply_move",
    "classify",
    "counter_add",
    "counter_subtract",
    "density",
    "eq1_holds",
    "eq2_holds",
    "free_spaces",
    "gen_hardness_instance",
    "gen_lower_bound_instance",
    "generate_trace",
    "is_regular",
    "left_right_shift",
    "make_strategy",
    "min_moves_oracle",
    "new_array",
    "optimal_makespan_bound",
    "read_trace",
    "run_simulation",
    "shift_as_far",
    "sort_array",
    "steps_lower_bound",
    "write_trace",
]
