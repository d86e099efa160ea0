import pytest

from contigsim.array import ArrayState, apply_move


class ReplayChecker:
    """Simulator observer that re-executes every reported move on a shadow
    array through ``apply_move`` and compares layouts after each op."""

    def __init__(self, capacity: int):
        self.shadow = ArrayState(capacity)
        self.ops = 0

    def __call__(self, kind, module, moves, state, strategy):
        if kind == "depart":
            self.shadow.remove(module.id)
        for rec in moves:
            again = apply_move(self.shadow, rec.module_id, rec.target_start)
            assert again == rec, f"reported {rec}, replay gave {again}"
        if kind == "arrive":
            self.shadow.place(module.id, module.size, state.start(module.id))
        assert self.shadow == state
        self.ops += 1


@pytest.fixture
def replay_checker():
    return ReplayChecker


def place_all(capacity, items):
    """Array with ``items`` given as (id, size, start)."""
    state = ArrayState(capacity)
    for mid, size, start in items:
        state.place(mid, size, start)
    return state


# acceptance results, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 9):
        if num not in ACCEPTANCE:
            terminalreporter.write_line(f"criterion {num}: FAIL  not run (test errored before recording)")
            continue
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
