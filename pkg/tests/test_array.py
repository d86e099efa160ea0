from fractions import Fraction

import pytest

from conftest import place_all
from contigsim.array import (
    ArrayState,
    CostModel,
    IllegalMoveError,
    MoveKind,
    MoveRecord,
    UnknownModuleError,
    apply_move,
    check_move,
    classify,
    commit_plan,
    density,
    dump_snapshot,
    eq1_holds,
    eq2_holds,
    format_moves,
    free_spaces,
    largest_free,
    log_cost,
    new_array,
    parse_moves,
    parse_snapshot,
    shift_as_far,
    translate_run,
)


def test_new_array():
    assert free_spaces(new_array(10)) == [(0, 10)]
    assert new_array(1024).capacity == 1024
    with pytest.raises(ValueError):
        new_array(0)


def test_free_spaces():
    assert free_spaces(place_all(10, [(1, 3, 3)])) == [(0, 3), (6, 4)]
    assert free_spaces(new_array(10)) == [(0, 10)]
    assert free_spaces(place_all(5, [(1, 2, 0), (2, 3, 2)])) == []


def test_apply_move_shift_and_flip():
    s = place_all(10, [(1, 2, 0)])
    rec = apply_move(s, 1, 5)
    assert rec == MoveRecord(1, 0, 5, MoveKind.SHIFT, 2)
    assert s.start(1) == 5

    s = place_all(10, [(1, 2, 0), (2, 2, 3)])
    rec = apply_move(s, 1, 6)
    assert rec.kind is MoveKind.FLIP
    assert free_spaces(s) == [(0, 3), (5, 1), (8, 2)]


def test_apply_move_rejects_overlap_and_occupied():
    s = place_all(10, [(1, 3, 2)])
    with pytest.raises(IllegalMoveError):
        apply_move(s, 1, 4)
    s = place_all(10, [(1, 2, 0), (2, 2, 5)])
    with pytest.raises(IllegalMoveError):
        apply_move(s, 1, 4)
    with pytest.raises(IllegalMoveError):
        apply_move(s, 1, 9)  # runs off the end
    with pytest.raises(UnknownModuleError):
        apply_move(s, 3, 0)
    # rejected moves leave the state alone
    assert s.placements() == {1: (0, 2), 2: (5, 2)}


def test_shift_as_far():
    s = place_all(10, [(1, 3, 3)])
    rec = shift_as_far(s, 1, "right")
    assert rec.target_start == 7 and s.interval(1) == (7, 10)

    s = place_all(10, [(9, 2, 0), (1, 3, 3)])
    assert shift_as_far(s, 1, "left") is None
    assert s.start(1) == 3

    s = place_all(10, [(1, 2, 4)])
    assert shift_as_far(s, 1, "left").target_start == 0

    s = place_all(10, [(1, 2, 0)])
    assert shift_as_far(s, 1, "left") is None
    with pytest.raises(UnknownModuleError):
        shift_as_far(s, 5, "left")
    with pytest.raises(ValueError):
        shift_as_far(s, 1, "up")


def test_shift_as_far_blocked_by_neighbour():
    s = place_all(12, [(1, 2, 0), (2, 2, 4), (3, 3, 9)])
    rec = shift_as_far(s, 2, "right")
    # gap of 3 to the module at 9
    assert rec.target_start == 7 and s.gap_right(2) == 0


def test_density_and_predicates():
    s = place_all(10, [(1, 2, 0), (2, 2, 5)])
    assert density(s) == Fraction(2, 5)
    assert eq1_holds(s)
    s = place_all(7, [(1, 3, 0), (2, 3, 4)])
    assert not eq2_holds(s)
    empty = new_array(9)
    assert density(empty) == 0 and eq1_holds(empty) and eq2_holds(empty)


def test_eq1_threshold_is_exact():
    # 1/2 - 2/(2*12) = 5/12 exactly; density 5/12 must pass, 6/12 must not
    s = place_all(12, [(1, 2, 0), (2, 2, 4), (3, 1, 8)])
    assert density(s) == Fraction(5, 12) and eq1_holds(s)
    s.place(4, 1, 11)
    assert not eq1_holds(s)


def test_log_cost():
    assert log_cost([], CostModel.UNIT_COUNT) == 0
    assert log_cost([], CostModel.MASS) == 0
    log = [MoveRecord(1, 0, 5, MoveKind.SHIFT, 3), MoveRecord(2, 0, 9, MoveKind.FLIP, 5)]
    assert log_cost(log, CostModel.UNIT_COUNT) == 2
    assert log_cost(log, CostModel.MASS) == 8


def test_classify_matches_apply():
    s = place_all(12, [(1, 2, 0), (2, 2, 3), (3, 1, 11)])
    assert classify(s, 1, 6) is MoveKind.FLIP
    assert classify(s, 2, 6) is MoveKind.SHIFT
    check_move(s, 2, 6)
    assert apply_move(s, 2, 6).kind is MoveKind.SHIFT


def test_place_and_remove():
    s = ArrayState(8)
    s.place(1, 3, 2)
    with pytest.raises(ValueError):
        s.place(1, 1, 6)
    with pytest.raises(IllegalMoveError):
        s.place(2, 2, 3)
    assert s.remove(1) == (2, 3)
    assert len(s) == 0
    with pytest.raises(UnknownModuleError):
        s.remove(1)


def test_snapshot_round_trip():
    s = place_all(20, [(3, 4, 2), (7, 1, 10), (1, 5, 15)])
    text = dump_snapshot(s)
    assert text == "capacity=20\n3,4,2\n7,1,10\n1,5,15\n"
    assert parse_snapshot(text) == s


@pytest.mark.parametrize(
    "text",
    ["", "cap=3\n", "capacity=x\n", "capacity=5\n1,2\n", "capacity=5\n1,3,0\n2,3,2\n", "capacity=5\n1,3,4\n"],
)
def test_snapshot_errors(text):
    with pytest.raises(ValueError):
        parse_snapshot(text)


def test_move_lines_round_trip():
    log = [MoveRecord(1, 4, 7, MoveKind.SHIFT, 3), MoveRecord(2, 0, 9, MoveKind.FLIP, 1)]
    text = format_moves(log)
    assert text == "move,1,4,7,shift\nmove,2,0,9,flip\n"
    assert parse_moves(text) == [(1, 4, 7, MoveKind.SHIFT), (2, 0, 9, MoveKind.FLIP)]
    with pytest.raises(ValueError):
        parse_moves("move,1,2,3,hop\n")


def test_translate_run_right_and_left():
    s = place_all(20, [(1, 5, 0), (2, 3, 5), (3, 2, 8)])
    moves = translate_run(s, 1, 2, 5)
    # rightmost first
    assert [m.module_id for m in moves] == [3, 2]
    assert s.placements() == {1: (0, 5), 2: (10, 3), 3: (13, 2)}
    moves = translate_run(s, 1, 2, -5)
    assert [m.module_id for m in moves] == [2, 3]
    assert s.placements() == {1: (0, 5), 2: (5, 3), 3: (8, 2)}


def test_translate_run_checks_legality():
    s = place_all(20, [(1, 5, 0), (2, 3, 5)])
    with pytest.raises(IllegalMoveError):
        translate_run(s, 0, 2, 2)  # module 1 bigger than the step
    with pytest.raises(IllegalMoveError):
        translate_run(s, 1, 1, -3)  # no room on the left
    assert s.placements() == {1: (0, 5), 2: (5, 3)}


def test_commit_plan_validates():
    s = place_all(10, [(1, 2, 0), (2, 2, 4)])
    with pytest.raises(IllegalMoveError):
        commit_plan(s, [MoveRecord(2, 4, 3, MoveKind.SHIFT, 2)])  # overlaps itself
    with pytest.raises(IllegalMoveError):
        commit_plan(s, [MoveRecord(2, 5, 8, MoveKind.SHIFT, 2)])  # wrong source
    with pytest.raises(IllegalMoveError):
        commit_plan(s, [MoveRecord(1, 0, 3, MoveKind.SHIFT, 2)])  # runs into module 2
    assert s.placements() == {1: (0, 2), 2: (4, 2)}
    commit_plan(s, [MoveRecord(2, 4, 8, MoveKind.SHIFT, 2), MoveRecord(1, 0, 2, MoveKind.SHIFT, 2)])
    assert s.placements() == {1: (2, 2), 2: (8, 2)}
    assert largest_free(s) == 4
