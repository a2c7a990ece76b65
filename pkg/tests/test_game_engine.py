"""Legal moves, prefixation, run enumeration, and adjudication."""

import pytest

from ptarith.formula_core import parse_formula
from ptarith.game_engine import (
    BOT_LABEL,
    IllegalMoveError,
    IllegalPositionError,
    Labmove,
    PositionGame,
    STANDARD,
    TOP_LABEL,
    VERDICT_BOT,
    VERDICT_TOP,
    VERDICT_UNDETERMINED,
    Valuation,
    adjudicate,
    apply_labmove,
    depth_bound,
    enumerate_legal_runs,
    eval_elementary,
    first_illegal,
    legal_moves,
    parse_run,
    prefixate,
    standard_valuation,
)


def game(text, bound=2, **assign):
    e = standard_valuation(bound)
    for name, value in assign.items():
        e = e.extend(name, value)
    return PositionGame(parse_formula(text), e, STANDARD)


def test_valuation_constants_range_over_the_bound():
    assert standard_valuation(2).constants() == [0, 1, 2, 3]
    # the degenerate bound leaves only the zero constant
    assert standard_valuation(0).constants() == [0]


def test_valuation_exposes_the_bound_as_a_variable():
    e = Valuation(3, {"s": 5})
    assert e["bb"] == 3
    assert e["s"] == 5


def test_choice_conjunction_moves_belong_to_the_environment():
    g = game("0 = 0 cand 0 = 1")
    moves = {(lbl, mv) for lbl, mv, _ in legal_moves(g)}
    assert moves == {(BOT_LABEL, "0"), (BOT_LABEL, "1")}


def test_choice_disjunction_moves_belong_to_the_machine():
    g = game("0 = 0 cor 0 = 1")
    moves = {(lbl, mv) for lbl, mv, _ in legal_moves(g)}
    assert moves == {(TOP_LABEL, "0"), (TOP_LABEL, "1")}


def test_choice_quantifier_moves_are_constants():
    g = game("call x.(x = 0)", bound=1)
    moves = {mv for lbl, mv, _ in legal_moves(g) if lbl == BOT_LABEL}
    assert moves == {"0", "1"}


def test_moves_under_connectives_carry_slot_prefixes():
    g = game("(0 = 0 cand 0 = 1) v (0 = 0 cor 0 = 1)")
    moves = {(lbl, mv) for lbl, mv, _ in legal_moves(g)}
    assert moves == {
        (BOT_LABEL, "0.0"),
        (BOT_LABEL, "0.1"),
        (TOP_LABEL, "1.0"),
        (TOP_LABEL, "1.1"),
    }


def test_blind_quantifiers_are_transparent_to_moves():
    g = game("all x.(x = 0 cor x != 0)")
    moves = {(lbl, mv) for lbl, mv, _ in legal_moves(g)}
    assert moves == {(TOP_LABEL, "0"), (TOP_LABEL, "1")}


def test_apply_labmove_resolves_the_choice():
    g = game("0 = 0 cand 0 = 1")
    nxt = apply_labmove(g, Labmove(BOT_LABEL, "1"))
    assert nxt.formula == parse_formula("0 = 1")


def test_apply_labmove_rejects_wrong_mover():
    g = game("0 = 0 cand 0 = 1")
    with pytest.raises(IllegalMoveError):
        apply_labmove(g, Labmove(TOP_LABEL, "0"))


def test_apply_labmove_rejects_oversized_constant():
    g = game("call x.(x = 0)", bound=1)
    with pytest.raises(IllegalMoveError):
        apply_labmove(g, Labmove(BOT_LABEL, "100"))


def test_prefixate_composes_move_by_move():
    g = game("(0 = 0 cand 0 = 1) v (0 = 0 cor 0 = 1)")
    run = parse_run("B 0.1\nT 1.0")
    assert prefixate(g, run).formula == parse_formula("0 = 1 v 0 = 0")


def test_prefixate_reports_the_offending_move():
    g = game("0 = 0 cand 0 = 1")
    with pytest.raises(IllegalPositionError):
        prefixate(g, parse_run("B 0\nB 1"))


def test_first_illegal_finds_the_earliest_bad_move():
    g = game("0 = 0 cand 0 = 1")
    run = parse_run("B 0\nB 1")
    assert first_illegal(g, run) == (1, Labmove(BOT_LABEL, "1"))
    assert first_illegal(g, parse_run("B 0")) is None


def test_enumerate_legal_runs_includes_prefixes():
    g = game("0 = 0 cand 0 = 1")
    runs = enumerate_legal_runs(g)
    assert () in runs
    assert len(runs) == 3  # empty, B 0, B 1


def test_depth_bound_limits_run_length():
    g = game("(0 = 0 cand 0 = 1) v (0 = 0 cor 0 = 1)")
    assert depth_bound(g) == 2
    assert all(len(run) <= 2 for run in enumerate_legal_runs(g))


def test_adjudicate_empty_run_by_elementarization():
    # unresolved environment choices favor the machine, and dually
    assert adjudicate(game("0 = 1 cand 0 = 1"), ()) == VERDICT_TOP
    assert adjudicate(game("0 = 0 cor 0 = 0"), ()) == VERDICT_BOT


def test_adjudicate_final_position_truth():
    g = game("0 = 0 cand 0 = 1")
    assert adjudicate(g, parse_run("B 0")) == VERDICT_TOP
    assert adjudicate(g, parse_run("B 1")) == VERDICT_BOT


def test_adjudicate_illegal_move_loses_for_its_author():
    g = game("0 = 0 cand 0 = 1")
    assert adjudicate(g, parse_run("B 0\nB 1")) == VERDICT_TOP
    assert adjudicate(g, parse_run("T 0")) == VERDICT_BOT


def test_adjudicate_uninterpreted_letter_is_undetermined():
    assert adjudicate(game("p"), ()) == VERDICT_UNDETERMINED


def test_eval_elementary_decides_blind_quantifiers_under_cap():
    f = parse_formula("ex x.(x = 10)")
    assert eval_elementary(f, {}, STANDARD, 8) is True
    # a cap too small to reach the witness abstains rather than guessing
    assert eval_elementary(f, {}, STANDARD, 1) is None
