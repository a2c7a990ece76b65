"""Terms, formulas, parsing/printing, substitution, and occurrence paths."""

import pytest

from ptarith.formula_core import (
    BOT,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    Eq,
    Not,
    ParAnd,
    ParOr,
    ParseError,
    Succ,
    TOP,
    Var,
    ZERO,
    all_vars,
    bin0,
    bin1,
    choice_depth,
    cimp,
    elementarize,
    eval_term,
    free_vars,
    implies,
    negate,
    numeral,
    numeral_value,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    replace_at,
    size,
    subformula_at,
    substitute_vars,
)

ROUND_TRIPS = [
    "0 = 0",
    "s != t",
    "|s| <= bb",
    "s = t0 cor s = t1",
    "call x.(cex y.(y = x'))",
    "all x.(~p(x)) v ex y.(p(y))",
    "(P & P) v (~P cand T)",
    "10 = 11",
]


@pytest.mark.parametrize("text", ROUND_TRIPS)
def test_parse_print_round_trip(text):
    f = parse_formula(text)
    assert parse_formula(print_formula(f)) == f


def test_terms_compose_postfix():
    # s0 doubles, s1 doubles-and-adds-one, s' is the unary successor
    assert parse_term("s0") == bin0(Var("s"))
    assert parse_term("s1") == bin1(Var("s"))
    assert parse_term("s'") == Succ(Var("s"))
    assert parse_term("s01'") == Succ(bin1(bin0(Var("s"))))


def test_successor_of_even_normalizes_to_odd():
    # 2s + 1 has one canonical spelling: appending a 1 bit
    assert parse_term("s0'") == parse_term("s1")


def test_numerals_are_binary():
    assert numeral_value(parse_term("101")) == 5
    assert print_term(numeral(6)) == "110"
    assert numeral_value(numeral(0)) == 0


def test_eval_term_matches_binary_reading():
    env = {"s": 5}
    assert eval_term(parse_term("s0"), env) == 10
    assert eval_term(parse_term("s1"), env) == 11
    assert eval_term(parse_term("s'"), env) == 6


def test_size_is_binary_numeral_length():
    # the numeral 0 is one digit long
    assert size(0) == 1
    assert size(1) == 1
    assert size(5) == 3
    assert size(8) == 4


def test_implication_is_negated_disjunction():
    a, b = parse_formula("p"), parse_formula("q")
    assert implies(a, b) == ParOr((Not(a), b))
    assert cimp(a, b) == ChoOr((Not(a), b))


def test_negate_is_an_involution_and_pushes_inward():
    f = parse_formula("call x.(p(x) & (q cor ~q)) v ex y.(y = 0)")
    g = negate(f)
    assert negate(g) == f
    # negation never ends up above a connective
    assert "~(" not in print_formula(g)


def test_negate_demorgan_on_connectives():
    f = parse_formula("p & q")
    assert negate(f) == parse_formula("~p v ~q")
    assert negate(parse_formula("p cand q")) == parse_formula("~p cor ~q")
    assert negate(parse_formula("call x.(p(x))")) == parse_formula("cex x.(~p(x))")


def test_free_and_all_vars():
    f = parse_formula("call x.(cex y.(y = x cor y = s))")
    assert free_vars(f) == {"s"}
    assert all_vars(f) == {"x", "y", "s"}


def test_substitute_vars_renames_free_occurrences_only():
    f = parse_formula("call x.(x = s)")
    g = substitute_vars(f, {"s": parse_term("t'")})
    assert g == parse_formula("call x.(x = t')")
    # the bound variable is untouched even if named
    assert substitute_vars(f, {"x": ZERO}) == f


def test_subformula_at_and_replace_at():
    f = parse_formula("(p v q) & r")
    assert subformula_at(f, (0, 1)) == parse_formula("q")
    g = replace_at(f, (0, 1), TOP)
    assert g == parse_formula("(p v T) & r")


def test_choice_depth_counts_choice_operators():
    assert choice_depth(parse_formula("p v q")) == 0
    assert choice_depth(parse_formula("p cand (q cor r)")) == 2
    # a choice quantifier resolves to one constant pick
    assert choice_depth(parse_formula("call x.(x = 0 cor x != 0)")) == 2


def test_elementarization_surfaces():
    f = parse_formula("(p cand q) v (p cor q)")
    assert elementarize(f, cl4=False) == ParOr((TOP, BOT))
    # positive general literals also go to BOT in the schematic reading
    g = parse_formula("P v p")
    assert elementarize(g, cl4=True) == ParOr((BOT, parse_formula("p")))
    assert elementarize(g, cl4=False) == g


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_formula("p &")
    with pytest.raises(ParseError):
        parse_formula("call x.")
