"""Random game formulas, valuations, and legal runs for property tests.

Generated formulas use distinct bound-variable names disjoint from the free
pool, so they are well-formed game trees by construction.  `blind=False`
restricts to blind-quantifier-free formulas, whose final positions a naive
evaluator can decide exactly.
"""

from hypothesis import strategies as st

from ptarith.formula_core import (
    BOT,
    BlindAll,
    BlindEx,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Not,
    ParAnd,
    ParOr,
    Succ,
    TOP,
    Var,
    bin0,
    bin1,
    numeral,
)
from ptarith.game_engine import (
    Labmove,
    PositionGame,
    STANDARD,
    apply_labmove,
    legal_moves,
    standard_valuation,
)

FREE_POOL = ("s", "t")


@st.composite
def game_formulas(draw, max_depth=3, blind=True):
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"q{counter[0]}"

    def term(scope, depth):
        kinds = ["num", "var"] + (["succ", "bin0", "bin1"] if depth else [])
        kind = draw(st.sampled_from(kinds))
        if kind == "num":
            return numeral(draw(st.integers(0, 3)))
        if kind == "var":
            return Var(draw(st.sampled_from(scope)))
        inner = term(scope, depth - 1)
        return {"succ": Succ, "bin0": bin0, "bin1": bin1}[kind](inner)

    def atom(scope):
        kind = draw(st.sampled_from(["eq", "neq", "pred", "npred", "top", "bot"]))
        if kind == "top":
            return TOP
        if kind == "bot":
            return BOT
        if kind in ("pred", "npred"):
            a = ElemAtom("p", (term(scope, 1),))
            return Not(a) if kind == "npred" else a
        e = Eq(term(scope, 1), term(scope, 1))
        return Not(e) if kind == "neq" else e

    def formula(scope, depth):
        if depth == 0:
            return atom(scope)
        kinds = ["atom", "parand", "paror", "choand", "choor", "choall", "choex"]
        if blind:
            kinds += ["blindall", "blindex"]
        kind = draw(st.sampled_from(kinds))
        if kind == "atom":
            return atom(scope)
        if kind in ("parand", "paror", "choand", "choor"):
            ctor = {
                "parand": ParAnd,
                "paror": ParOr,
                "choand": ChoAnd,
                "choor": ChoOr,
            }[kind]
            n = draw(st.integers(2, 3))
            return ctor(tuple(formula(scope, depth - 1) for _ in range(n)))
        ctor = {
            "choall": ChoAll,
            "choex": ChoEx,
            "blindall": BlindAll,
            "blindex": BlindEx,
        }[kind]
        x = fresh()
        return ctor(x, formula(scope + (x,), depth - 1))

    return formula(FREE_POOL, max_depth)


@st.composite
def game_positions(draw, blind=True, interp=STANDARD):
    f = draw(game_formulas(blind=blind))
    bound = draw(st.integers(1, 3))
    e = standard_valuation(bound)
    for name in FREE_POOL:
        e = e.extend(name, draw(st.integers(0, (1 << bound) - 1)))
    return PositionGame(f, e, interp)


@st.composite
def positions_with_runs(draw, blind=True, interp=STANDARD, max_moves=6):
    """A position game plus one legal (not necessarily maximal) run of it."""
    g = draw(game_positions(blind=blind, interp=interp))
    pos = g
    run = []
    for _ in range(draw(st.integers(0, max_moves))):
        options = legal_moves(pos)
        if not options:
            break
        label, move, pos = draw(st.sampled_from(options))
        run.append(Labmove(label, move))
    return g, tuple(run)
