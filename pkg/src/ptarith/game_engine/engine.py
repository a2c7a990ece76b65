"""Position games: legal moves, prefixation, run enumeration, adjudication.

A position is a formula plus a bounded valuation plus an interpretation.
Choice resolutions substitute the chosen component in place; the tree is never
re-canonicalized, so move addresses computed on the original formula stay
valid for untouched occurrences throughout the play.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..formula_core import (
    BlindAll,
    BlindEx,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    Formula,
    ParAnd,
    ParOr,
    choice_depth,
    elementarize,
    free_vars,
    numeral,
    size,
    substitute_vars,
)
from .eval import DEFAULT_WITNESS_CAP, eval_elementary
from .interpretation import Interpretation, STANDARD
from .runs import BOT_LABEL, Labmove, Run, TOP_LABEL, move_segments, opponent
from .valuation import Valuation

VERDICT_TOP = "TOP"
VERDICT_BOT = "BOT"
VERDICT_UNDETERMINED = "UNDETERMINED"


class IllegalMoveError(ValueError):
    def __init__(self, labmove: Labmove, reason: str):
        self.labmove = labmove
        self.reason = reason
        super().__init__(f"illegal {labmove}: {reason}")


class IllegalPositionError(ValueError):
    def __init__(self, index: int, labmove: Labmove, reason: str):
        self.index = index
        self.offender = labmove.label
        self.labmove = labmove
        self.reason = reason
        super().__init__(f"labmove #{index} ({labmove}) is illegal: {reason}")


@dataclass(frozen=True)
class PositionGame:
    formula: Formula
    valuation: Valuation
    interp: Interpretation = STANDARD

    def with_formula(self, f: Formula) -> "PositionGame":
        return replace(self, formula=f)


def _constant_ok(c_str: str, bound: int) -> bool:
    c = int(c_str, 2)
    if bound == 0:
        return c == 0
    return size(c) <= bound


def apply_labmove(g: PositionGame, lm: Labmove) -> PositionGame:
    """The successor position, or IllegalMoveError."""
    try:
        segs = move_segments(lm.move)
    except ValueError as err:
        raise IllegalMoveError(lm, str(err)) from None
    f = g.formula
    node = f
    path: tuple[int, ...] = ()
    i = 0
    while True:
        if isinstance(node, (ParAnd, ParOr)):
            if i >= len(segs):
                raise IllegalMoveError(lm, "move stops at a parallel connective")
            idx = int(segs[i], 2)
            if idx >= len(node.children):
                raise IllegalMoveError(lm, f"no component {segs[i]} here")
            path += (idx,)
            node = node.children[idx]
            i += 1
        elif isinstance(node, (BlindAll, BlindEx)):
            path += (0,)
            node = node.body
        elif isinstance(node, (ChoAnd, ChoOr)):
            mover = BOT_LABEL if isinstance(node, ChoAnd) else TOP_LABEL
            if lm.label != mover:
                raise IllegalMoveError(lm, f"that choice belongs to {mover}")
            if i != len(segs) - 1:
                raise IllegalMoveError(lm, "trailing segments after a choice")
            idx = int(segs[i], 2)
            if idx >= len(node.children):
                raise IllegalMoveError(lm, f"choice index {segs[i]} out of range")
            from ..formula_core import replace_at

            return g.with_formula(replace_at(f, path, node.children[idx]))
        elif isinstance(node, (ChoAll, ChoEx)):
            mover = BOT_LABEL if isinstance(node, ChoAll) else TOP_LABEL
            if lm.label != mover:
                raise IllegalMoveError(lm, f"that choice belongs to {mover}")
            if i != len(segs) - 1:
                raise IllegalMoveError(lm, "trailing segments after a choice")
            if not _constant_ok(segs[i], g.valuation.bound):
                raise IllegalMoveError(
                    lm, f"constant {segs[i]} exceeds the bound {g.valuation.bound}"
                )
            from ..formula_core import replace_at

            chosen = substitute_vars(node.body, {node.var: numeral(int(segs[i], 2))})
            return g.with_formula(replace_at(f, path, chosen))
        else:
            raise IllegalMoveError(lm, "no move is available at this position")


def legal_moves(g: PositionGame) -> list[tuple[str, str, PositionGame]]:
    """All initial legal labmoves with successor positions, in a fixed
    deterministic order."""
    out: list[tuple[str, str, PositionGame]] = []

    def emit(label: str, move: str) -> None:
        out.append((label, move, apply_labmove(g, Labmove(label, move))))

    def walk(node: Formula, prefix: tuple[str, ...]) -> None:
        if isinstance(node, (ParAnd, ParOr)):
            for idx, child in enumerate(node.children):
                walk(child, prefix + (format(idx, "b"),))
        elif isinstance(node, (BlindAll, BlindEx)):
            walk(node.body, prefix)
        elif isinstance(node, (ChoAnd, ChoOr)):
            label = BOT_LABEL if isinstance(node, ChoAnd) else TOP_LABEL
            for idx in range(len(node.children)):
                emit(label, ".".join(prefix + (format(idx, "b"),)))
        elif isinstance(node, (ChoAll, ChoEx)):
            label = BOT_LABEL if isinstance(node, ChoAll) else TOP_LABEL
            for c in g.valuation.constants():
                emit(label, ".".join(prefix + (format(c, "b"),)))

    walk(g.formula, ())
    return out


def prefixate(g: PositionGame, run: Run) -> PositionGame:
    for i, lm in enumerate(run):
        try:
            g = apply_labmove(g, lm)
        except IllegalMoveError as err:
            raise IllegalPositionError(i, lm, err.reason) from None
    return g


def first_illegal(g: PositionGame, run: Run) -> tuple[int, Labmove] | None:
    """Index and labmove of the first illegal move, or None for a legal run."""
    for i, lm in enumerate(run):
        try:
            g = apply_labmove(g, lm)
        except IllegalMoveError:
            return i, lm
    return None


class RunBudgetExceeded(RuntimeError):
    pass


def enumerate_legal_runs(g: PositionGame, cap: int = 200_000) -> set[Run]:
    """All legal runs (maximal and not).  Distinct move orders are distinct
    runs.  Bounded by `cap` to keep desk-scale enumeration honest."""
    seen: set[Run] = set()
    frontier: list[tuple[Run, PositionGame]] = [((), g)]
    while frontier:
        run, pos = frontier.pop()
        if run in seen:
            continue
        seen.add(run)
        if len(seen) > cap:
            raise RunBudgetExceeded(f"more than {cap} legal runs")
        for label, move, nxt in legal_moves(pos):
            frontier.append((run + (Labmove(label, move),), nxt))
    return seen


def depth_bound(g: PositionGame) -> int:
    return choice_depth(g.formula)


def adjudicate(
    g: PositionGame,
    run: Run,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> str:
    """Winner of the run: an illegal move loses for its author; a legal run is
    decided by the truth of the final position's elementarization."""
    bad = first_illegal(g, run)
    if bad is not None:
        return VERDICT_TOP if bad[1].label == BOT_LABEL else VERDICT_BOT
    final = prefixate(g, run)
    elem = elementarize(final.formula, cl4=False)
    env = {name: final.valuation[name] for name in free_vars(elem)}
    truth = eval_elementary(elem, env, final.interp, witness_cap)
    if truth is True:
        return VERDICT_TOP
    if truth is False:
        return VERDICT_BOT
    return VERDICT_UNDETERMINED
