"""Printers for terms and formulas.  parse(print_formula(f)) == f for every
formula in parse's image; evolved (non-canonical) positions print with enough
parentheses to reparse structurally identical."""

from __future__ import annotations

from .formulas import (
    BlindAll,
    BlindEx,
    Bot,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Formula,
    GenAtom,
    Not,
    ParAnd,
    ParOr,
    Top,
)
from .terms import Prod, Succ, Sum, Term, Var, Zero, ZERO

_SUCC2 = Succ(Succ(ZERO))

# term precedence: + = 1, * = 2, postfix/atomic = 3


def _split_digits(t: Term) -> tuple[Term, str]:
    """Peel postfix binary-digit sugar: returns (base, digit-string)."""
    digits = []
    while True:
        if isinstance(t, Succ) and isinstance(t.t, Prod) and t.t.t == _SUCC2:
            digits.append("1")
            t = t.t.u
        elif isinstance(t, Prod) and t.t == _SUCC2:
            digits.append("0")
            t = t.u
        else:
            return t, "".join(reversed(digits))


def _term(t: Term, prec: int) -> str:
    base, digits = _split_digits(t)
    if digits:
        if base == ZERO:
            return digits if digits[0] == "1" else "0" + digits
        return _term(base, 3) + digits
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Succ):
        return _term(t.t, 3) + "'"
    if isinstance(t, Sum):
        s = f"{_term(t.t, 1)} + {_term(t.u, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(t, Prod):
        s = f"{_term(t.t, 2)} * {_term(t.u, 3)}"
        return f"({s})" if prec > 2 else s
    raise TypeError(f"not a term: {t!r}")


def print_term(t: Term) -> str:
    return _term(t, 0)


def _atom(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{_term(f.t, 1)} = {_term(f.u, 1)}"
    if isinstance(f, (ElemAtom, GenAtom)):
        if f.letter == "leq":
            return f"{_term(f.args[0], 1)} <= {_term(f.args[1], 1)}"
        if f.letter == "len":
            return f"|{_term(f.args[0], 0)}| <= {_term(f.args[1], 1)}"
        if f.letter == "lenof":
            return f"|{_term(f.args[0], 0)}| = {_term(f.args[1], 1)}"
        if f.letter == "even":
            return f"Even({_term(f.args[0], 0)})"
        if f.letter == "odd":
            return f"Odd({_term(f.args[0], 0)})"
        if not f.args:
            return f.letter
        return f.letter + "(" + ", ".join(_term(a, 0) for a in f.args) + ")"
    raise TypeError(f"not an atom: {f!r}")


def _negated_atom(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{_term(f.t, 1)} != {_term(f.u, 1)}"
    if isinstance(f, ElemAtom):
        if f.letter == "leq":
            return f"{_term(f.args[0], 1)} > {_term(f.args[1], 1)}"
        if f.letter == "len":
            return f"|{_term(f.args[0], 0)}| > {_term(f.args[1], 1)}"
        if f.letter == "lenof":
            return f"|{_term(f.args[0], 0)}| != {_term(f.args[1], 1)}"
    return "~" + _atom(f)


# Printing levels mirror the parser's binding order: v loosest, then cor,
# then &, then cand (unary tightest).  No -> in the AST.
_PLEVEL = {ParOr: 1, ChoOr: 2, ParAnd: 3, ChoAnd: 4}
_OPNAME = {ChoOr: " cor ", ParOr: " v ", ParAnd: " & ", ChoAnd: " cand "}


def _formula(f: Formula, prec: int) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, (ElemAtom, GenAtom, Eq)):
        return _atom(f)
    if isinstance(f, Not):
        return _negated_atom(f.f)
    if isinstance(f, (BlindAll, BlindEx, ChoAll, ChoEx)):
        kw = {BlindAll: "all", BlindEx: "ex", ChoAll: "call", ChoEx: "cex"}[type(f)]
        return f"{kw} {f.var}.({_formula(f.body, 0)})"
    cls = type(f)
    if cls in _PLEVEL:
        level = _PLEVEL[cls]
        # children at the same level must be parenthesized so that explicit
        # nesting survives the reparse (chains would otherwise flatten)
        body = _OPNAME[cls].join(_formula(c, level + 1) for c in f.children)
        return f"({body})" if prec > level else body
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f: Formula) -> str:
    return _formula(f, 0)
