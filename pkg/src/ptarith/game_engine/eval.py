"""Three-valued truth for elementary formulas.

Quantifier-free formulas over evaluable terms are decided exactly.  Blind
quantifiers are attacked three ways, in order: a plugged-in oracle, evaluation
with the bound variable symbolic (sound because a symbolic verdict never
depends on the variable), and witness/counterexample search up to a cap.
Anything left over is `None` (unknown); the caller surfaces UNDETERMINED.
"""

from __future__ import annotations

from typing import Mapping, Optional

from ..formula_core import (
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
    eval_term,
)
from ..formula_core.terms import DEFAULT_VALUE_BITS
from .interpretation import Interpretation

DEFAULT_WITNESS_CAP = 64


def eval_elementary(
    f: Formula,
    env: Mapping[str, int],
    interp: Interpretation,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    value_bits: int = DEFAULT_VALUE_BITS,
) -> Optional[bool]:
    return _ev(f, dict(env), interp, witness_cap, value_bits)


def _terms(args, env, value_bits) -> tuple[int, ...] | None:
    vals = []
    for t in args:
        try:
            vals.append(eval_term(t, env, value_bits))
        except KeyError:
            return None
    return tuple(vals)


def _ev(f, env, interp, cap, bits) -> Optional[bool]:
    if interp.oracle is not None:
        hinted = interp.oracle(f, env)
        if hinted is not None:
            return hinted
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        r = _ev(f.f, env, interp, cap, bits)
        return None if r is None else not r
    if isinstance(f, Eq):
        vals = _terms((f.t, f.u), env, bits)
        if vals is None:
            return True if f.t == f.u else None
        return vals[0] == vals[1]
    if isinstance(f, ElemAtom):
        pred = interp.elem_predicate(f.letter)
        if pred is None:
            return None
        vals = _terms(f.args, env, bits)
        if vals is None:
            return None
        return pred(*vals)
    if isinstance(f, GenAtom):
        vals = _terms(f.args, env, bits)
        return interp.general_truth(f.letter, vals if vals is not None else ())
    if isinstance(f, ParAnd):
        saw_unknown = False
        for c in f.children:
            r = _ev(c, env, interp, cap, bits)
            if r is False:
                return False
            if r is None:
                saw_unknown = True
        return None if saw_unknown else True
    if isinstance(f, ParOr):
        saw_unknown = False
        for c in f.children:
            r = _ev(c, env, interp, cap, bits)
            if r is True:
                return True
            if r is None:
                saw_unknown = True
        return None if saw_unknown else False
    if isinstance(f, (BlindAll, BlindEx)):
        symbolic_env = {k: v for k, v in env.items() if k != f.var}
        symbolic = _ev(f.body, symbolic_env, interp, cap, bits)
        if symbolic is not None:
            return symbolic
        want = isinstance(f, BlindEx)  # witness for Ex, counterexample for All
        for c in range(cap + 1):
            symbolic_env[f.var] = c
            r = _ev(f.body, symbolic_env, interp, cap, bits)
            if r is want:
                return want
        return None
    if isinstance(f, (ChoAnd, ChoOr, ChoAll, ChoEx)):
        raise ValueError("eval_elementary applied to a non-elementary formula")
    raise TypeError(f"not a formula: {f!r}")
