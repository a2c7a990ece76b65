"""Terms of the arithmetic vocabulary: 0, unary successor, sum, product.

Binary numerals are not primitive: the numeral ``b0`` abbreviates ``0''*b`` and
``b1`` abbreviates ``(0''*b)'``.  The distinguished variable ``bb`` is the bound
variable; a "bound term" contains no variables other than ``bb``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

BOUND_VAR = "bb"

# Term evaluation refuses to produce values above this many bits unless the
# caller raises the cap; products of large numerals explode fast and the engine
# must fail loudly rather than stall.
DEFAULT_VALUE_BITS = 4096


class EvalOverflow(ArithmeticError):
    """A term's value exceeded the configured magnitude cap."""


class Term:
    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        from .printer import print_term

        return f"Term({print_term(self)!r})"


@dataclass(frozen=True, repr=False)
class Var(Term):
    __slots__ = ("name",)
    name: str


@dataclass(frozen=True, repr=False)
class Zero(Term):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Succ(Term):
    __slots__ = ("t",)
    t: Term


@dataclass(frozen=True, repr=False)
class Sum(Term):
    __slots__ = ("t", "u")
    t: Term
    u: Term


@dataclass(frozen=True, repr=False)
class Prod(Term):
    __slots__ = ("t", "u")
    t: Term
    u: Term


ZERO = Zero()
BB = Var(BOUND_VAR)


def bin0(t: Term) -> Term:
    """The term t0, i.e. 0''*t (append binary digit 0)."""
    return Prod(Succ(Succ(ZERO)), t)


def bin1(t: Term) -> Term:
    """The term t1, i.e. (0''*t)' (append binary digit 1)."""
    return Succ(bin0(t))


def numeral(n: int) -> Term:
    """The canonical term for natural n, built digit by digit from its binary form."""
    if n < 0:
        raise ValueError("numerals are naturals")
    if n == 0:
        return ZERO
    t: Term = ZERO
    for ch in format(n, "b"):
        t = bin1(t) if ch == "1" else bin0(t)
    return t


def numeral_value(t: Term) -> int | None:
    """Inverse of numeral() on its image; None if t is not such a chain."""
    if t == ZERO:
        return 0
    digits = []
    while True:
        if isinstance(t, Succ) and isinstance(t.t, Prod) and t.t.t == Succ(Succ(ZERO)):
            digits.append(1)
            t = t.t.u
        elif isinstance(t, Prod) and t.t == Succ(Succ(ZERO)):
            digits.append(0)
            t = t.u
        elif t == ZERO:
            break
        else:
            return None
    n = 0
    for d in reversed(digits):
        n = n * 2 + d
    return n


def size(n: int) -> int:
    """|n|: the length of n's binary numeral.  |0| = 1."""
    if n < 0:
        raise ValueError("size of a negative value")
    return 1 if n == 0 else n.bit_length()


def term_vars(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Var):
            out.add(cur.name)
        elif isinstance(cur, Succ):
            stack.append(cur.t)
        elif isinstance(cur, (Sum, Prod)):
            stack.append(cur.t)
            stack.append(cur.u)
    return out


def is_bound_term(t: Term) -> bool:
    """True iff t contains no variables other than bb."""
    return term_vars(t) <= {BOUND_VAR}


def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Succ):
        return Succ(subst_term(t.t, mapping))
    if isinstance(t, Sum):
        return Sum(subst_term(t.t, mapping), subst_term(t.u, mapping))
    if isinstance(t, Prod):
        return Prod(subst_term(t.t, mapping), subst_term(t.u, mapping))
    return t


def eval_term(t: Term, env: Mapping[str, int], value_bits: int = DEFAULT_VALUE_BITS) -> int:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise KeyError(f"variable {t.name} has no value in the valuation") from None
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ):
        v = eval_term(t.t, env, value_bits) + 1
    elif isinstance(t, Sum):
        v = eval_term(t.t, env, value_bits) + eval_term(t.u, env, value_bits)
    elif isinstance(t, Prod):
        v = eval_term(t.t, env, value_bits) * eval_term(t.u, env, value_bits)
    else:  # pragma: no cover - closed term algebra
        raise TypeError(f"not a term: {t!r}")
    if v.bit_length() > value_bits:
        from .printer import print_term

        raise EvalOverflow(f"value of {print_term(t)} exceeds {value_bits} bits")
    return v


def iter_subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Succ):
        yield from iter_subterms(t.t)
    elif isinstance(t, (Sum, Prod)):
        yield from iter_subterms(t.t)
        yield from iter_subterms(t.u)
