"""Formula ASTs in negation-normal form.

Canonical invariants:
  * Not wraps atoms only; negation of compound formulas is expanded eagerly;
  * choice-quantified variables are never ``bb``;
  * n-ary ParAnd/ParOr/ChoAnd/ChoOr have n >= 2 children;
  * no variable occurs both free and bound.

Positions evolved during play (choice resolutions substituted in place) may
violate the arity invariant's flattening expectations; every function here
works on arbitrary well-formed trees, canonical or not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .terms import BOUND_VAR, Term, subst_term, term_vars

OccPath = tuple[int, ...]


class Formula:
    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        from .printer import print_formula

        return f"Formula({print_formula(self)!r})"


@dataclass(frozen=True, repr=False)
class ElemAtom(Formula):
    __slots__ = ("letter", "args")
    letter: str
    args: tuple[Term, ...]


@dataclass(frozen=True, repr=False)
class GenAtom(Formula):
    __slots__ = ("letter", "args")
    letter: str
    args: tuple[Term, ...]


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    __slots__ = ("t", "u")
    t: Term
    u: Term


@dataclass(frozen=True, repr=False)
class Top(Formula):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Not(Formula):
    __slots__ = ("f",)
    f: Formula

    def __post_init__(self) -> None:
        if not isinstance(self.f, (ElemAtom, GenAtom, Eq)):
            raise ValueError("Not may wrap atoms only (canonical form is NNF)")


@dataclass(frozen=True, repr=False)
class ParAnd(Formula):
    __slots__ = ("children",)
    children: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class ParOr(Formula):
    __slots__ = ("children",)
    children: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class ChoAnd(Formula):
    __slots__ = ("children",)
    children: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class ChoOr(Formula):
    __slots__ = ("children",)
    children: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class BlindAll(Formula):
    __slots__ = ("var", "body")
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class BlindEx(Formula):
    __slots__ = ("var", "body")
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class ChoAll(Formula):
    __slots__ = ("var", "body")
    var: str
    body: Formula

    def __post_init__(self) -> None:
        if self.var == BOUND_VAR:
            raise ValueError("choice quantifier may not bind bb")


@dataclass(frozen=True, repr=False)
class ChoEx(Formula):
    __slots__ = ("var", "body")
    var: str
    body: Formula

    def __post_init__(self) -> None:
        if self.var == BOUND_VAR:
            raise ValueError("choice quantifier may not bind bb")


TOP = Top()
BOT = Bot()

Atom = (ElemAtom, GenAtom, Eq)
NaryNode = (ParAnd, ParOr, ChoAnd, ChoOr)
QuantNode = (BlindAll, BlindEx, ChoAll, ChoEx)

# Interpreted elementary letters with a pinned standard meaning.
INTERPRETED = {
    "leq": 2,    # leq(t,u)   <=>  t <= u
    "len": 2,    # len(t,u)   <=>  |t| <= u
    "lenof": 2,  # lenof(t,u) <=>  |t| = u
}


def par_and(children: Sequence[Formula]) -> Formula:
    return children[0] if len(children) == 1 else ParAnd(tuple(children))


def par_or(children: Sequence[Formula]) -> Formula:
    return children[0] if len(children) == 1 else ParOr(tuple(children))


def cho_and(children: Sequence[Formula]) -> Formula:
    return children[0] if len(children) == 1 else ChoAnd(tuple(children))


def cho_or(children: Sequence[Formula]) -> Formula:
    return children[0] if len(children) == 1 else ChoOr(tuple(children))


def implies(a: Formula, b: Formula) -> Formula:
    return ParOr((negate(a), b))


def cimp(a: Formula, b: Formula) -> Formula:
    return ChoOr((negate(a), b))


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, NaryNode):
        return f.children
    if isinstance(f, QuantNode):
        return (f.body,)
    if isinstance(f, Not):
        return (f.f,)
    return ()


def rebuild(f: Formula, kids: Sequence[Formula]) -> Formula:
    if isinstance(f, NaryNode):
        return type(f)(tuple(kids))
    if isinstance(f, QuantNode):
        return type(f)(f.var, kids[0])
    if isinstance(f, Not):
        return Not(kids[0])
    if kids:
        raise ValueError(f"{type(f).__name__} has no children")
    return f


def subformula_at(f: Formula, path: OccPath) -> Formula:
    for i in path:
        kids = children(f)
        if i >= len(kids):
            raise IndexError(f"path {path} does not resolve in formula")
        f = kids[i]
    return f


def replace_at(f: Formula, path: OccPath, new: Formula) -> Formula:
    if not path:
        return new
    kids = list(children(f))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(f, kids)


def iter_paths(f: Formula) -> Iterator[tuple[OccPath, Formula]]:
    """All occurrences, preorder."""
    stack: list[tuple[OccPath, Formula]] = [((), f)]
    while stack:
        path, cur = stack.pop()
        yield path, cur
        kids = children(cur)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def negate(f: Formula) -> Formula:
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, Not):
        return f.f
    if isinstance(f, Atom):
        return Not(f)
    if isinstance(f, ParAnd):
        return ParOr(tuple(negate(c) for c in f.children))
    if isinstance(f, ParOr):
        return ParAnd(tuple(negate(c) for c in f.children))
    if isinstance(f, ChoAnd):
        return ChoOr(tuple(negate(c) for c in f.children))
    if isinstance(f, ChoOr):
        return ChoAnd(tuple(negate(c) for c in f.children))
    if isinstance(f, BlindAll):
        return BlindEx(f.var, negate(f.body))
    if isinstance(f, BlindEx):
        return BlindAll(f.var, negate(f.body))
    if isinstance(f, ChoAll):
        return ChoEx(f.var, negate(f.body))
    if isinstance(f, ChoEx):
        return ChoAll(f.var, negate(f.body))
    raise TypeError(f"not a formula: {f!r}")


def atom_terms(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, (ElemAtom, GenAtom)):
        return f.args
    if isinstance(f, Eq):
        return (f.t, f.u)
    raise TypeError("not an atom")


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        out: set[str] = set()
        for t in atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, QuantNode):
        return free_vars(f.body) - {f.var}
    out = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def bound_vars(f: Formula) -> set[str]:
    out: set[str] = set()
    for _, g in iter_paths(f):
        if isinstance(g, QuantNode):
            out.add(g.var)
    return out


def all_vars(f: Formula) -> set[str]:
    out = bound_vars(f)
    for _, g in iter_paths(f):
        if isinstance(g, Atom):
            for t in atom_terms(g):
                out |= term_vars(t)
    return out


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.f, Atom))


def is_elementary(f: Formula) -> bool:
    """No choice operators and no general atoms."""
    for _, g in iter_paths(f):
        if isinstance(g, (ChoAnd, ChoOr, ChoAll, ChoEx, GenAtom)):
            return False
    return True


def general_letters(f: Formula) -> set[str]:
    return {g.letter for _, g in iter_paths(f) if isinstance(g, GenAtom)}


def elem_letters(f: Formula) -> set[str]:
    return {g.letter for _, g in iter_paths(f) if isinstance(g, ElemAtom)}


def choice_depth(f: Formula) -> int:
    """Number of choice-operator occurrences; bounds the length of any legal run."""
    return sum(1 for _, g in iter_paths(f) if isinstance(g, (ChoAnd, ChoOr, ChoAll, ChoEx)))


def check_free_bound_disjoint(f: Formula) -> str | None:
    """Convention audit: returns an offending variable name, or None if clean."""
    clash = free_vars(f) & bound_vars(f)
    if clash:
        return sorted(clash)[0]
    # Also reject one quantifier nested inside another binding the same name.
    seen: list[tuple[OccPath, str]] = []
    for path, g in iter_paths(f):
        if isinstance(g, QuantNode):
            for ppath, pvar in seen:
                if pvar == g.var and path[: len(ppath)] == ppath:
                    return g.var
            seen.append((path, g.var))
    return None


def substitute_vars(f: Formula, mapping: dict[str, Term]) -> Formula:
    """Simultaneous substitution for free variable occurrences.

    Raises on capture: replacement terms may not contain variables that are
    bound at the point of substitution.
    """
    if not mapping:
        return f
    if isinstance(f, (ElemAtom, GenAtom)):
        return type(f)(f.letter, tuple(subst_term(t, mapping) for t in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.t, mapping), subst_term(f.u, mapping))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(substitute_vars(f.f, mapping))
    if isinstance(f, QuantNode):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        for k, v in inner.items():
            if f.var in term_vars(v):
                raise ValueError(
                    f"substituting {k} would capture {f.var} under its quantifier"
                )
        return type(f)(f.var, substitute_vars(f.body, inner))
    return rebuild(f, [substitute_vars(c, mapping) for c in children(f)])
