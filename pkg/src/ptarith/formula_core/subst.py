"""Letter substitutions: instantiating scheme formulas (general/elementary
letters with parameter slots) into concrete formulas.

The term vocabulary is closed (0, ', +, *), so there are no user function
letters to substitute; only predicate letters carry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formulas import (
    Atom,
    ElemAtom,
    Formula,
    GenAtom,
    Not,
    QuantNode,
    bound_vars,
    children,
    free_vars,
    is_elementary,
    negate,
    rebuild,
    substitute_vars,
)
from .terms import Term


@dataclass(frozen=True)
class Entry:
    params: tuple[str, ...]
    body: Formula


@dataclass(frozen=True)
class Substitution:
    general: dict[str, Entry] = field(default_factory=dict)
    elementary: dict[str, Entry] = field(default_factory=dict)

    def covers(self, letters: set[str]) -> bool:
        return letters <= set(self.general)


class SubstitutionError(ValueError):
    pass


def _instance(entry: Entry, letter: str, args: tuple[Term, ...]) -> Formula:
    if len(entry.params) != len(args):
        raise SubstitutionError(
            f"arity mismatch for {letter}: {len(args)} args, {len(entry.params)} slots"
        )
    return substitute_vars(entry.body, dict(zip(entry.params, args)))


def apply_substitution(f: Formula, sigma: Substitution) -> Formula:
    """The instance of scheme f under sigma, with the capture condition: no
    replacement body may contain free variables that have bound occurrences
    in f (beyond its own parameter slots)."""
    bound = bound_vars(f)
    for table in (sigma.general, sigma.elementary):
        for letter, entry in table.items():
            extra = free_vars(entry.body) - set(entry.params)
            clash = extra & bound
            if clash:
                raise SubstitutionError(
                    f"replacement for {letter} contains {sorted(clash)[0]!r},"
                    " which is bound in the scheme"
                )
    for letter, entry in sigma.elementary.items():
        if not is_elementary(entry.body):
            raise SubstitutionError(
                f"replacement for elementary letter {letter} is not elementary"
            )
    return _apply(f, sigma)


def _apply(f: Formula, sigma: Substitution) -> Formula:
    if isinstance(f, GenAtom) and f.letter in sigma.general:
        return _instance(sigma.general[f.letter], f.letter, f.args)
    if isinstance(f, ElemAtom) and f.letter in sigma.elementary:
        return _instance(sigma.elementary[f.letter], f.letter, f.args)
    if isinstance(f, Not):
        inner = f.f
        if isinstance(inner, GenAtom) and inner.letter in sigma.general:
            return negate(_instance(sigma.general[inner.letter], inner.letter, inner.args))
        if isinstance(inner, ElemAtom) and inner.letter in sigma.elementary:
            return negate(
                _instance(sigma.elementary[inner.letter], inner.letter, inner.args)
            )
        return f
    if isinstance(f, Atom):
        return f
    if isinstance(f, QuantNode):
        return type(f)(f.var, _apply(f.body, sigma))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_apply(c, sigma) for c in kids])


def parse_substitution(text: str) -> Substitution:
    """Concrete syntax: entries separated by ';', each either
    `P(x, y) := <formula>` or `P := <formula>`.  Uppercase letters are general,
    lowercase elementary."""
    from .parser import ParseError, parse_formula

    general: dict[str, Entry] = {}
    elementary: dict[str, Entry] = {}
    for raw in text.split(";"):
        raw = raw.strip()
        if not raw:
            continue
        if ":=" not in raw:
            raise ParseError("substitution entry needs ':='", raw, 0)
        head, body_text = raw.split(":=", 1)
        head = head.strip()
        if "(" in head:
            letter, params_text = head.split("(", 1)
            letter = letter.strip()
            params = tuple(p.strip() for p in params_text.rstrip(") ").split(","))
        else:
            letter, params = head, ()
        body = parse_formula(body_text)
        entry = Entry(params, body)
        (general if letter[0].isupper() else elementary)[letter] = entry
    return Substitution(general, elementary)


def print_substitution(sigma: Substitution) -> str:
    from .printer import print_formula

    parts = []
    for table in (sigma.general, sigma.elementary):
        for letter in sorted(table):
            entry = table[letter]
            head = letter if not entry.params else f"{letter}({', '.join(entry.params)})"
            parts.append(f"{head} := {print_formula(entry.body)}")
    return "; ".join(parts)
