"""Interpretations: truth callbacks for elementary letters, optional truth
values for general letters (desk-scale adjudication), and a pluggable
formula-level oracle for truths the built-in evaluator cannot decide."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from ..formula_core import Formula, size

ElemPredicate = Callable[..., Optional[bool]]
FormulaOracle = Callable[[Formula, Mapping[str, int]], Optional[bool]]

BUILTINS: dict[str, ElemPredicate] = {
    "leq": lambda a, b: a <= b,
    "len": lambda a, b: size(a) <= b,
    "lenof": lambda a, b: size(a) == b,
    "even": lambda a: a % 2 == 0,
    "odd": lambda a: a % 2 == 1,
}


@dataclass(frozen=True)
class Interpretation:
    elem: dict[str, ElemPredicate] = field(default_factory=dict)
    general: dict[str, object] = field(default_factory=dict)  # bool or callable
    oracle: FormulaOracle | None = None

    def elem_predicate(self, letter: str) -> ElemPredicate | None:
        if letter in self.elem:
            return self.elem[letter]
        return BUILTINS.get(letter)

    def general_truth(self, letter: str, args: tuple[int, ...]) -> bool | None:
        entry = self.general.get(letter)
        if entry is None:
            return None
        if callable(entry):
            return entry(*args)
        return bool(entry)

    def with_oracle(self, oracle: FormulaOracle) -> "Interpretation":
        return Interpretation(self.elem, self.general, oracle)

    def with_general(self, assignment: dict[str, object]) -> "Interpretation":
        merged = dict(self.general)
        merged.update(assignment)
        return Interpretation(self.elem, merged, self.oracle)


STANDARD = Interpretation()


def parse_interpretation(text: str) -> Interpretation:
    """Key/value lines: `letter = builtin leq`, `letter = const true`, or
    `letter = table 0 10 101,1` (true exactly on the listed argument tuples,
    tuple components separated by commas, numerals in binary)."""
    elem: dict[str, ElemPredicate] = {}
    general: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'letter = ...'")
        letter, rhs = (part.strip() for part in line.split("=", 1))
        parts = rhs.split()
        kind = parts[0]
        target = general if letter[0].isupper() else elem
        if kind == "builtin":
            if parts[1] not in BUILTINS:
                raise ValueError(f"line {lineno}: unknown builtin {parts[1]!r}")
            target[letter] = BUILTINS[parts[1]]
        elif kind == "const":
            value = parts[1].lower() == "true"
            if target is general:
                target[letter] = value
            else:
                target[letter] = (lambda v: lambda *a: v)(value)
        elif kind == "table":
            rows = frozenset(
                tuple(int(c, 2) for c in entry.split(",")) for entry in parts[1:]
            )
            target[letter] = (lambda rs: lambda *a: tuple(a) in rs)(rows)
        else:
            raise ValueError(f"line {lineno}: unknown interpretation kind {kind!r}")
    return Interpretation(elem, general)
