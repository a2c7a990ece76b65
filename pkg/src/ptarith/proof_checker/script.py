"""Proof scripts: a header naming the system, then numbered steps.

Text format::

    #system PTA
    #import nov8 nov8.clp
    1: T ; ax-log taut
    2: |s'| <= bb -> cex x.(x = s') ; ax-x10
    3: ... ; mp 1 2

Each step line is ``<id>: <formula> ; <rule> <args>``.  Rule arguments are
whitespace-separated tokens; ``key=value`` tokens become keyword arguments,
and ``key={...}`` braces may contain spaces (used for substitutions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..formula_core import Formula, parse_formula, print_formula

SYSTEMS = ("CL3", "CL4", "PTA")

RULES = frozenset(
    {
        "ax-log",
        "ax-peano-1",
        "ax-peano-2",
        "ax-peano-3",
        "ax-peano-4",
        "ax-peano-5",
        "ax-peano-6",
        "ax-peano-7",
        "ax-x8",
        "ax-x9",
        "ax-x10",
        "ax-x11",
        "ax-x12",
        "ax-x13",
        "cor-choose",
        "cex-choose",
        "wait",
        "mp",
        "match",
        "pti",
        "cl4inst",
        "lemma",
        "tr",
        "weaken",
        "cand-intro",
        "call-intro",
        "call-elim",
        "cor-elim",
        "wpti",
        "wpti+",
        "bsi",
        "bsi+",
        "pti+",
        "bpi",
        "ind18a",
        "ind18b",
    }
)


class ScriptError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class ProofStep:
    id: int
    formula: Formula
    rule: str
    args: tuple[str, ...] = ()
    kwargs: dict[str, str] = field(default_factory=dict)

    def premise_ids(self) -> list[int]:
        return [int(a) for a in self.args if a.isdigit()]


@dataclass
class ProofScript:
    system: str
    steps: list[ProofStep]
    imports: list[tuple[str, str]] = field(default_factory=list)
    name: str = "<script>"

    def __post_init__(self) -> None:
        self.by_id = {s.id: s for s in self.steps}

    @property
    def theorem(self) -> Formula:
        return self.steps[-1].formula

    def step(self, sid: int) -> ProofStep:
        return self.by_id[sid]

    def with_steps(self, steps: list[ProofStep]) -> "ProofScript":
        return ProofScript(self.system, steps, list(self.imports), self.name)


_KWARG_RE = re.compile(r"(\w[\w+-]*)=(\{[^}]*\}|\S+)")


def _parse_args(text: str, lineno: int) -> tuple[tuple[str, ...], dict[str, str]]:
    kwargs: dict[str, str] = {}

    def grab(m: re.Match) -> str:
        value = m.group(2)
        if value.startswith("{"):
            value = value[1:-1].strip()
        kwargs[m.group(1)] = value
        return " "

    rest = _KWARG_RE.sub(grab, text)
    return tuple(rest.split()), kwargs


def parse_script(text: str, name: str = "<script>") -> ProofScript:
    system: str | None = None
    imports: list[tuple[str, str]] = []
    steps: list[ProofStep] = []
    seen_ids: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            directive = line[1:].strip()
            if directive.startswith("system"):
                value = directive[len("system") :].strip()
                if value not in SYSTEMS:
                    raise ScriptError(f"unknown system {value!r}", lineno)
                system = value
            elif directive.startswith("import"):
                parts = directive.split()
                if len(parts) != 3:
                    raise ScriptError("expected '#import <name> <path>'", lineno)
                imports.append((parts[1], parts[2]))
            # any other '#' line is a comment
            continue
        if system is None:
            raise ScriptError("missing '#system' header before first step", lineno)
        m = re.match(r"(\d+)\s*:\s*(.*)", line)
        if not m:
            raise ScriptError("expected '<id>: <formula> ; <rule> <args>'", lineno)
        sid = int(m.group(1))
        body = m.group(2)
        if ";" not in body:
            raise ScriptError("missing ';' between formula and rule", lineno)
        formula_text, rule_text = body.split(";", 1)
        try:
            formula = parse_formula(formula_text.strip())
        except ValueError as err:
            raise ScriptError(f"bad formula: {err}", lineno) from None
        rule_parts = rule_text.strip().split(None, 1)
        if not rule_parts:
            raise ScriptError("missing rule name", lineno)
        rule = rule_parts[0]
        if rule not in RULES:
            raise ScriptError(f"unknown rule {rule!r}", lineno)
        args, kwargs = (
            _parse_args(rule_parts[1], lineno) if len(rule_parts) > 1 else ((), {})
        )
        if sid in seen_ids:
            raise ScriptError(f"duplicate step id {sid}", lineno)
        seen_ids.add(sid)
        steps.append(ProofStep(sid, formula, rule, args, kwargs))
    if system is None:
        raise ScriptError("script has no '#system' header")
    if not steps:
        raise ScriptError("script has no steps")
    return ProofScript(system, steps, imports, name)


def format_script(script: ProofScript) -> str:
    lines = [f"#system {script.system}"]
    for name, path in script.imports:
        lines.append(f"#import {name} {path}")
    for s in script.steps:
        parts = [s.rule, *s.args]
        for k, v in s.kwargs.items():
            parts.append(f"{k}={{{v}}}" if (" " in v or ";" in v) else f"{k}={v}")
        lines.append(f"{s.id}: {print_formula(s.formula)} ; {' '.join(parts)}")
    return "\n".join(lines) + "\n"
