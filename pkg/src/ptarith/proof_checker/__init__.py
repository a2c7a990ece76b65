"""Proof-script parsing and step-by-step verification."""

from .script import (
    RULES,
    SYSTEMS,
    ProofScript,
    ProofStep,
    ScriptError,
    format_script,
    parse_script,
)
from .report import (
    CheckReport,
    Obligation,
    VERDICT_ACCEPTED,
    VERDICT_REJECTED,
)
from .checker import Violation, check
from .mutate import kill_rate, mutants

__all__ = [
    "kill_rate",
    "mutants",
    "RULES",
    "SYSTEMS",
    "ProofScript",
    "ProofStep",
    "ScriptError",
    "format_script",
    "parse_script",
    "CheckReport",
    "Obligation",
    "VERDICT_ACCEPTED",
    "VERDICT_REJECTED",
    "Violation",
    "check",
]
