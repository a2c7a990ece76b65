"""Bounded search: classical validity and proof discovery for the choice
logics."""

from .classical import (
    DEFAULT_TABLEAU_BUDGET,
    EXHAUSTED,
    INVALID,
    VALID,
    ClassicalResult,
    Countermodel,
    SearchBudgetExceeded,
    classical_valid,
    decide_classical,
    find_countermodel,
    tautological,
)
from .prover import DEFAULT_BUDGET, Exhausted, SearchBudget, prove

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_TABLEAU_BUDGET",
    "EXHAUSTED",
    "INVALID",
    "VALID",
    "ClassicalResult",
    "Countermodel",
    "Exhausted",
    "SearchBudget",
    "SearchBudgetExceeded",
    "classical_valid",
    "decide_classical",
    "find_countermodel",
    "prove",
    "tautological",
]
