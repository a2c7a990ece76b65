"""Operational game semantics: legal moves, prefixation, run legality,
outcome adjudication."""

from .runs import (
    BOT_LABEL,
    Labmove,
    Run,
    TimedLabmove,
    TOP_LABEL,
    format_run,
    format_transcript,
    is_wellformed_move,
    move_segments,
    opponent,
    parse_run,
    parse_transcript,
)
from .valuation import Valuation, standard_valuation
from .interpretation import BUILTINS, Interpretation, STANDARD, parse_interpretation
from .eval import DEFAULT_WITNESS_CAP, eval_elementary
from .engine import (
    IllegalMoveError,
    IllegalPositionError,
    PositionGame,
    RunBudgetExceeded,
    VERDICT_BOT,
    VERDICT_TOP,
    VERDICT_UNDETERMINED,
    adjudicate,
    apply_labmove,
    depth_bound,
    enumerate_legal_runs,
    first_illegal,
    legal_moves,
    prefixate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
