"""Winning machine strategies compiled from accepted proof scripts."""

from .extract import Blueprint, CompiledStrategy, ExtractionError, extract
from .net import (
    EVENT_BUDGET,
    EventMeter,
    NetRoutingError,
    RealTap,
    StrategyNet,
    SyncLink,
    run_net,
)
from .strategy import (
    Copycat,
    Dispatch,
    Emit,
    Relabel,
    Segments,
    Silent,
    Strategy,
    inject,
)
from .timing import TimeReport, time_report

__all__ = [
    "Blueprint",
    "CompiledStrategy",
    "Copycat",
    "Dispatch",
    "EVENT_BUDGET",
    "EventMeter",
    "Emit",
    "ExtractionError",
    "NetRoutingError",
    "RealTap",
    "Relabel",
    "Segments",
    "Silent",
    "Strategy",
    "StrategyNet",
    "SyncLink",
    "TimeReport",
    "extract",
    "inject",
    "run_net",
    "time_report",
]
