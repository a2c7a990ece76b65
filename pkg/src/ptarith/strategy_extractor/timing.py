"""Per-player time accounting over timed transcripts.

Each move's thinking period is the time elapsed since the immediately
preceding move of the transcript (since the start of play for the first
move).  A player's time is the sum of the thinking periods of its own moves:
time spent while the other player was deliberating is never charged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..game_engine import BOT_LABEL, TOP_LABEL, TimedLabmove


@dataclass(frozen=True)
class TimeReport:
    top_time: int
    bot_time: int
    periods: tuple[tuple[TimedLabmove, int], ...]

    def time_of(self, label: str) -> int:
        return self.top_time if label == TOP_LABEL else self.bot_time


def time_report(transcript: Iterable[TimedLabmove]) -> TimeReport:
    totals = {TOP_LABEL: 0, BOT_LABEL: 0}
    periods = []
    previous = 0
    for lm in transcript:
        if lm.time < previous:
            raise ValueError("transcript timestamps must be non-decreasing")
        period = lm.time - previous
        totals[lm.label] += period
        periods.append((lm, period))
        previous = lm.time
    return TimeReport(totals[TOP_LABEL], totals[BOT_LABEL], tuple(periods))
