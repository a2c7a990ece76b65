"""Runs: player-labeled move strings, with text serialization.

Wire format for moves: binary numerals (0|1(0|1)*) joined by "." for nesting.
Run files carry one labmove per line: `T <move>` / `B <move>`.  Transcripts
additionally carry a timestamp: `<t> T <move>`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

TOP_LABEL = "T"
BOT_LABEL = "B"

_SEGMENT_RE = re.compile(r"^(0|1[01]*)$")


@dataclass(frozen=True)
class Labmove:
    label: str  # "T" | "B"
    move: str

    def __post_init__(self) -> None:
        if self.label not in (TOP_LABEL, BOT_LABEL):
            raise ValueError(f"label must be T or B, got {self.label!r}")

    def __str__(self) -> str:
        return f"{self.label} {self.move}"


Run = tuple[Labmove, ...]


def opponent(label: str) -> str:
    return BOT_LABEL if label == TOP_LABEL else TOP_LABEL


def move_segments(move: str) -> list[str]:
    segs = move.split(".")
    for seg in segs:
        if not _SEGMENT_RE.match(seg):
            raise ValueError(f"malformed move segment {seg!r} in {move!r}")
    return segs


def is_wellformed_move(move: str) -> bool:
    try:
        move_segments(move)
        return True
    except ValueError:
        return False


def format_run(run: Sequence[Labmove]) -> str:
    return "\n".join(str(lm) for lm in run)


def parse_run(text: str) -> Run:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<T|B> <move>', got {line!r}")
        out.append(Labmove(parts[0], parts[1]))
    return tuple(out)


@dataclass(frozen=True)
class TimedLabmove:
    time: int
    label: str
    move: str

    def __str__(self) -> str:
        return f"{self.time} {self.label} {self.move}"

    def labmove(self) -> Labmove:
        return Labmove(self.label, self.move)


def format_transcript(moves: Iterable[TimedLabmove]) -> str:
    return "\n".join(str(m) for m in moves)


def parse_transcript(text: str) -> tuple[TimedLabmove, ...]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected '<t> <T|B> <move>', got {line!r}")
        out.append(TimedLabmove(int(parts[0]), parts[1], parts[2]))
    return tuple(out)
