"""Counterbehaviors: scripted environment adversaries.

A counterbehavior is a finite sequence of environment moves, each carrying
either an explicit delivery tick or the prompt marker `*`.  A prompt move is
delivered at the first tick where it is legal and is stamped with the
timestamp of the labmove preceding it, so the environment's accounted
thinking time is zero.  An explicitly timed move is delivered at its tick
whether or not it is legal there -- an illegal delivery loses the play for
the environment, exactly as an illegal move loses for its author.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..game_engine import (
    BOT_LABEL,
    PositionGame,
    depth_bound,
    enumerate_legal_runs,
    is_wellformed_move,
)

#: Delivery tick of a prompt move, rendered `*` in files.
PROMPT = None


@dataclass(frozen=True)
class Counterbehavior:
    """Environment move script: (move, delivery tick | PROMPT) pairs."""

    moves: tuple[tuple[str, int | None], ...] = ()

    def __post_init__(self) -> None:
        last = 0
        for move, tick in self.moves:
            if not is_wellformed_move(move):
                raise ValueError(f"ill-formed move {move!r}")
            if tick is not None:
                if tick < last:
                    raise ValueError("delivery ticks must be non-decreasing")
                last = tick

    @classmethod
    def prompt(cls, moves: tuple[str, ...] | list[str]) -> "Counterbehavior":
        return cls(tuple((m, PROMPT) for m in moves))

    @property
    def prompt_only(self) -> bool:
        return all(tick is None for _, tick in self.moves)

    def __str__(self) -> str:
        return "\n".join(
            f"{'*' if tick is None else tick} {move}" for move, tick in self.moves
        )


def parse_counterbehavior(text: str) -> Counterbehavior:
    """Lines of `<tick|*> <move>`; blank lines and # comments ignored."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<tick|*> <move>', got {line!r}")
        tick = None if parts[0] == "*" else int(parts[0])
        out.append((parts[1], tick))
    return Counterbehavior(tuple(out))


def enumerate_counterbehaviors(
    g: PositionGame,
    prompt_only: bool = True,
    cap: int = 200_000,
    spacing: int | None = None,
) -> Iterator[Counterbehavior]:
    """Every environment move sequence occurring in some legal run of g,
    including the empty one.  Prefixes are covered because the legal-run
    enumeration yields non-maximal runs too.

    With prompt_only, moves carry the prompt marker; otherwise they get
    explicit ticks spaced far enough apart (one more than the game's choice
    depth) for the machine to finish reacting between deliveries.
    """
    if spacing is None:
        spacing = depth_bound(g) + 1
    sequences = sorted(
        {
            tuple(lm.move for lm in run if lm.label == BOT_LABEL)
            for run in enumerate_legal_runs(g, cap)
        }
    )
    for seq in sequences:
        if prompt_only:
            yield Counterbehavior.prompt(seq)
        else:
            yield Counterbehavior(
                tuple((m, (i + 1) * spacing) for i, m in enumerate(seq))
            )
