"""The discrete-time play loop: a machine strategy against an environment.

One tick is one opportunity to move.  Each tick the runtime first delivers
the environment moves due this tick, then lets the strategy make at most one
move, stamped with the tick number.  A prompt environment move is stamped
with the preceding labmove's timestamp instead, so it costs the environment
no thinking time.  Play ends when the environment is spent, the strategy has
been silent for a grace window, or a move was illegal -- an illegal move
immediately ends the play and loses for its author.  The finished run is
adjudicated by the game engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Protocol

from ..game_engine import (
    BOT_LABEL,
    IllegalMoveError,
    Interpretation,
    Labmove,
    PositionGame,
    Run,
    STANDARD,
    TOP_LABEL,
    TimedLabmove,
    VERDICT_UNDETERMINED,
    Valuation,
    adjudicate,
    apply_labmove,
    depth_bound,
    format_transcript,
    legal_moves,
)
from ..strategy_extractor import CompiledStrategy, TimeReport, time_report
from .counterbehavior import Counterbehavior

DEFAULT_GRACE = 2
DEFAULT_TICK_CAP = 10_000


@dataclass(frozen=True)
class Transcript:
    """A finished play: timestamped labmoves, verdict, and time accounting."""

    start: PositionGame
    moves: tuple[TimedLabmove, ...]
    verdict: str
    times: TimeReport
    ticks: int
    note: str = ""

    @property
    def run(self) -> Run:
        return tuple(tlm.labmove() for tlm in self.moves)

    def __str__(self) -> str:
        return format_transcript(self.moves)


class Environment(Protocol):
    """Adversary protocol: asked once per tick for the moves to deliver."""

    def due(self, tick: int, position: PositionGame) -> list[tuple[str, bool]]:
        """(move, prompt) pairs to deliver this tick, in order.  A prompt
        move is stamped with the preceding labmove's timestamp."""

    def spent(self, position: PositionGame) -> bool:
        """No further moves will ever be due from this position."""


def _env_legal(position: PositionGame, move: str) -> bool:
    try:
        apply_labmove(position, Labmove(BOT_LABEL, move))
    except IllegalMoveError:
        return False
    return True


class ScriptedEnvironment:
    """Plays a counterbehavior: explicitly timed moves are delivered at their
    tick whether legal or not (an illegal delivery loses for the
    environment); prompt moves wait for legality, one per tick."""

    def __init__(self, script: Counterbehavior):
        self.pending = list(script.moves)

    def due(self, tick: int, position: PositionGame) -> list[tuple[str, bool]]:
        out: list[tuple[str, bool]] = []
        while self.pending:
            move, when = self.pending[0]
            if when is None:
                if out or not _env_legal(position, move):
                    break
                self.pending.pop(0)
                out.append((move, True))
                break
            if when > tick:
                break
            self.pending.pop(0)
            out.append((move, False))
        return out

    def spent(self, position: PositionGame) -> bool:
        if not self.pending:
            return True
        move, when = self.pending[0]
        # A stuck prompt move may still be enabled by future machine moves;
        # the caller's grace window decides when to give up on that.
        return when is None and not _env_legal(position, move)


class RandomEnvironment:
    """Seeded adversary: each tick, with the given rate, one uniformly random
    legal environment move; stops after max_moves."""

    def __init__(self, seed: int, rate: float = 0.5, max_moves: int | None = None):
        self.rng = random.Random(seed)
        self.rate = rate
        self.max_moves = max_moves
        self.made = 0

    def due(self, tick: int, position: PositionGame) -> list[tuple[str, bool]]:
        if self.spent(position) or self.rng.random() >= self.rate:
            return []
        options = [m for lbl, m, _ in legal_moves(position) if lbl == BOT_LABEL]
        if not options:
            return []
        self.made += 1
        return [(self.rng.choice(options), False)]

    def spent(self, position: PositionGame) -> bool:
        if self.max_moves is not None and self.made >= self.max_moves:
            return True
        return not any(lbl == BOT_LABEL for lbl, _, _ in legal_moves(position))


def play(
    strategy: CompiledStrategy,
    env: Counterbehavior | Environment | int,
    valuation: Valuation,
    *,
    interp: Interpretation = STANDARD,
    grace: int = DEFAULT_GRACE,
    tick_cap: int = DEFAULT_TICK_CAP,
) -> Transcript:
    """Run one play to completion and adjudicate it.

    `env` may be a counterbehavior, an Environment object, or an integer
    seed for a random adversary (capped at one move per unresolved choice).
    """
    if isinstance(env, Counterbehavior):
        env = ScriptedEnvironment(env)
    elif isinstance(env, int):
        env = RandomEnvironment(env)
    game0 = PositionGame(strategy.formula, valuation, interp)
    strat = strategy.instantiate(valuation)
    if isinstance(env, RandomEnvironment) and env.max_moves is None:
        env.max_moves = depth_bound(game0)

    pos = game0
    moves: list[TimedLabmove] = []
    note = ""
    idle = 0
    tick = -1
    halted = False
    while not halted:
        tick += 1
        if tick > tick_cap:
            note = f"tick cap {tick_cap} reached"
            break
        progressed = False
        for move, prompt in env.due(tick, pos):
            stamp = (moves[-1].time if moves else 0) if prompt else tick
            moves.append(TimedLabmove(stamp, BOT_LABEL, move))
            progressed = True
            try:
                pos = apply_labmove(pos, Labmove(BOT_LABEL, move))
            except IllegalMoveError:
                halted = True  # environment's illegal move ends the play
                break
            strat.observe(move)
        if halted:
            break
        machine_move = strat.next_move()
        if machine_move is not None:
            moves.append(TimedLabmove(tick, TOP_LABEL, machine_move))
            progressed = True
            try:
                pos = apply_labmove(pos, Labmove(TOP_LABEL, machine_move))
            except IllegalMoveError:
                break  # the machine's illegal move ends the play
        if progressed:
            idle = 0
        else:
            idle += 1
            if idle >= grace and env.spent(pos):
                break

    run = tuple(tlm.labmove() for tlm in moves)
    verdict = VERDICT_UNDETERMINED if note else adjudicate(game0, run)
    return Transcript(game0, tuple(moves), verdict, time_report(moves), tick, note)
