"""Interactive play sessions: the state behind the JSON session API.

A session wraps one position game, an optional machine strategy, and a
transcript in progress.  Mutations are serialized per session; distinct
sessions are independent.  Unlike scripted play, interactive sessions reject
illegal human moves (returning the legal alternatives) instead of ending the
game -- the scripted loop in `runtime` keeps the stricter semantics.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

from ..formula_core import print_formula
from ..game_engine import (
    BOT_LABEL,
    IllegalMoveError,
    Labmove,
    PositionGame,
    TOP_LABEL,
    TimedLabmove,
    adjudicate,
    apply_labmove,
    legal_moves,
)
from ..strategy_extractor import CompiledStrategy, time_report

OPEN = "open"
FINISHED = "finished"


class SessionError(ValueError):
    pass


@dataclass
class Session:
    sid: str
    game0: PositionGame
    strategy_name: str | None = None
    _strategy: object | None = None  # instantiated Strategy or None
    clock: int = 0
    position: PositionGame = None
    moves: list[TimedLabmove] = field(default_factory=list)
    status: str = OPEN
    verdict: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self) -> None:
        if self.position is None:
            self.position = self.game0

    # -- queries -----------------------------------------------------------

    def legal(self) -> list[dict]:
        return [
            {"label": label, "move": move}
            for label, move, _ in legal_moves(self.position)
        ]

    def state(self) -> dict:
        report = time_report(self.moves)
        out = {
            "session": self.sid,
            "status": self.status,
            "clock": self.clock,
            "formula": print_formula(self.position.formula),
            "initial": print_formula(self.game0.formula),
            "bound": self.game0.valuation.bound,
            "legal": self.legal(),
            "run": [str(tlm) for tlm in self.moves],
            "times": {"T": report.top_time, "B": report.bot_time},
            "machine": self.strategy_name,
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict
        return out

    # -- mutations (callers hold self.lock) --------------------------------

    def _require_open(self) -> None:
        if self.status != OPEN:
            raise SessionError(f"session {self.sid} is finished")

    def human_move(self, move: str, label: str = BOT_LABEL) -> dict:
        self._require_open()
        if label not in (TOP_LABEL, BOT_LABEL):
            raise SessionError(f"unknown player label {label!r}")
        try:
            nxt = apply_labmove(self.position, Labmove(label, move))
        except IllegalMoveError as err:
            return {"error": f"illegal move: {err.reason}", "legal": self.legal()}
        self.position = nxt
        self.moves.append(TimedLabmove(self.clock, label, move))
        if self._strategy is not None and label == BOT_LABEL:
            self._strategy.observe(move)
        return self.state()

    def tick(self) -> dict:
        """Advance the clock one tick; the machine may move."""
        self._require_open()
        self.clock += 1
        moved = False
        if self._strategy is not None:
            machine_move = self._strategy.next_move()
            if machine_move is not None:
                # Extraction guarantees legality; a failure here is a bug and
                # ends the game under the scripted rule (author loses).
                self.moves.append(TimedLabmove(self.clock, TOP_LABEL, machine_move))
                try:
                    self.position = apply_labmove(
                        self.position, Labmove(TOP_LABEL, machine_move)
                    )
                except IllegalMoveError:
                    return self.finish()
                moved = True
        if not moved and not legal_moves(self.position):
            return self.finish()
        return self.state()

    def finish(self) -> dict:
        self._require_open()
        self.status = FINISHED
        self.verdict = adjudicate(
            self.game0, tuple(tlm.labmove() for tlm in self.moves)
        )
        return self.state()


class SessionStore:
    """Thread-safe registry of sessions."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._counter = itertools.count(1)

    def create(
        self,
        game0: PositionGame,
        strategy: CompiledStrategy | None = None,
    ) -> Session:
        with self._lock:
            sid = f"s{next(self._counter)}"
            session = Session(
                sid,
                game0,
                strategy_name=strategy.name if strategy else None,
                _strategy=(
                    strategy.instantiate(game0.valuation) if strategy else None
                ),
            )
            self._sessions[sid] = session
            return session

    def get(self, sid: str) -> Session:
        with self._lock:
            if sid not in self._sessions:
                raise SessionError(f"unknown session {sid!r}")
            return self._sessions[sid]
