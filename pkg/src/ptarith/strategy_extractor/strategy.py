"""Machine strategies as deterministic reactive objects.

A strategy plays one side (the machine) of a position game.  Each tick the
runtime feeds it the environment moves that arrived (`observe`) and then asks
for at most one machine move (`next_move`).  Strategies are deterministic and
carry serializable state (`describe`).

Move addressing relies on the engine's in-place substitution discipline:
resolving a choice never re-shapes the surrounding formula tree, so a move
address computed against one formula stays valid in every formula that differs
from it only below resolved nodes.  This is what lets the combinators below
route moves between a conclusion play and premise plays without rewriting
addresses, except where a rule changes the tree shape (see `Relabel`).
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from ..game_engine import move_segments

Segments = tuple[str, ...]


def segments(move: str) -> Segments:
    return tuple(move_segments(move))


def join(segs: Iterable[str]) -> str:
    return ".".join(segs)


def strip_prefix(segs: Segments, prefix: Segments) -> Segments | None:
    """The tail of segs below prefix, or None when segs is not below it."""
    if segs[: len(prefix)] == prefix:
        return segs[len(prefix) :]
    return None


class Strategy:
    """One machine player: observe environment moves, emit at most one move
    per `next_move` call."""

    def observe(self, move: str) -> None:
        raise NotImplementedError

    def next_move(self) -> str | None:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": type(self).__name__}


class Silent(Strategy):
    """Never moves: elementary axioms are won by their truth alone."""

    def observe(self, move: str) -> None:
        pass

    def next_move(self) -> str | None:
        return None


class Emit(Strategy):
    """Make the listed moves (one per tick), then play as `inner`.

    Environment moves are forwarded to `inner` immediately: they address
    parts of the game the pending moves do not touch.
    """

    def __init__(self, moves: Sequence[str], inner: Strategy | None = None):
        self.queue = list(moves)
        self.inner = inner if inner is not None else Silent()

    def observe(self, move: str) -> None:
        self.inner.observe(move)

    def next_move(self) -> str | None:
        if self.queue:
            return self.queue.pop(0)
        return self.inner.next_move()

    def describe(self) -> dict:
        return {
            "kind": "Emit",
            "pending": list(self.queue),
            "inner": self.inner.describe(),
        }


class Dispatch(Strategy):
    """Idle until the environment resolves one of the trigger nodes, then
    continue as the strategy the triggered case builds.

    Each case is (address-prefix, handler); the handler receives the final
    move segment (a choice index or a constant numeral) and returns the
    continuation strategy.  Environment moves elsewhere are buffered and
    replayed into the continuation once it exists: staying silent is safe
    because every trigger node sits in a disjunction-only context, where an
    unresolved trigger keeps the whole formula elementarily true.
    """

    def __init__(self, cases: Sequence[tuple[Segments, Callable[[str], Strategy]]]):
        self.cases = list(cases)
        self.inner: Strategy | None = None
        self.buffer: list[str] = []

    def observe(self, move: str) -> None:
        if self.inner is not None:
            self.inner.observe(move)
            return
        segs = segments(move)
        for prefix, handler in self.cases:
            if len(segs) == len(prefix) + 1 and segs[:-1] == prefix:
                self.inner = handler(segs[-1])
                for held in self.buffer:
                    self.inner.observe(held)
                self.buffer.clear()
                return
        self.buffer.append(move)

    def next_move(self) -> str | None:
        return self.inner.next_move() if self.inner is not None else None

    def describe(self) -> dict:
        return {
            "kind": "Dispatch",
            "triggers": [join(prefix) or "-" for prefix, _ in self.cases],
            "buffered": list(self.buffer),
            "inner": self.inner.describe() if self.inner is not None else None,
        }


class Relabel(Strategy):
    """Translate move addresses between an inner play and the outer game.

    `pairs` maps inner prefixes to outer prefixes (longest match wins, in
    both directions).  Unmapped moves pass through unchanged unless `strict`
    is set, in which case they are dropped: outward drops discard moves the
    inner play makes in parts of its game the outer game does not expose,
    inward drops discard environment moves the inner play has no slot for.
    `drop_in` always discards inbound moves under the given outer prefixes
    (used for disjuncts a weakening step added).
    """

    def __init__(
        self,
        inner: Strategy,
        pairs: Sequence[tuple[Segments, Segments]] = (),
        drop_in: Sequence[Segments] = (),
        strict: bool = False,
    ):
        self.inner = inner
        self.pairs = sorted(pairs, key=lambda p: len(p[0]), reverse=True)
        self.drop_in = list(drop_in)
        self.strict = strict

    def observe(self, move: str) -> None:
        segs = segments(move)
        for prefix in self.drop_in:
            if strip_prefix(segs, prefix) is not None:
                return
        for inner_prefix, outer_prefix in sorted(
            self.pairs, key=lambda p: len(p[1]), reverse=True
        ):
            tail = strip_prefix(segs, outer_prefix)
            if tail is not None:
                self.inner.observe(join(inner_prefix + tail))
                return
        if not self.strict:
            self.inner.observe(move)

    def next_move(self) -> str | None:
        while True:
            move = self.inner.next_move()
            if move is None:
                return None
            segs = segments(move)
            for inner_prefix, outer_prefix in self.pairs:
                tail = strip_prefix(segs, inner_prefix)
                if tail is not None:
                    return join(outer_prefix + tail)
            if not self.strict:
                return move
            # strict and unmapped: an imaginary-only move, swallow and poll on

    def describe(self) -> dict:
        return {
            "kind": "Relabel",
            "pairs": [[join(a) or "-", join(b) or "-"] for a, b in self.pairs],
            "inner": self.inner.describe(),
        }


class Copycat(Strategy):
    """Mirror environment moves between two equal-shaped slots of opposite
    polarity, and otherwise play as `inner`.

    This is the synchronization overlay a matching step compiles to: the two
    linked occurrences stay each other's negation, so whichever way the pair
    finally resolves, one side is true.
    """

    def __init__(self, inner: Strategy, pos_prefix: Segments, neg_prefix: Segments):
        self.inner = inner
        self.pos_prefix = pos_prefix
        self.neg_prefix = neg_prefix
        self.queue: list[str] = []

    def observe(self, move: str) -> None:
        segs = segments(move)
        tail = strip_prefix(segs, self.pos_prefix)
        if tail is not None:
            self.queue.append(join(self.neg_prefix + tail))
            return
        tail = strip_prefix(segs, self.neg_prefix)
        if tail is not None:
            self.queue.append(join(self.pos_prefix + tail))
            return
        self.inner.observe(move)

    def next_move(self) -> str | None:
        if self.queue:
            return self.queue.pop(0)
        return self.inner.next_move()

    def describe(self) -> dict:
        return {
            "kind": "Copycat",
            "linked": [join(self.pos_prefix) or "-", join(self.neg_prefix) or "-"],
            "inner": self.inner.describe(),
        }


def inject(inner: Strategy, env_moves: Iterable[str]) -> Strategy:
    """Feed fixed environment moves to a strategy before play begins.

    Used where a rule resolves part of a premise game up front: eliminating a
    choice universal supplies its constant, a split of an inductive step
    selects the wanted conjunct.
    """
    for move in env_moves:
        inner.observe(move)
    return inner
