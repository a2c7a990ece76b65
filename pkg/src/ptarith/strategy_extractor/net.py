"""Strategy networks: parallel imaginary plays stitched with copycat links.

A `StrategyNet` runs several member strategies ("parties"), each playing an
imaginary game of its own, and routes moves among them and the one real play:

* a `SyncLink` couples a slot of one party's game with a slot of another's of
  opposite polarity -- each party's machine moves under its slot arrive as
  environment moves under the other's;
* a `RealTap` couples a slot of a party's game with a slot of the real game --
  the party's machine moves there are played for real, and real environment
  moves there are fed back to the party.

Modus ponens is the canonical instance (premise plays linked into the
antecedent of an implication play, its consequent tapped to the real game);
the induction networks are larger arrangements of the same two pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .strategy import Segments, Strategy, join, segments, strip_prefix

#: Safety valve for runaway routing; a legitimate network settles after a
#: number of events linear in the formula's choice depth times its parties.
EVENT_BUDGET = 100_000


class EventMeter:
    """Counts internal routing events across all networks while installed.

    The real play exposes only a handful of moves; the computational work of
    a compiled strategy is its internal routing, which this makes measurable:

        with EventMeter() as meter:
            ...
        meter.events
    """

    _active: list["EventMeter"] = []

    def __init__(self) -> None:
        self.events = 0

    def __enter__(self) -> "EventMeter":
        EventMeter._active.append(self)
        return self

    def __exit__(self, *exc) -> None:
        EventMeter._active.remove(self)

    @classmethod
    def record(cls) -> None:
        for meter in cls._active:
            meter.events += 1


@dataclass(frozen=True)
class SyncLink:
    """Copycat coupling between slots of two member plays."""

    a: str
    a_prefix: Segments
    b: str
    b_prefix: Segments


@dataclass(frozen=True)
class RealTap:
    """Coupling between a slot of a member play and a slot of the real game."""

    party: str
    party_prefix: Segments
    real_prefix: Segments


class NetRoutingError(RuntimeError):
    pass


@dataclass
class StrategyNet(Strategy):
    parties: dict[str, Strategy]
    links: list[SyncLink] = field(default_factory=list)
    taps: list[RealTap] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.out: list[str] = []

    def observe(self, move: str) -> None:
        segs = segments(move)
        best: tuple[int, RealTap] | None = None
        for tap in self.taps:
            tail = strip_prefix(segs, tap.real_prefix)
            if tail is not None and (best is None or len(tap.real_prefix) > best[0]):
                best = (len(tap.real_prefix), tap)
        if best is None:
            return  # no party plays that part of the real game
        tap = best[1]
        tail = strip_prefix(segs, tap.real_prefix)
        self.parties[tap.party].observe(join(tap.party_prefix + tail))
        self._settle()

    def next_move(self) -> str | None:
        self._settle()
        return self.out.pop(0) if self.out else None

    def _route(self, name: str, move: str) -> None:
        """Deliver one party's machine move along its longest-prefix link."""
        segs = segments(move)
        depth = -1
        action = None
        for link in self.links:
            for me, mine, other, theirs in (
                (link.a, link.a_prefix, link.b, link.b_prefix),
                (link.b, link.b_prefix, link.a, link.a_prefix),
            ):
                if me != name:
                    continue
                tail = strip_prefix(segs, mine)
                if tail is not None and len(mine) > depth:
                    depth = len(mine)
                    action = ("link", other, theirs, tail)
        for tap in self.taps:
            if tap.party != name:
                continue
            tail = strip_prefix(segs, tap.party_prefix)
            if tail is not None and len(tap.party_prefix) > depth:
                depth = len(tap.party_prefix)
                action = ("real", None, tap.real_prefix, tail)
        if action is None:
            return  # imaginary-only move, visible to nobody else
        kind, other, prefix, tail = action
        if kind == "real":
            self.out.append(join(prefix + tail))
        else:
            self.parties[other].observe(join(prefix + tail))

    def _settle(self) -> None:
        """Propagate internal moves to a fixed point."""
        budget = EVENT_BUDGET
        progressed = True
        while progressed:
            progressed = False
            for name, party in self.parties.items():
                while True:
                    move = party.next_move()
                    if move is None:
                        break
                    budget -= 1
                    EventMeter.record()
                    if budget < 0:
                        raise NetRoutingError(
                            "network routing exceeded the event budget"
                        )
                    self._route(name, move)
                    progressed = True

    def describe(self) -> dict:
        return {
            "kind": "StrategyNet",
            "parties": {name: p.describe() for name, p in self.parties.items()},
            "links": [
                [link.a, join(link.a_prefix) or "-", link.b, join(link.b_prefix) or "-"]
                for link in self.links
            ],
            "taps": [
                [tap.party, join(tap.party_prefix) or "-", join(tap.real_prefix) or "-"]
                for tap in self.taps
            ],
            "meta": dict(self.meta),
        }


def run_net(net: StrategyNet) -> list[str]:
    """Propagate pending internal moves to a fixed point and return (without
    consuming) the real moves now queued."""
    net._settle()
    return list(net.out)
