"""Bounded valuations: total maps variable -> constant with |e(x)| <= e(bb)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..formula_core import BOUND_VAR, size


@dataclass(frozen=True)
class Valuation(Mapping):
    """Total valuation: unassigned variables read 0; bb reads the bound."""

    bound: int
    assign: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("bound must be a natural number")
        cap = max(self.bound, 1)  # |0| = 1, so b = 0 still admits value 0
        for name, value in self.assign.items():
            if name == BOUND_VAR:
                raise ValueError("assign bb via the bound field")
            if value < 0:
                raise ValueError(f"valuation of {name} must be a natural number")
            if size(value) > cap:
                raise ValueError(
                    f"|e({name})| = {size(value)} exceeds the bound {self.bound}"
                )

    def __getitem__(self, name: str) -> int:
        if name == BOUND_VAR:
            return self.bound
        return self.assign.get(name, 0)

    def __iter__(self):
        yield BOUND_VAR
        yield from self.assign

    def __len__(self) -> int:
        return 1 + len(self.assign)

    def extend(self, name: str, value: int) -> "Valuation":
        new = dict(self.assign)
        new[name] = value
        return Valuation(self.bound, new)

    def constants(self) -> list[int]:
        """All constants a choice quantifier ranges over: size <= bound (just 0
        in the degenerate b=0 case)."""
        if self.bound == 0:
            return [0]
        return list(range(1 << self.bound))


def standard_valuation(b: int) -> Valuation:
    """e_b: bb -> b, every other variable -> 0."""
    return Valuation(b)
