"""Check reports: verdict, trusted arithmetic obligations, statistics."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..formula_core import Formula, print_formula

VERDICT_ACCEPTED = "accepted"
VERDICT_REJECTED = "rejected"


@dataclass(frozen=True)
class Obligation:
    """An arithmetic truth the script assumes rather than derives."""

    step_id: int
    formula: Formula


@dataclass(frozen=True)
class CheckReport:
    script_name: str
    verdict: str
    failed_step: int | None = None
    reason: str | None = None
    obligations: tuple[Obligation, ...] = ()
    steps: int = 0
    rules_used: dict[str, int] = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.verdict == VERDICT_ACCEPTED

    def to_dict(self) -> dict:
        out = {
            "script": self.script_name,
            "verdict": self.verdict,
            "steps": self.steps,
            "rules": dict(sorted(self.rules_used.items())),
            "obligations": [
                {"step": o.step_id, "formula": print_formula(o.formula)}
                for o in self.obligations
            ],
        }
        if not self.accepted:
            out["failed_step"] = self.failed_step
            out["reason"] = self.reason
        return out

    def to_text(self) -> str:
        lines = [f"script: {self.script_name}", f"verdict: {self.verdict}"]
        if not self.accepted:
            lines.append(f"failed-step: {self.failed_step}")
            lines.append(f"reason: {self.reason}")
        lines.append(f"steps: {self.steps}")
        lines.append(
            "rules: " + ", ".join(f"{r}={n}" for r, n in sorted(self.rules_used.items()))
        )
        if self.obligations:
            lines.append(f"trusted-obligations: {len(self.obligations)}")
            for o in self.obligations:
                lines.append(f"  step {o.step_id}: {print_formula(o.formula)}")
        else:
            lines.append("trusted-obligations: 0")
        return "\n".join(lines)
