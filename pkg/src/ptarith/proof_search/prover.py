"""Goal-directed bounded proof search for the choice logics.

Search runs on the conclusion and works upward.  At each goal it tries, in
order: the logical axiom (for elementary goals), every choice-disjunction
selection, every choice-existential instantiation over the goal's free
variables plus one fresh variable, the wait rule (special premise = the
elementarization, one ordinary premise per surface choice-conjunct and a
fresh-variable premise per surface choice-universal), and -- for scripts with
general letters -- every way of matching a positive against a negative surface
occurrence of the same general letter.  All premise sets are finite modulo
variable naming, so a fresh-variable quota plus a depth bound make the search
terminate.

Exhaustion is reported as such, never as unprovability; the trace records the
case analysis of why each alternative failed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..formula_core import (
    BOUND_VAR,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Formula,
    GenAtom,
    INTERPRETED,
    Not,
    Var,
    all_vars,
    bound_vars,
    elem_letters,
    elementarize,
    free_vars,
    fresh_var,
    is_elementary,
    iter_paths,
    is_surface,
    print_formula,
    replace_at,
    substitute_vars,
    surface_choice_occurrences,
)
from ..proof_checker.script import ProofScript, ProofStep
from .classical import DEFAULT_TABLEAU_BUDGET, classical_valid, tautological


@dataclass(frozen=True)
class SearchBudget:
    """Caps on the bounded search; all positive."""

    max_depth: int = 16
    max_fresh: int = 8
    tableau_nodes: int = DEFAULT_TABLEAU_BUDGET
    wall_seconds: float = 20.0

    def __post_init__(self) -> None:
        if min(self.max_depth, self.max_fresh, self.tableau_nodes) <= 0:
            raise ValueError("search budget components must be positive")
        if self.wall_seconds <= 0:
            raise ValueError("wall budget must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Exhausted:
    """No proof found within the budget -- not a proof of unprovability."""

    formula: Formula
    system: str
    budget: SearchBudget
    trace: tuple[str, ...] = ()

    def __str__(self) -> str:
        head = f"exhausted: no {self.system} proof of {print_formula(self.formula)} within budget"
        return "\n".join([head, *self.trace])


class _Deadline(Exception):
    pass


@dataclass
class _State:
    steps: list[ProofStep] = field(default_factory=list)
    fresh_used: int = 0
    memo: dict[Formula, int] = field(default_factory=dict)


class _Search:
    def __init__(self, system: str, budget: SearchBudget):
        self.system = system
        self.budget = budget
        self.deadline = time.monotonic() + budget.wall_seconds
        self.state = _State()
        self.trace: list[str] = []
        self.names: set[str] = set()

    # -- bookkeeping -------------------------------------------------------

    def _note(self, depth: int, msg: str) -> None:
        self.trace.append("  " * depth + msg)

    def _snapshot(self):
        s = self.state
        return len(s.steps), s.fresh_used, dict(s.memo)

    def _restore(self, snap) -> None:
        n, fresh_used, memo = snap
        self.state.steps[n:] = []
        self.state.fresh_used = fresh_used
        self.state.memo = memo

    def _emit(self, f: Formula, rule: str, args: tuple[str, ...] = (),
              kwargs: dict[str, str] | None = None) -> int:
        sid = len(self.state.steps) + 1
        self.state.steps.append(ProofStep(sid, f, rule, args, kwargs or {}))
        self.state.memo[f] = sid
        return sid

    def _fresh(self, f: Formula) -> str | None:
        if self.state.fresh_used >= self.budget.max_fresh:
            return None
        self.state.fresh_used += 1
        name = fresh_var(self.names | all_vars(f))
        self.names.add(name)
        return name

    # -- the search --------------------------------------------------------

    def goal(self, f: Formula, depth: int) -> int | None:
        """Prove f; return its step id, or None with the failure traced."""
        if time.monotonic() > self.deadline:
            raise _Deadline
        if f in self.state.memo:
            return self.state.memo[f]
        self._note(depth, f"goal: {print_formula(f)}")
        if depth >= self.budget.max_depth:
            self._note(depth + 1, "depth budget exhausted")
            return None
        if is_elementary(f):
            return self._try_axiom(f, depth)
        for attempt in (self._try_cor_choose, self._try_cex_choose,
                        self._try_wait, self._try_match):
            sid = attempt(f, depth)
            if sid is not None:
                return sid
        return None

    def _try_axiom(self, f: Formula, depth: int) -> int | None:
        if tautological(f):
            return self._emit(f, "ax-log", ("taut",))
        if classical_valid(f, self.budget.tableau_nodes):
            return self._emit(f, "ax-log", ("fol",))
        self._note(depth + 1, "axiom: not validated by the bounded classical prover")
        return None

    def _try_cor_choose(self, f: Formula, depth: int) -> int | None:
        for path, node in surface_choice_occurrences(f):
            if not isinstance(node, ChoOr):
                continue
            at = ".".join(map(str, path)) or "-"
            for i, option in enumerate(node.children):
                self._note(depth + 1, f"choose option {i} at {at}:")
                snap = self._snapshot()
                pid = self.goal(replace_at(f, path, option), depth + 2)
                if pid is not None:
                    return self._emit(f, "cor-choose", (str(pid), at, str(i)))
                self._restore(snap)
        return None

    def _witnesses(self, f: Formula) -> list[str]:
        out = [x for x in sorted(free_vars(f)) if x != BOUND_VAR]
        fresh = self._fresh(f)
        if fresh is not None:
            out.append(fresh)
        return out

    def _try_cex_choose(self, f: Formula, depth: int) -> int | None:
        for path, node in surface_choice_occurrences(f):
            if not isinstance(node, ChoEx) or node.var == BOUND_VAR:
                continue
            at = ".".join(map(str, path)) or "-"
            for s in self._witnesses(f):
                if s in bound_vars(f):
                    continue
                try:
                    premise = replace_at(
                        f, path, substitute_vars(node.body, {node.var: Var(s)})
                    )
                except ValueError:
                    continue
                self._note(depth + 1, f"instantiate at {at} with {s}:")
                snap = self._snapshot()
                pid = self.goal(premise, depth + 2)
                if pid is not None:
                    return self._emit(f, "cex-choose", (str(pid), at, s))
                self._restore(snap)
        return None

    def _try_wait(self, f: Formula, depth: int) -> int | None:
        special = elementarize(f, cl4=(self.system == "CL4"))
        self._note(depth + 1, "wait:")
        snap = self._snapshot()
        sids = [self.goal(special, depth + 2)]
        if sids[0] is None:
            self._restore(snap)
            return None
        ok = True
        for path, node in surface_choice_occurrences(f):
            if isinstance(node, ChoAnd):
                for child in node.children:
                    pid = self.goal(replace_at(f, path, child), depth + 2)
                    if pid is None:
                        ok = False
                        break
                    sids.append(pid)
            elif isinstance(node, ChoAll):
                s = self._fresh(f)
                if s is None:
                    self._note(depth + 2, "fresh-variable budget exhausted")
                    ok = False
                else:
                    premise = replace_at(
                        f, path, substitute_vars(node.body, {node.var: Var(s)})
                    )
                    pid = self.goal(premise, depth + 2)
                    if pid is None:
                        ok = False
                    else:
                        sids.append(pid)
            if not ok:
                break
        if not ok:
            self._restore(snap)
            return None
        return self._emit(f, "wait", tuple(dict.fromkeys(str(i) for i in sids)))

    def _match_letter(self, f: Formula) -> str:
        taken = elem_letters(f) | set(INTERPRETED)
        for k in range(1, 4):
            for c in "abcdefghijklmnopqrstuwxyz":  # 'v' is a keyword
                name = c * k
                if name not in taken:
                    return name
        raise RuntimeError("no elementary letter available for matching")

    def _try_match(self, f: Formula, depth: int) -> int | None:
        if self.system != "CL4":
            return None
        occurrences = [
            (path, g) for path, g in iter_paths(f) if is_surface(f, path)
        ]
        positives = [(p, g) for p, g in occurrences if isinstance(g, GenAtom)]
        negatives = [
            (p, g) for p, g in occurrences
            if isinstance(g, Not) and isinstance(g.f, GenAtom)
        ]
        q = self._match_letter(f)
        for pos_path, pos in positives:
            for neg_path, neg in negatives:
                if pos.letter != neg.f.letter or len(pos.args) != len(neg.f.args):
                    continue
                premise = replace_at(f, pos_path, ElemAtom(q, pos.args))
                premise = replace_at(premise, neg_path, Not(ElemAtom(q, neg.f.args)))
                pp = ".".join(map(str, pos_path)) or "-"
                np = ".".join(map(str, neg_path)) or "-"
                self._note(depth + 1, f"match {pos.letter} at {pp} against {np} as {q}:")
                snap = self._snapshot()
                pid = self.goal(premise, depth + 2)
                if pid is not None:
                    return self._emit(f, "match", (str(pid), pp, np, q))
                self._restore(snap)
        return None


def prove(
    f: Formula,
    system: str = "CL3",
    budget: SearchBudget = DEFAULT_BUDGET,
) -> ProofScript | Exhausted:
    """Search for a proof of f; every returned script re-checks."""
    if system not in ("CL3", "CL4"):
        raise ValueError(f"proof search covers CL3 and CL4, not {system!r}")
    search = _Search(system, budget)
    try:
        sid = search.goal(f, 0)
    except _Deadline:
        search.trace.append("wall budget exhausted")
        sid = None
    if sid is None:
        return Exhausted(f, system, budget, tuple(search.trace))
    from ..proof_checker import check  # deferred: the checker uses this package

    script = ProofScript(system, search.state.steps, name="found")
    report = check(script, fol_budget=budget.tableau_nodes)
    if not report.accepted:  # pragma: no cover - prover/checker agreement
        raise RuntimeError(
            f"search produced a rejected script: step {report.failed_step}: {report.reason}"
        )
    return script
