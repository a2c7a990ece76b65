"""Sound-breaking mutations of accepted proof scripts.

Each generator below takes a script that checks and produces variants that are
no longer correct proofs *by construction*: the mutated step either claims a
formula its rule cannot derive, cites its premises in an order the rule does
not permit, picks a different option or witness than the premise supports,
drops premises the rule needs, or upgrades a trusted arithmetic assumption to
a tautology claim that does not hold.  A checker is expected to reject every
mutant; `kill_rate` measures that.

The input script must itself be accepted — guards that make a mutation class
guaranteed-rejecting rely on it.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from ..formula_core import (
    ChoEx,
    free_vars,
    all_vars,
    fresh_var,
    negate,
    subformula_at,
)
from ..proof_search import tautological
from .script import ProofScript, ProofStep


def _swap_step(script: ProofScript, idx: int, step: ProofStep) -> ProofScript:
    steps = list(script.steps)
    steps[idx] = step
    return script.with_steps(steps)


def _reargs(step: ProofStep, args: tuple[str, ...]) -> ProofStep:
    return ProofStep(step.id, step.formula, step.rule, args, dict(step.kwargs))


def mutants(script: ProofScript) -> Iterator[tuple[str, ProofScript]]:
    """Yield (description, mutated script) pairs; every mutant is unsound."""
    for idx, step in enumerate(script.steps):
        yield from _negate_formula(script, idx, step)
        yield from _swap_premises(script, idx, step)
        yield from _flip_choice_index(script, idx, step)
        yield from _rename_witness(script, idx, step)
        yield from _trust_to_tautology(script, idx, step)
        yield from _drop_wait_premises(script, idx, step)


def _negate_formula(script, idx, step) -> Iterator[tuple[str, ProofScript]]:
    # A `pa`-tagged step is a recorded assumption, not a derivation, so
    # changing its formula merely changes the assumption; skip it.
    if step.rule == "ax-log" and step.args and step.args[0] == "pa":
        return
    mutated = ProofStep(
        step.id, negate(step.formula), step.rule, step.args, dict(step.kwargs)
    )
    yield (
        f"step {step.id}: replace the formula by its negation",
        _swap_step(script, idx, mutated),
    )


#: rules whose positional arguments are all premise references and whose
#: premise order matters (so a swap of distinct premises cannot re-check)
_PREMISE_SWAP_RULES = {
    "mp",
    "wait",
    "cand-intro",
    "cor-elim",
    "tr",
    "bsi",
    "bsi+",
    "bpi",
    "pti",
    "wpti",
    "wpti+",
}


def _swap_premises(script, idx, step) -> Iterator[tuple[str, ProofScript]]:
    if step.rule not in _PREMISE_SWAP_RULES:
        return
    nums = [i for i, a in enumerate(step.args) if a.isdigit()]
    pairs = list(zip(nums, nums[1:]))
    if step.rule == "wait":
        # ordinary premises are an unordered set; only the special/ordinary
        # boundary is order-sensitive
        pairs = pairs[:1]
    for a, b in pairs:
        fa = script.by_id[int(step.args[a])].formula
        fb = script.by_id[int(step.args[b])].formula
        if fa == fb:
            continue
        args = list(step.args)
        args[a], args[b] = args[b], args[a]
        yield (
            f"step {step.id}: swap premises {step.args[a]} and {step.args[b]}",
            _swap_step(script, idx, _reargs(step, tuple(args))),
        )


def _flip_choice_index(script, idx, step) -> Iterator[tuple[str, ProofScript]]:
    if step.rule != "cor-choose":
        return
    path = () if step.args[1] == "-" else tuple(int(s) for s in step.args[1].split("."))
    node = subformula_at(step.formula, path)
    i = int(step.args[2])
    j = (i + 1) % len(node.children)
    if node.children[i] == node.children[j]:
        return
    args = (step.args[0], step.args[1], str(j))
    yield (
        f"step {step.id}: choose option {j} instead of {i}",
        _swap_step(script, idx, _reargs(step, args)),
    )


def _rename_witness(script, idx, step) -> Iterator[tuple[str, ProofScript]]:
    if step.rule != "cex-choose":
        return
    path = () if step.args[1] == "-" else tuple(int(s) for s in step.args[1].split("."))
    node = subformula_at(step.formula, path)
    if not isinstance(node, ChoEx) or node.var not in free_vars(node.body):
        return
    premise = script.by_id[int(step.args[0])].formula
    fresh = fresh_var(all_vars(step.formula) | all_vars(premise) | {step.args[2]})
    args = (step.args[0], step.args[1], fresh)
    yield (
        f"step {step.id}: claim witness {fresh!r} instead of {step.args[2]!r}",
        _swap_step(script, idx, _reargs(step, args)),
    )


def _trust_to_tautology(script, idx, step) -> Iterator[tuple[str, ProofScript]]:
    if not (step.rule == "ax-log" and step.args and step.args[0] == "pa"):
        return
    if tautological(step.formula):
        return
    yield (
        f"step {step.id}: retag the trusted arithmetic fact as a tautology",
        _swap_step(script, idx, _reargs(step, ("taut",))),
    )


def _drop_wait_premises(script, idx, step) -> Iterator[tuple[str, ProofScript]]:
    if step.rule != "wait" or len(step.args) <= 1:
        return
    yield (
        f"step {step.id}: drop all ordinary premises",
        _swap_step(script, idx, _reargs(step, step.args[:1])),
    )


def kill_rate(
    scripts: Iterable[ProofScript],
    imports: dict[str, ProofScript] | None = None,
) -> tuple[int, int, list[str]]:
    """Check every mutant of every script; return (killed, total, survivors)."""
    from .checker import check

    killed = 0
    total = 0
    survivors: list[str] = []
    for script in scripts:
        for description, mutant in mutants(script):
            total += 1
            if check(mutant, imports=imports).accepted:
                survivors.append(f"{script.name}: {description}")
            else:
                killed += 1
    return killed, total, survivors
