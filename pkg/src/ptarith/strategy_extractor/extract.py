"""Compile accepted proof scripts into winning machine strategies.

Each step of a script gets a blueprint: a factory that, given a bounded
valuation, builds a `Strategy` for that step's formula.  Blueprints compose
the way the rules do -- a choice-selection step prepends its move to the
premise strategy, a waiting step dispatches on the environment's first
resolution, modus ponens runs premise plays against an implication play
inside a `StrategyNet`, the induction rules unroll value-indexed chains of
step-premise instances.

The compiler assumes the script has already been accepted by the proof
checker; shape mismatches therefore raise `ExtractionError` rather than
produce diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..formula_core import (
    BOUND_VAR,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    Formula,
    ParAnd,
    ParOr,
    Var,
    all_vars,
    children,
    elementarize,
    eval_term,
    free_vars,
    move_prefix,
    negate,
    parse_term,
    replace_at,
    size,
    substitute_vars,
    surface_choice_occurrences,
)
from ..game_engine import DEFAULT_WITNESS_CAP, STANDARD, Valuation, eval_elementary
from ..proof_checker import ProofScript, ProofStep
from .net import RealTap, StrategyNet, SyncLink
from .strategy import (
    Copycat,
    Dispatch,
    Emit,
    Relabel,
    Segments,
    Silent,
    Strategy,
    inject,
    join,
)

Blueprint = Callable[[Valuation], Strategy]


class ExtractionError(ValueError):
    pass


@dataclass(frozen=True)
class CompiledStrategy:
    """A reusable strategy factory for one proven formula."""

    name: str
    system: str
    formula: Formula
    make: Blueprint = field(repr=False)

    def instantiate(self, valuation: Valuation) -> Strategy:
        return self.make(valuation)


def _path(token: str) -> tuple[int, ...]:
    if token == "-":
        return ()
    return tuple(int(p) for p in token.split("."))


def _at(f: Formula, path: tuple[int, ...]) -> Formula:
    for i in path:
        f = children(f)[i]
    return f


def _prefix(f: Formula, path: tuple[int, ...]) -> Segments:
    return tuple(move_prefix(f, path))


def _disjunctive(f: Formula, path: tuple[int, ...]) -> bool:
    for i in path:
        if not isinstance(f, ParOr):
            return False
        f = f.children[i]
    return True


def _index_seg(i: int) -> str:
    return format(i, "b")


def _constant_seg(value: int) -> str:
    return format(value, "b")


def _mp_net(premises: list[Strategy], implication: Strategy) -> StrategyNet:
    """Premise plays copycat-linked into the antecedent slots of an
    implication play whose consequent is tapped to the real game."""
    parties: dict[str, Strategy] = {"impl": implication}
    links = []
    for j, p in enumerate(premises):
        name = f"p{j}"
        parties[name] = p
        slot: Segments = ("0",) if len(premises) == 1 else ("0", _index_seg(j))
        links.append(SyncLink(name, (), "impl", slot))
    return StrategyNet(parties, links, [RealTap("impl", ("1",), ())])


class _Compiler:
    def __init__(self, script: ProofScript, imports: dict[str, ProofScript]):
        self.script = script
        self.imports = imports
        self.cache: dict[int, Blueprint] = {}
        self.lemma_cache: dict[str, CompiledStrategy] = {}

    # -- plumbing ----------------------------------------------------------

    def blueprint(self, sid: int) -> Blueprint:
        if sid not in self.cache:
            step = self.script.step(sid)
            rule = step.rule.replace("-", "_").replace("+", "_plus")
            builder = getattr(self, "_compile_" + rule, None)
            if builder is None:
                raise ExtractionError(
                    f"no strategy recipe for rule {step.rule!r} (step {sid})"
                )
            self.cache[sid] = builder(step)
        return self.cache[sid]

    def _premise(self, token: str) -> Blueprint:
        return self.blueprint(int(token))

    # -- axioms ------------------------------------------------------------

    def _silent(self, step: ProofStep) -> Blueprint:
        return lambda e: Silent()

    _compile_ax_log = _silent
    _compile_ax_peano_1 = _silent
    _compile_ax_peano_2 = _silent
    _compile_ax_peano_3 = _silent
    _compile_ax_peano_4 = _silent
    _compile_ax_peano_5 = _silent
    _compile_ax_peano_6 = _silent
    _compile_ax_peano_7 = _silent
    _compile_ax_x13 = _silent

    def _compile_ax_x8(self, step: ProofStep) -> Blueprint:
        # Name the constant zero.
        return lambda e: Emit([_constant_seg(0)])

    def _compile_ax_x9(self, step: ProofStep) -> Blueprint:
        # Tell whether the value is zero.
        s = step.formula.children[0].t.name
        return lambda e: Emit([_index_seg(0 if e[s] == 0 else 1)])

    def _successor_axiom(
        self, step: ProofStep, argument_of, bump: Callable[[int], int]
    ) -> Blueprint:
        name = argument_of(step.formula.children[1].body.u).name

        def make(e: Valuation) -> Strategy:
            value = bump(e[name])
            if size(value) <= e.bound:
                return Emit(["1." + _constant_seg(value)])
            return Silent()  # the size premise fails; winning needs no move

        return make

    def _compile_ax_x10(self, step: ProofStep) -> Blueprint:
        return self._successor_axiom(step, lambda t: t.t, lambda v: v + 1)

    def _compile_ax_x11(self, step: ProofStep) -> Blueprint:
        return self._successor_axiom(step, lambda t: t.u, lambda v: 2 * v)

    def _compile_ax_x12(self, step: ProofStep) -> Blueprint:
        # Binary predecessor first, parity bit second.
        s = step.formula.body.children[0].t.name
        return lambda e: Emit(
            [_constant_seg(e[s] >> 1), _index_seg(e[s] & 1)]
        )

    # -- choice selections -------------------------------------------------

    def _compile_cor_choose(self, step: ProofStep) -> Blueprint:
        premise = self._premise(step.args[0])
        prefix = _prefix(step.formula, _path(step.args[1]))
        move = join(prefix + (_index_seg(int(step.args[2])),))
        return lambda e: Emit([move], premise(e))

    def _compile_cex_choose(self, step: ProofStep) -> Blueprint:
        premise = self._premise(step.args[0])
        prefix = _prefix(step.formula, _path(step.args[1]))
        witnesses = step.args[2:]

        def make(e: Valuation) -> Strategy:
            moves = [join(prefix + (_constant_seg(e[w]),)) for w in witnesses]
            return Emit(moves, premise(e))

        return make

    # -- waiting -----------------------------------------------------------

    def _find_ordinary(self, want: Formula, ordinaries: list[tuple[str, Formula]]):
        for token, f in ordinaries:
            if f == want:
                return self._premise(token)
        raise ExtractionError(f"missing ordinary premise for {want}")

    def _call_binder(
        self, c: Formula, path: tuple[int, ...], node: ChoAll,
        ordinaries: list[tuple[str, Formula]],
    ) -> tuple[Blueprint, str | None]:
        """The premise blueprint for a choice-universal occurrence, plus the
        fresh variable the environment's constant will be bound to."""
        x, body = node.var, node.body
        if x not in free_vars(body):
            return self._find_ordinary(replace_at(c, path, body), ordinaries), None
        taken = all_vars(c)
        for token, f in ordinaries:
            for s in sorted(free_vars(f)):
                if s == BOUND_VAR or s in taken:
                    continue
                if f == replace_at(c, path, substitute_vars(body, {x: Var(s)})):
                    return self._premise(token), s
        raise ExtractionError(f"missing fresh-variable premise for {node}")

    def _compile_wait(self, step: ProofStep) -> Blueprint:
        c = step.formula
        ordinaries = [
            (tok, self.script.step(int(tok)).formula) for tok in step.args[1:]
        ]
        cases: list[tuple[Segments, Callable]] = []
        for path, node in surface_choice_occurrences(c):
            prefix = _prefix(c, path)
            if isinstance(node, ChoAnd):
                comps = [
                    self._find_ordinary(replace_at(c, path, child), ordinaries)
                    for child in node.children
                ]
                cases.append((prefix, ("and", comps)))
            elif isinstance(node, ChoAll):
                bp, fresh = self._call_binder(c, path, node, ordinaries)
                cases.append((prefix, ("all", bp, fresh)))

        def make(e: Valuation) -> Strategy:
            bound = []
            for prefix, spec in cases:
                if spec[0] == "and":
                    comps = spec[1]
                    handler = (lambda comps: lambda tail: comps[int(tail, 2)](e))(comps)
                else:
                    _, bp, fresh = spec
                    if fresh is None:
                        handler = (lambda bp: lambda tail: bp(e))(bp)
                    else:
                        handler = (
                            lambda bp, fresh: lambda tail: bp(
                                e.extend(fresh, int(tail, 2))
                            )
                        )(bp, fresh)
                bound.append((prefix, handler))
            return Dispatch(bound)

        return make

    # -- composition -------------------------------------------------------

    def _compile_mp(self, step: ProofStep) -> Blueprint:
        bps = [self._premise(tok) for tok in step.args]
        if len(bps) == 1:  # degenerate: the premise is the conclusion
            return bps[0]
        *premise_bps, impl_bp = bps
        return lambda e: _mp_net([bp(e) for bp in premise_bps], impl_bp(e))

    def _compile_match(self, step: ProofStep) -> Blueprint:
        premise = self._premise(step.args[0])
        pos = _prefix(step.formula, _path(step.args[1]))
        neg = _prefix(step.formula, _path(step.args[2]))
        return lambda e: Copycat(premise(e), pos, neg)

    def _compile_tr(self, step: ProofStep) -> Blueprint:
        left = self._premise(step.args[0])
        right = self._premise(step.args[1])

        def make(e: Valuation) -> Strategy:
            return StrategyNet(
                {"left": left(e), "right": right(e)},
                [SyncLink("left", ("1",), "right", ("0",))],
                [
                    RealTap("left", ("0",), ("0",)),
                    RealTap("right", ("1",), ("1",)),
                ],
            )

        return make

    def _compile_weaken(self, step: ProofStep) -> Blueprint:
        premise = self._premise(step.args[0])
        c = step.formula
        path = _path(step.args[1])
        parent_path, dropped = path[:-1], path[-1]
        parent = _at(c, parent_path)
        parent_prefix = _prefix(c, parent_path)
        rest = [j for j in range(len(parent.children)) if j != dropped]
        if len(rest) == 1:
            pairs = [(parent_prefix, parent_prefix + (_index_seg(rest[0]),))]
        else:
            pairs = [
                (parent_prefix + (_index_seg(k),), parent_prefix + (_index_seg(j),))
                for k, j in enumerate(rest)
            ]
        drop_in = [parent_prefix + (_index_seg(dropped),)]
        return lambda e: Relabel(premise(e), pairs, drop_in=drop_in)

    # -- introductions and eliminations ------------------------------------

    def _compile_cand_intro(self, step: ProofStep) -> Blueprint:
        c = step.formula
        path = _path(step.kwargs["at"])
        prefix = _prefix(c, path)
        comps = [self._premise(tok) for tok in step.args]
        return lambda e: Dispatch([(prefix, lambda tail: comps[int(tail, 2)](e))])

    def _compile_call_intro(self, step: ProofStep) -> Blueprint:
        # Staying silent until the environment resolves the introduced
        # quantifier is winning in a disjunction-only context (the unresolved
        # node keeps the formula elementarily true).  Otherwise we require
        # that it is the only environment-movable surface node and -- per
        # valuation, at instantiation -- that the conclusion's
        # elementarization is true, so silence still wins when the
        # environment never resolves it.
        c = step.formula
        path = _path(step.kwargs["at"])
        guarded = not _disjunctive(c, path)
        if guarded:
            env_nodes = [
                p for p, node in surface_choice_occurrences(c)
                if isinstance(node, (ChoAnd, ChoAll))
            ]
            if env_nodes != [path]:
                raise ExtractionError(
                    "waiting on an introduced choice universal is not known "
                    "to be winning in this context"
                )
        prefix = _prefix(c, path)
        svar = step.kwargs["s"]
        premise = self._premise(step.args[0])

        def make(e: Valuation) -> Strategy:
            elem = elementarize(c, cl4=False)
            env = {name: e[name] for name in free_vars(elem)}
            # Blind witnesses may be as large as any constant of the
            # valuation, so widen the search cap accordingly.
            cap = max(DEFAULT_WITNESS_CAP, 1 << e.bound)
            if guarded and eval_elementary(elem, env, STANDARD, cap) is not True:
                raise ExtractionError(
                    "silent waiting is not winning here: the conclusion's "
                    "elementarization is false under this valuation"
                )
            return Dispatch(
                [(prefix, lambda tail: premise(e.extend(svar, int(tail, 2))))]
            )

        return make

    def _compile_call_elim(self, step: ProofStep) -> Blueprint:
        premise = self._premise(step.args[0])
        svar = step.kwargs["s"]
        return lambda e: inject(premise(e), [_constant_seg(e[svar])])

    def _compile_cor_elim(self, step: ProofStep) -> Blueprint:
        disjunction = self._premise(step.args[0])
        branches = [self._premise(tok) for tok in step.args[1:]]

        def make(e: Valuation) -> Strategy:
            impl = Dispatch([(("0",), lambda tail: branches[int(tail, 2)](e))])
            return _mp_net([disjunction(e)], impl)

        return make

    # -- lemma citation ----------------------------------------------------

    @staticmethod
    def _entries(text: str) -> list[tuple[str, str]]:
        out = []
        for entry in text.split(";"):
            entry = entry.strip()
            if entry:
                a, b = (p.strip() for p in entry.split(":="))
                out.append((a, b))
        return out

    def _compile_lemma(self, step: ProofStep) -> Blueprint:
        name = step.args[0]
        if name not in self.lemma_cache:
            ref = self.imports.get(name)
            if ref is None:
                raise ExtractionError(f"unresolved import {name!r}")
            self.lemma_cache[name] = extract(ref, self.imports)
        base = self.lemma_cache[name].make
        ren = self._entries(step.kwargs.get("ren", ""))
        close = self._entries(step.kwargs.get("close", ""))

        def layer(remaining: list[tuple[str, str]], e: Valuation) -> Strategy:
            # Closure entries are applied inside-out, so the last one is the
            # outermost quantifier: peel constants off the front of the play.
            if not remaining:
                inner = e
                for old, new in ren:
                    inner = inner.extend(old, e[new])
                return base(inner)
            s, _x = remaining[-1]
            return Dispatch(
                [((), lambda tail: layer(remaining[:-1], e.extend(s, int(tail, 2))))]
            )

        return lambda e: layer(close, e)

    # -- induction ---------------------------------------------------------

    def _compile_bsi(self, step: ProofStep) -> Blueprint:
        basis = self._premise(step.args[0])
        right = self._premise(step.args[1])
        svar = step.kwargs["s"]

        def make(e: Valuation) -> Strategy:
            target = e[svar]
            strat = basis(e)
            value = 0
            for digit in format(target, "b") if target else "":
                impl = inject(right(e.extend(svar, value)), ["1." + digit])
                strat = _mp_net([strat], impl)
                value = value * 2 + int(digit)
            return strat

        return make

    def _compile_bpi(self, step: ProofStep) -> Blueprint:
        basis = self._premise(step.args[0])
        right = self._premise(step.args[1])
        svar = step.kwargs["s"]

        def for_value(e: Valuation, value: int) -> Strategy:
            if value == 0:
                return basis(e.extend(svar, 0))
            # The hypothesis play exposes only its conclusion-for-the-
            # predecessor slot; the parity guard is elementary and moveless.
            hypothesis = Relabel(
                for_value(e, value >> 1), [((), ("1",))], strict=True
            )
            return _mp_net([hypothesis], right(e.extend(svar, value)))

        return lambda e: for_value(e, e[svar])

    def _compile_pti(self, step: ProofStep) -> Blueprint:
        svar = step.kwargs["s"]
        tau = parse_term(step.kwargs["tau"])
        left = self._premise(step.args[0])
        right = self._premise(step.args[1])
        cons = step.formula.children[1]
        if not (
            isinstance(cons, ParAnd)
            and len(cons.children) == 2
            and step.kwargs.get("split") == "1"
        ):
            raise ExtractionError(
                "network extraction supports a binary consequent split only"
            )

        def make(e: Valuation) -> Strategy:
            d = e[svar]
            cap = eval_term(tau, e)
            if d > cap:
                return StrategyNet({}, meta={"vacuous": True, "s": d, "tau": cap})
            parties: dict[str, Strategy] = {
                # One basis feed for the invariant, d+1 for the worker.
                "e0": Relabel(left(e), [(("0",), ())], strict=True),
            }
            for i in range(d + 1):
                parties[f"f0_{i}"] = Relabel(left(e), [(("1",), ())], strict=True)
            links: list[SyncLink] = []
            blocks = []
            for a in range(d):
                k = d - a  # recycling copies in this block's chain
                at_a = e.extend(svar, a)
                for i in range(1, k + 1):
                    parties[f"r{a}_{i}"] = inject(right(at_a), ["1.1"])
                parties[f"q{a}"] = inject(right(at_a), ["1.0"])
                blocks.append({"a": a, "recycle_copies": k, "final_copy": 1})
                # Thread the recyclable invariant along the chain.
                for i in range(1, k):
                    links.append(
                        SyncLink(f"r{a}_{i}", ("1", "1"), f"r{a}_{i + 1}", ("0", "0"))
                    )
                links.append(SyncLink(f"r{a}_{k}", ("1", "1"), f"q{a}", ("0", "0")))
                # Feed the antecedents from the previous block or the basis.
                if a == 0:
                    e_src = ("e0", ())
                    f_src = [(f"f0_{i}", ()) for i in range(k + 1)]
                else:
                    e_src = (f"q{a - 1}", ("1",))
                    f_src = [(f"r{a - 1}_{i}", ("1", "0")) for i in range(1, k + 2)]
                links.append(SyncLink(*e_src, f"r{a}_1", ("0", "0")))
                sinks = [(f"r{a}_{i}", ("0", "1")) for i in range(1, k + 1)]
                sinks.append((f"q{a}", ("0", "1")))
                for (src, sp), (dst, dp) in zip(f_src, sinks):
                    links.append(SyncLink(src, sp, dst, dp))
            if d == 0:
                taps = [
                    RealTap("e0", (), ("1", "0")),
                    RealTap("f0_0", (), ("1", "1")),
                ]
            else:
                taps = [
                    RealTap(f"q{d - 1}", ("1",), ("1", "0")),
                    RealTap(f"r{d - 1}_1", ("1", "0"), ("1", "1")),
                ]
            return StrategyNet(
                parties,
                links,
                taps,
                meta={
                    "s": d,
                    "tau": cap,
                    "blocks": blocks,
                    "basis_feeds": {"invariant": 1, "worker": d + 1},
                },
            )

        return make


def extract(
    script: ProofScript,
    imports: dict[str, ProofScript] | None = None,
    step_id: int | None = None,
) -> CompiledStrategy:
    """Compile an accepted script's final (or named) step into a strategy
    factory.  The script must have passed the proof checker."""
    compiler = _Compiler(script, imports or {})
    step = script.steps[-1] if step_id is None else script.step(step_id)
    make = compiler.blueprint(step.id)
    return CompiledStrategy(script.name, script.system, step.formula, make)
