"""Acceptance gate: end-to-end checks over the shipped proof corpus, the
compiled strategies, the prover, and the randomized semantics properties."""

import time

import numpy as np
import pytest
from hypothesis import given, settings

from formula_gen import game_positions, positions_with_runs
from ptarith.cli import _StressEnvironment
from ptarith.formula_core import (
    Bot,
    ChoAll,
    ChoAnd,
    ChoEx,
    ChoOr,
    ElemAtom,
    Eq,
    Not,
    ParAnd,
    ParOr,
    Top,
    eval_term,
    free_vars,
    negate,
    parse_formula,
)
from ptarith.game_engine import (
    BOT_LABEL,
    Interpretation,
    Labmove,
    PositionGame,
    STANDARD,
    TimedLabmove,
    VERDICT_BOT,
    VERDICT_TOP,
    adjudicate,
    apply_labmove,
    depth_bound,
    enumerate_legal_runs,
    format_run,
    legal_moves,
    opponent,
    prefixate,
    standard_valuation,
)
from ptarith.interaction_runtime import enumerate_counterbehaviors, play
from ptarith.proof_checker import check, mutants, parse_script
from ptarith.proof_search import DEFAULT_BUDGET, Exhausted, prove
from ptarith.strategy_extractor import EventMeter, StrategyNet, extract, time_report

#: machine-answerable readings of the otherwise-uninterpreted letters, so
#: plays of the logic-level theorems can be adjudicated
LETTERS = Interpretation(elem={"p": lambda a: a % 2 == 0}, general={"P": True})

PROPERTY_CASES = 220  # per property; five properties make >= 1000 cases
PROPERTY_SETTINGS = settings(
    max_examples=PROPERTY_CASES, derandomize=True, deadline=None
)


# -- 1. corpus verification -------------------------------------------------

#: pinned sizes of the shipped proof scripts; a drift here means a proof was
#: silently rewritten
EXPECTED_STEPS = {
    "blass": 5,
    "comad": 73,
    "combos": 15,
    "combzs": 18,
    "comeqbound": 14,
    "comlen": 28,
    "comsuc": 34,
    "depswap": 4,
    "eqdec": 32,
    "from_blind": 3,
    "gendepswap": 5,
    "nov8": 12,
    "trichotomy": 18,
    "zer": 3,
    "zersuc": 13,
}

EXPECTED_PA_OBLIGATIONS = 46


def test_corpus_is_accepted_with_pinned_step_counts(corpus):
    started = time.perf_counter()
    reports = {name: check(script, imports=corpus) for name, script in corpus.items()}
    elapsed = time.perf_counter() - started
    assert {name: len(s.steps) for name, s in corpus.items()} == EXPECTED_STEPS
    for name, report in reports.items():
        assert report.verdict == "accepted", f"{name}: {report.reason}"
    assert elapsed < 5.0, f"corpus verification took {elapsed:.2f}s"


def test_every_trusted_arithmetic_step_is_reported(corpus, corpus_reports):
    total = 0
    for name, script in corpus.items():
        pa_ids = {
            step.id
            for step in script.steps
            if step.rule == "ax-log" and step.args == ("pa",)
        }
        listed = {ob.step_id for ob in corpus_reports[name].obligations}
        assert listed == pa_ids, name
        total += len(pa_ids)
    assert total == EXPECTED_PA_OBLIGATIONS


# -- 2. mutation suite ------------------------------------------------------


def test_every_generated_mutant_is_rejected_with_a_reason(corpus):
    total = 0
    escapes = []
    for name, script in corpus.items():
        for description, mutant in mutants(script):
            total += 1
            report = check(mutant, imports=corpus)
            if report.accepted:
                escapes.append(f"{name}: {description}")
            else:
                # the rejection names the violated side condition
                assert report.reason, f"{name}: {description}"
                assert report.failed_step is not None
    assert total >= 100
    assert not escapes, escapes


# -- 3. run census of a fixed two-sided game --------------------------------

CENSUS_GAME = "(0 = 0 cand 0 = 1) -> (10 = 11 cand 10 = 10)"

#: every legal run of the census game with its adjudicated winner
CENSUS = {
    "": VERDICT_TOP,
    "T 0.0": VERDICT_TOP,
    "T 0.1": VERDICT_TOP,
    "B 1.0": VERDICT_BOT,
    "B 1.1": VERDICT_TOP,
    "T 0.0\nB 1.0": VERDICT_BOT,
    "B 1.0\nT 0.0": VERDICT_BOT,
    "T 0.1\nB 1.0": VERDICT_TOP,
    "B 1.0\nT 0.1": VERDICT_TOP,
    "T 0.0\nB 1.1": VERDICT_TOP,
    "B 1.1\nT 0.0": VERDICT_TOP,
    "T 0.1\nB 1.1": VERDICT_TOP,
    "B 1.1\nT 0.1": VERDICT_TOP,
}


def test_census_game_has_exactly_thirteen_runs_with_known_winners():
    g = PositionGame(parse_formula(CENSUS_GAME), standard_valuation(2), STANDARD)
    runs = enumerate_legal_runs(g)
    assert len(runs) == 13
    assert {format_run(run): adjudicate(g, run) for run in runs} == CENSUS


# -- 4. extracted strategies win every enumerated counterbehavior -----------


def sweep(compiled, valuation, interp):
    """Verdict tally over every enumerated counterbehavior, prompt and not."""
    g = PositionGame(compiled.formula, valuation, interp)
    tally = {}
    for prompt_only in (True, False):
        for cb in enumerate_counterbehaviors(g, prompt_only=prompt_only):
            verdict = play(compiled, cb, valuation, interp=interp).verdict
            tally[verdict] = tally.get(verdict, 0) + 1
    return tally


def closed_scripts(corpus):
    return sorted(
        name
        for name, script in corpus.items()
        if free_vars(script.theorem) <= {"bb"}
    )


def test_corpus_strategies_win_all_counterbehaviors(corpus):
    names = closed_scripts(corpus)
    assert names  # the sweep must actually cover something
    for name in names:
        interp = STANDARD if corpus[name].system == "PTA" else LETTERS
        compiled = extract(corpus[name], imports=corpus)
        started = time.perf_counter()
        for bound in (1, 2, 3):
            tally = sweep(compiled, standard_valuation(bound), interp)
            assert tally.get(VERDICT_BOT, 0) == 0, (name, bound, tally)
            # with the letters interpreted, every play is decided for the machine
            assert set(tally) == {VERDICT_TOP}, (name, bound, tally)
        elapsed = time.perf_counter() - started
        assert elapsed < 60.0, f"{name}: exhaustive sweep took {elapsed:.1f}s"


# -- 5. the six arithmetic axiom strategies ---------------------------------

AXIOM_SCHEMES = {
    "ax-x8": "cex x.(x = 0)",
    "ax-x9": "s = 0 cor s != 0",
    "ax-x10": "|s'| <= bb -> cex x.(x = s')",
    "ax-x11": "|s0| <= bb -> cex x.(x = s0)",
    "ax-x12": "cex x.(s = x0 cor s = x1)",
    "ax-x13": "|s| <= bb",
}


def axiom_strategy(rule):
    script = parse_script(
        f"#system PTA\n1: {AXIOM_SCHEMES[rule]} ; {rule}\n", name=rule
    )
    assert check(script).accepted
    return extract(script)


@pytest.mark.parametrize("rule", sorted(AXIOM_SCHEMES))
def test_axiom_strategies_win_exhaustively(rule):
    compiled = axiom_strategy(rule)
    for bound in (1, 2, 3, 4):
        base = standard_valuation(bound)
        if "s" in free_vars(compiled.formula):
            valuations = [base.extend("s", v) for v in base.constants()]
        else:
            valuations = [base]
        for e in valuations:
            tally = sweep(compiled, e, STANDARD)
            assert set(tally) == {VERDICT_TOP}, (rule, bound, e.assign, tally)


def test_binary_predecessor_strategy_matches_the_bit_string_oracle():
    compiled = axiom_strategy("ax-x12")
    for bound in (1, 2, 3, 4):
        base = standard_valuation(bound)
        for value in base.constants():
            strategy = compiled.instantiate(base.extend("s", value))
            moves = []
            while (move := strategy.next_move()) is not None:
                moves.append(move)
            # oracle: drop the last digit of the binary spelling, keep it as
            # the parity choice
            bits = format(value, "b")
            assert moves == [bits[:-1] or "0", bits[-1]], (value, moves)


# -- 6. randomized semantics properties (>= 1000 seeded cases) --------------


@PROPERTY_SETTINGS
@given(positions_with_runs())
def test_property_negation_swaps_the_roles(case):
    g, run = case
    mirror = PositionGame(negate(g.formula), g.valuation, g.interp)
    swapped = tuple(Labmove(opponent(lm.label), lm.move) for lm in run)
    pos, neg = g, mirror
    for lm, sw in zip(run, swapped):
        moves = {(lbl, mv) for lbl, mv, _ in legal_moves(pos)}
        mirror_moves = {(lbl, mv) for lbl, mv, _ in legal_moves(neg)}
        assert mirror_moves == {(opponent(lbl), mv) for lbl, mv in moves}
        pos = apply_labmove(pos, lm)
        neg = apply_labmove(neg, sw)
    verdicts = {VERDICT_TOP: VERDICT_BOT, VERDICT_BOT: VERDICT_TOP}
    a = adjudicate(g, run)
    b = adjudicate(mirror, swapped)
    assert b == verdicts.get(a, a)


@PROPERTY_SETTINGS
@given(positions_with_runs())
def test_property_prefixation_composes(case):
    g, run = case
    for k in range(len(run) + 1):
        middle = prefixate(g, run[:k])
        assert prefixate(middle, run[k:]) == prefixate(g, run)
        assert adjudicate(middle, run[k:]) == adjudicate(g, run)


@PROPERTY_SETTINGS
@given(positions_with_runs())
def test_property_runs_respect_the_depth_bound(case):
    g, run = case
    bound = depth_bound(g)
    assert len(run) <= bound
    # greedily extending to a maximal run still fits the bound
    pos = prefixate(g, run)
    extended = len(run)
    while True:
        options = legal_moves(pos)
        if not options:
            break
        _, _, pos = options[0]
        extended += 1
    assert extended <= bound


@PROPERTY_SETTINGS
@given(game_positions())
def test_property_legality_ignores_the_interpretation(g):
    tabled = Interpretation(
        elem={"p": lambda a: a in (0, 3)}, general={"P": False}
    )
    expected = {(lbl, mv) for lbl, mv, _ in legal_moves(g)}
    for interp in (LETTERS, tabled):
        other = PositionGame(g.formula, g.valuation, interp)
        assert {(lbl, mv) for lbl, mv, _ in legal_moves(other)} == expected


def naive_verdict(formula, env):
    """Independent adjudication of a blind-free final position: unresolved
    choices favor the player who was not obliged to move."""

    def truth(f):
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, (ChoAnd, ChoAll)):
            return True
        if isinstance(f, (ChoOr, ChoEx)):
            return False
        if isinstance(f, Not):
            return not truth(f.f)
        if isinstance(f, ParAnd):
            return all(truth(c) for c in f.children)
        if isinstance(f, ParOr):
            return any(truth(c) for c in f.children)
        if isinstance(f, Eq):
            return eval_term(f.t, env) == eval_term(f.u, env)
        if isinstance(f, ElemAtom) and f.letter == "p":
            return eval_term(f.args[0], env) % 2 == 0
        raise AssertionError(f"unexpected node {f!r}")

    return VERDICT_TOP if truth(formula) else VERDICT_BOT


@PROPERTY_SETTINGS
@given(positions_with_runs(blind=False, interp=LETTERS))
def test_property_outcome_is_the_final_elementarization(case):
    g, run = case
    final = prefixate(g, run)
    assert adjudicate(g, run) == naive_verdict(final.formula, final.valuation)


def test_property_suite_size_meets_the_quota():
    assert 5 * PROPERTY_CASES >= 1000


# -- 7. prover reproduction -------------------------------------------------

PROVER_FINDS = [
    ("CL3", "all x.p(x) -> call y.p(y)"),
    ("CL3", "call x.cex y.(p(x) -> p(y))"),
    ("CL4", "(P & P) v (P & P) -> (P v P) & (P v P)"),
    ("CL4", "call x.cex y.(P(x) -> P(y))"),
]

PROVER_EXHAUSTS = [
    ("CL3", "call x.p(x) -> all y.p(y)"),
    ("CL3", "cex y.call x.(p(x) -> p(y))"),
    ("CL3", "cex x.(x = s')"),
    ("CL3", "p cand q -> (p cand q) & (p cand q)"),
    ("CL4", "P -> P & P"),
]


@pytest.mark.parametrize("system,text", PROVER_FINDS)
def test_prover_finds_and_the_proof_rechecks(system, text):
    result = prove(parse_formula(text), system=system)
    assert not isinstance(result, Exhausted)
    assert check(result).accepted


@pytest.mark.parametrize("system,text", PROVER_EXHAUSTS)
def test_prover_exhausts_at_the_default_budget(system, text):
    result = prove(parse_formula(text), system=system)
    assert isinstance(result, Exhausted)
    assert result.budget == DEFAULT_BUDGET


# -- 8. the induction network -----------------------------------------------

INDUCTION_TOY = """#system PTA
1: 0 = 0 & T ; ax-log pa
2: 0 = 0 & 0 = 0 ; ax-log pa
3: 0 = 0 & (0 = 0 cand 0 = 0) ; wait 1 2
4: (0 != 0 v F) v 0 = 0 ; ax-log pa
5: (0 = 0 & (0 = 0 cand 0 = 0)) -> 0 = 0 ; wait 4
6: (0 != 0 v F) v (0 = 0 & 0 = 0) ; ax-log pa
7: (0 = 0 & (0 = 0 cand 0 = 0)) -> (0 = 0 & 0 = 0) ; wait 6
8: (0 != 0 v F) v (T & 0 = 0) ; ax-log pa
9: (0 = 0 & (0 = 0 cand 0 = 0)) -> ((0 = 0 cand 0 = 0) & 0 = 0) ; wait 8 7
10: (0 != 0 v F) v T ; ax-log pa
11: (0 = 0 & (0 = 0 cand 0 = 0)) -> ((0 = 0) cand ((0 = 0 cand 0 = 0) & 0 = 0)) ; wait 10 5 9
12: s <= bb -> (0 = 0 & (0 = 0 cand 0 = 0)) ; pti 3 11 s=s tau=bb split=1
"""


@pytest.fixture(scope="module")
def induction_toy():
    script = parse_script(INDUCTION_TOY, name="induction-toy")
    assert check(script).accepted
    return extract(script)


def test_induction_network_has_the_prescribed_copy_counts(induction_toy):
    # climbing to d reuses the step premise d - a times at stage a and keeps
    # one final copy per stage, fed by d + 1 basis plays
    for d in (1, 2, 3):
        net = induction_toy.make(standard_valuation(3).extend("s", d))
        assert isinstance(net, StrategyNet)
        blocks = net.meta["blocks"]
        assert [b["a"] for b in blocks] == list(range(d))
        assert [b["recycle_copies"] for b in blocks] == [d - a for a in range(d)]
        assert all(b["final_copy"] == 1 for b in blocks)
        assert net.meta["basis_feeds"] == {"invariant": 1, "worker": d + 1}


def test_induction_strategy_wins_exhaustively(induction_toy):
    for bound in (1, 2):
        base = standard_valuation(bound)
        for value in base.constants():
            e = base.extend("s", value)
            tally = sweep(induction_toy, e, STANDARD)
            assert set(tally) == {VERDICT_TOP}, (bound, value, tally)


# -- 9. time accounting and polynomial work growth --------------------------


def test_time_accounting_unit_fixtures():
    report = time_report(
        [
            TimedLabmove(3, "T", "0"),
            TimedLabmove(5, "B", "1"),
            TimedLabmove(7, "T", "1"),
        ]
    )
    assert report.top_time == 5
    assert report.bot_time == 2
    # a prompt reply carries its predecessor's stamp and costs nothing
    prompt = time_report([TimedLabmove(4, "T", "0"), TimedLabmove(4, "B", "1")])
    assert prompt.bot_time == 0
    assert prompt.top_time == 4


def test_addition_strategy_work_grows_polynomially(corpus):
    compiled = extract(corpus["comad"], imports=corpus)
    bounds = range(2, 11)
    counts = []
    for bound in bounds:
        e = standard_valuation(bound)
        with EventMeter() as meter:
            transcript = play(compiled, _StressEnvironment(), e)
        assert transcript.verdict == VERDICT_TOP, bound
        counts.append(meter.events)
    assert counts == sorted(counts)  # work grows with the bound
    coeffs = np.polyfit(list(bounds), counts, deg=3)
    fitted = np.polyval(coeffs, list(bounds))
    residuals = np.abs(fitted - counts) / counts
    assert residuals.max() < 0.20, residuals
