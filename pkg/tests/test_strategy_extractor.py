"""Compiling accepted proof scripts into playable machine strategies."""

import pytest

from ptarith.game_engine import (
    PositionGame,
    STANDARD,
    TimedLabmove,
    VERDICT_TOP,
    standard_valuation,
)
from ptarith.proof_checker import parse_script
from ptarith.strategy_extractor import (
    CompiledStrategy,
    Emit,
    EventMeter,
    RealTap,
    Silent,
    StrategyNet,
    SyncLink,
    TimeReport,
    extract,
    run_net,
    time_report,
)


def compiled(text, name="case", imports=None):
    return extract(parse_script(text, name=name), imports=imports)


# -- extraction -------------------------------------------------------------


def test_extract_returns_a_compiled_strategy(corpus):
    cs = extract(corpus["depswap"])
    assert isinstance(cs, CompiledStrategy)
    assert cs.system == "CL3"
    assert cs.formula == corpus["depswap"].theorem


def test_axiom_script_strategy_is_silent_when_nothing_to_claim():
    cs = compiled("#system PTA\n1: |s| <= bb ; ax-x13\n")
    strat = cs.instantiate(standard_valuation(2).extend("s", 3))
    assert strat.next_move() is None


def test_witness_choice_emits_the_assigned_constant():
    cs = compiled("#system PTA\n1: cex x.(x = 0) ; ax-x8\n")
    strat = cs.instantiate(standard_valuation(2))
    assert strat.next_move() == "0"
    assert strat.next_move() is None


def test_copycat_strategy_mirrors_the_environment_choice(corpus):
    # for every x, a y with p(x) -> p(y): answer the environment's constant
    cs = extract(corpus["depswap"])
    strat = cs.instantiate(standard_valuation(2))
    strat.observe("10")
    assert strat.next_move() == "10"
    assert strat.next_move() is None


def test_instantiation_is_per_valuation(corpus):
    cs = extract(corpus["depswap"])
    a = cs.instantiate(standard_valuation(1))
    b = cs.instantiate(standard_valuation(1))
    a.observe("1")
    assert a.next_move() == "1"
    assert b.next_move() is None  # untouched sibling instance


# -- networks ---------------------------------------------------------------


def net_of_two():
    # one party emits under slot 0; a link forwards it to the other party,
    # whose reaction under slot 1 is tapped to the real game
    left = Emit(["0.1"])
    right = Silent()
    return StrategyNet(
        parties={"l": left, "r": right},
        links=[SyncLink("l", ("0",), "r", ("0",))],
        taps=[RealTap("l", ("1",), ("1",))],
    )


def test_net_routes_linked_moves_between_parties():
    net = net_of_two()
    assert run_net(net) == []  # 0.1 went to the sibling, not the real game


def test_net_taps_forward_to_the_real_game():
    net = StrategyNet(
        parties={"p": Emit(["1.0"])},
        taps=[RealTap("p", ("1",), ())],
    )
    assert net.next_move() == "0"


def test_net_observe_feeds_tapped_real_moves_back():
    inner = Silent()
    seen = []
    inner.observe = seen.append
    net = StrategyNet(parties={"p": inner}, taps=[RealTap("p", ("1",), ())])
    net.observe("10")
    assert seen == ["1.10"]


def test_event_meter_counts_routed_moves():
    with EventMeter() as meter:
        net = StrategyNet(
            parties={"p": Emit(["1.0", "1.1"])},
            taps=[RealTap("p", ("1",), ())],
        )
        run_net(net)
    assert meter.events == 2


def test_event_meter_is_inert_when_not_installed():
    meter = EventMeter()
    net = StrategyNet(
        parties={"p": Emit(["1.0"])}, taps=[RealTap("p", ("1",), ())]
    )
    run_net(net)
    assert meter.events == 0


# -- time accounting --------------------------------------------------------


def test_time_report_charges_thinking_periods_to_the_mover():
    report = time_report(
        [
            TimedLabmove(3, "T", "0"),
            TimedLabmove(5, "B", "1"),
            TimedLabmove(7, "T", "1"),
        ]
    )
    assert report == TimeReport(
        top_time=5,
        bot_time=2,
        periods=(
            (TimedLabmove(3, "T", "0"), 3),
            (TimedLabmove(5, "B", "1"), 2),
            (TimedLabmove(7, "T", "1"), 2),
        ),
    )


def test_time_report_rejects_decreasing_stamps():
    with pytest.raises(ValueError):
        time_report([TimedLabmove(3, "T", "0"), TimedLabmove(1, "B", "1")])


def test_prompt_moves_cost_nothing():
    # a reply stamped with the previous move's time has a zero period
    report = time_report([TimedLabmove(4, "T", "0"), TimedLabmove(4, "B", "1")])
    assert report.bot_time == 0
    assert report.time_of("T") == 4
