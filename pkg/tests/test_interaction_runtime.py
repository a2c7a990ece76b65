"""The play loop, scripted and random adversaries, and the session API."""

import json
import threading
import urllib.request

import pytest

from ptarith.formula_core import parse_formula
from ptarith.game_engine import (
    Interpretation,
    PositionGame,
    STANDARD,
    VERDICT_BOT,
    VERDICT_TOP,
    standard_valuation,
)
from ptarith.interaction_runtime import (
    Counterbehavior,
    RandomEnvironment,
    SessionApi,
    SessionError,
    enumerate_counterbehaviors,
    parse_counterbehavior,
    play,
    serve,
)
from ptarith.proof_checker import parse_script
from ptarith.strategy_extractor import extract


def compiled(text, name="case"):
    return extract(parse_script(text, name=name))


#: decides the otherwise-uninterpreted letter p so plays can be adjudicated
EVEN_P = Interpretation(elem={"p": lambda a: a % 2 == 0})


@pytest.fixture(scope="module")
def naming_zero():
    # the machine must name the constant zero
    return compiled("#system PTA\n1: cex x.(x = 0) ; ax-x8\n")


@pytest.fixture(scope="module")
def parity(corpus_module):
    return extract(corpus_module["depswap"])


@pytest.fixture(scope="module")
def corpus_module():
    from ptarith.corpus import load_corpus

    return load_corpus()


# -- counterbehaviors -------------------------------------------------------


def test_parse_counterbehavior_reads_ticks_and_prompts():
    cb = parse_counterbehavior("# adversary\n3 0\n* 1.10\n")
    assert cb.moves == (("0", 3), ("1.10", None))
    assert not cb.prompt_only
    assert Counterbehavior.prompt(["0"]).prompt_only


def test_counterbehavior_rejects_decreasing_ticks():
    with pytest.raises(ValueError):
        Counterbehavior((("0", 5), ("1", 3)))


def test_enumerate_counterbehaviors_covers_all_env_choices():
    g = PositionGame(
        parse_formula("0 = 0 cand 0 = 1"), standard_valuation(1), STANDARD
    )
    cbs = list(enumerate_counterbehaviors(g))
    seqs = {tuple(m for m, _ in cb.moves) for cb in cbs}
    assert seqs == {(), ("0",), ("1",)}


# -- the play loop ----------------------------------------------------------


def test_play_wins_by_naming_the_witness(naming_zero):
    t = play(naming_zero, Counterbehavior(), standard_valuation(1))
    assert t.verdict == VERDICT_TOP
    assert [m.move for m in t.moves] == ["0"]


def test_play_mirrors_prompt_moves(parity):
    t = play(parity, Counterbehavior.prompt(["1"]), standard_valuation(1), interp=EVEN_P)
    assert t.verdict == VERDICT_TOP
    # the environment instantiated x := 1 and the machine answered y := 1
    assert [(m.label, m.move) for m in t.moves] == [("B", "1"), ("T", "1")]


def test_prompt_moves_are_stamped_with_the_previous_time(parity):
    t = play(parity, Counterbehavior.prompt(["1"]), standard_valuation(1), interp=EVEN_P)
    assert t.times.bot_time == 0


def test_illegal_timed_delivery_loses_for_the_environment(naming_zero):
    # slot 1 does not exist in this game
    t = play(naming_zero, Counterbehavior((("1.0", 1),)), standard_valuation(1))
    assert t.verdict == VERDICT_TOP


def test_scripted_moves_arrive_at_their_tick(parity):
    t = play(parity, Counterbehavior((("1", 4),)), standard_valuation(1), interp=EVEN_P)
    assert t.verdict == VERDICT_TOP
    env_moves = [m for m in t.moves if m.label == "B"]
    assert env_moves[0].time == 4


def test_random_environment_is_seed_reproducible(parity):
    a = play(parity, 7, standard_valuation(2), interp=EVEN_P)
    b = play(parity, 7, standard_valuation(2), interp=EVEN_P)
    assert a.run == b.run
    assert a.verdict == b.verdict == VERDICT_TOP


def test_random_environment_only_plays_legal_moves():
    g = PositionGame(
        parse_formula("0 = 0 cand 0 = 1"), standard_valuation(1), STANDARD
    )
    env = RandomEnvironment(seed=3)
    due = env.due(0, g)
    assert all(move in {"0", "1"} for move, _ in due)


def test_losing_strategy_is_adjudicated_bot():
    # the machine picks the false disjunct
    cs = compiled(
        "#system PTA\n1: 0 = 0 ; ax-log fol\n2: 0 = 1 cor 0 = 0 ; cor-choose 1 - 1\n"
    )
    bad = compiled(
        "#system PTA\n1: 0 = 1 v 0 = 0 ; ax-log fol\n"
    )
    t = play(cs, Counterbehavior(), standard_valuation(1))
    assert t.verdict == VERDICT_TOP
    t = play(bad, Counterbehavior(), standard_valuation(1))
    assert t.verdict == VERDICT_TOP  # staying silent also wins here


# -- sessions ---------------------------------------------------------------


def api_create(api, **extra):
    request = {"op": "create", "formula": "0 = 0 cand 0 = 1", "bound": 1}
    request.update(extra)
    return api.handle(request)


def test_session_create_reports_initial_state():
    api = SessionApi()
    state = api_create(api)
    assert state["status"] == "open"
    assert state["formula"] == "0 = 0 cand 0 = 1"
    assert {entry["move"] for entry in state["legal"]} == {"0", "1"}


def test_session_move_and_finish():
    api = SessionApi()
    sid = api_create(api)["session"]
    state = api.handle({"op": "move", "session": sid, "move": "1"})
    assert state["formula"] == "0 = 1"
    state = api.handle({"op": "finish", "session": sid})
    assert state["status"] == "finished"
    assert state["verdict"] == VERDICT_BOT


def test_session_rejects_illegal_moves_without_ending_the_game():
    api = SessionApi()
    sid = api_create(api)["session"]
    reply = api.handle({"op": "move", "session": sid, "move": "7"})
    assert "error" in reply
    assert {entry["move"] for entry in reply["legal"]} == {"0", "1"}
    assert api.handle({"op": "state", "session": sid})["status"] == "open"


def test_session_machine_strategy_moves_on_tick():
    api = SessionApi()
    state = api_create(
        api,
        formula="cex x.(x = 0)",
        script="#system PTA\n1: cex x.(x = 0) ; ax-x8\n",
    )
    sid = state["session"]
    state = api.handle({"op": "tick", "session": sid})
    assert state["run"] == ["1 T 0"]
    assert state["formula"] == "0 = 0"


def test_session_unknown_id_raises():
    api = SessionApi()
    with pytest.raises(SessionError):
        api.handle({"op": "state", "session": "nope"})


def test_finished_session_refuses_further_moves():
    api = SessionApi()
    sid = api_create(api)["session"]
    api.handle({"op": "finish", "session": sid})
    with pytest.raises(SessionError):
        api.handle({"op": "move", "session": sid, "move": "0"})


# -- the HTTP server --------------------------------------------------------


def test_serve_answers_json_over_http():
    server = serve(port=0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        def post(payload):
            req = urllib.request.Request(
                f"http://127.0.0.1:{port}/",
                data=json.dumps(payload).encode(),
                headers={"Content-Type": "application/json"},
            )
            try:
                with urllib.request.urlopen(req) as resp:
                    return resp.status, json.loads(resp.read())
            except urllib.error.HTTPError as err:
                return err.code, json.loads(err.read())

        status, state = post(
            {"op": "create", "formula": "0 = 0 cand 0 = 1", "bound": 1}
        )
        assert status == 200
        sid = state["session"]
        status, state = post({"op": "move", "session": sid, "move": "0"})
        assert status == 200 and state["formula"] == "0 = 0"
        status, reply = post({"op": "state", "session": "missing"})
        assert status == 400 and "error" in reply
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
