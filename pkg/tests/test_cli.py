"""The command-line surface: parsing, checking, proving, bundling, replay."""

import json

import pytest
from click.testing import CliRunner

from ptarith.cli import main

CENSUS_GAME = "(0 = 0 cand 0 = 1) -> (10 = 11 cand 10 = 10)"


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_parse_prints_the_canonical_rendering(runner):
    result = invoke(runner, "parse", "p -> q")
    assert result.exit_code == 0
    assert result.output.strip() == "~p v q"


def test_check_accepts_a_good_script(runner, tmp_path):
    path = tmp_path / "ok.clp"
    path.write_text("#system CL3\n1: T ; ax-log taut\n")
    result = invoke(runner, "check", str(path))
    assert result.exit_code == 0
    assert "accepted" in result.output


def test_check_exits_nonzero_on_rejection(runner, tmp_path):
    path = tmp_path / "bad.clp"
    path.write_text("#system CL3\n1: p ; ax-log taut\n")
    result = invoke(runner, "check", str(path))
    assert result.exit_code == 1
    assert "rejected" in result.output


def test_prove_emits_a_checkable_script(runner, tmp_path):
    result = invoke(runner, "prove", "call x.cex y.(p(x) -> p(y))")
    assert result.exit_code == 0
    path = tmp_path / "found.clp"
    path.write_text(result.output)
    assert invoke(runner, "check", str(path)).exit_code == 0


def test_prove_signals_exhaustion(runner):
    result = invoke(runner, "prove", "cex y.call x.(p(x) -> p(y))")
    assert result.exit_code == 2
    assert "exhausted" in result.output


def test_extract_play_and_sweep_round_trip(runner, tmp_path):
    bundle = tmp_path / "zersuc.json"
    result = invoke(
        runner,
        "extract",
        "src/ptarith/corpus/scripts/zersuc.clp",
        "-o",
        str(bundle),
    )
    assert result.exit_code == 0
    payload = json.loads(bundle.read_text())
    assert payload["name"] == "zersuc"
    result = invoke(runner, "play", str(bundle), "--bound", "2")
    assert result.exit_code == 0
    assert "verdict: TOP" in result.output
    result = invoke(runner, "sweep", str(bundle), "--bound-range", "1..2")
    assert result.exit_code == 0
    assert "all plays won" in result.output


def test_replay_adjudicates_a_recorded_transcript(runner, tmp_path):
    path = tmp_path / "run.txt"
    path.write_text("0 T 0.0\n1 B 1.1\n")
    result = invoke(runner, "replay", CENSUS_GAME, str(path), "--bound", "2")
    assert result.exit_code == 0
    assert "verdict: TOP" in result.output
    path.write_text("0 B 1.0\n")
    result = invoke(runner, "replay", CENSUS_GAME, str(path), "--bound", "2")
    assert "verdict: BOT" in result.output


def test_corpus_verify_reports_the_full_census(runner):
    result = invoke(runner, "corpus", "verify")
    assert result.exit_code == 0
    assert "accepted: 15/15 scripts, pa-obligations: 46" in result.output
