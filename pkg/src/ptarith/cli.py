"""Command-line entry point.

Subcommands: parse, check, prove, extract, play, sweep, bench, serve,
corpus.  Compiled strategies travel as JSON bundles carrying the accepted
proof script and its hash; play/sweep/bench re-check the script before
extracting, so a bundle is a convenience, never a trusted artifact.
"""

from __future__ import annotations

import hashlib
import json
import pathlib
import sys

import click

from .formula_core import parse_formula, print_formula
from .game_engine import (
    BOT_LABEL,
    PositionGame,
    TOP_LABEL,
    VERDICT_TOP,
    Valuation,
    adjudicate,
    legal_moves,
    parse_transcript,
)
from .interaction_runtime import (
    Counterbehavior,
    enumerate_counterbehaviors,
    parse_counterbehavior,
    play as run_play,
    serve as make_server,
)
from .proof_checker import check as check_script, parse_script
from .proof_search import DEFAULT_BUDGET, Exhausted, SearchBudget, prove as search_proof
from .strategy_extractor import CompiledStrategy, extract as extract_strategy


@click.group()
def main() -> None:
    """Bounded-arithmetic game logics: proofs, strategies, play."""


# -- helpers ----------------------------------------------------------------


def _read(path: str) -> str:
    return pathlib.Path(path).read_text()


def _corpus() -> dict:
    from .corpus import load_corpus

    return load_corpus()


def _load_script(path: str, imports: tuple[str, ...]):
    """Parse a script; imports resolve against the bundled corpus plus any
    name=path overrides."""
    env = dict(_corpus())
    for entry in imports:
        name, _, ipath = entry.partition("=")
        if not ipath:
            raise click.UsageError("--import takes name=path")
        env[name] = parse_script(_read(ipath), name=name)
    text = _read(path)
    name = pathlib.Path(path).stem
    return parse_script(text, name=name), env


def _compiled(path: str, imports: tuple[str, ...]) -> CompiledStrategy:
    """Accept a proof script or a bundle and compile its strategy."""
    if path.endswith(".json"):
        bundle = json.loads(_read(path))
        script = parse_script(bundle["script"], name=bundle.get("name", "bundle"))
        env = dict(_corpus())
    else:
        script, env = _load_script(path, imports)
    report = check_script(script, imports=env)
    if not report.accepted:
        raise click.ClickException(
            f"script rejected at step {report.failed_step}: {report.reason}"
        )
    return extract_strategy(script, env)


def _valuation(bound: int, assign: tuple[str, ...]) -> Valuation:
    values = {}
    for entry in assign:
        name, _, value = entry.partition("=")
        if not value:
            raise click.UsageError("--assign takes var=value")
        values[name] = int(value)
    return Valuation(bound, values)


def _print_transcript(t) -> None:
    for line in str(t).splitlines():
        click.echo(line)
    click.echo(f"verdict: {t.verdict}")
    click.echo(f"times: T={t.times.top_time} B={t.times.bot_time}")
    if t.note:
        click.echo(f"note: {t.note}")


# -- formulas and proofs ----------------------------------------------------


@main.command(name="parse")
@click.argument("formula")
def parse_cmd(formula: str) -> None:
    """Parse a formula and print its canonical rendering."""
    click.echo(print_formula(parse_formula(formula)))


@main.command(name="check")
@click.argument("script", type=click.Path(exists=True))
@click.option("--import", "imports", multiple=True, help="name=path of an importable script")
def check_cmd(script: str, imports: tuple[str, ...]) -> None:
    """Verify a proof script; exit 0 iff accepted."""
    parsed, env = _load_script(script, imports)
    report = check_script(parsed, imports=env)
    click.echo(report.to_text())
    if not report.accepted:
        sys.exit(1)


@main.command(name="prove")
@click.argument("formula")
@click.option("--system", default="CL3", type=click.Choice(["CL3", "CL4"]))
@click.option("--depth", default=DEFAULT_BUDGET.max_depth, show_default=True)
@click.option("--fresh", default=DEFAULT_BUDGET.max_fresh, show_default=True)
@click.option("--tableau", default=DEFAULT_BUDGET.tableau_nodes, show_default=True)
@click.option("--wall", default=DEFAULT_BUDGET.wall_seconds, show_default=True)
@click.option("--trace", is_flag=True, help="show the search trace on failure")
def prove_cmd(formula, system, depth, fresh, tableau, wall, trace) -> None:
    """Search for a proof; print the script or the exhaustion report."""
    budget = SearchBudget(depth, fresh, tableau, wall)
    result = search_proof(parse_formula(formula), system, budget)
    if isinstance(result, Exhausted):
        click.echo(f"exhausted: no {system} proof found within budget")
        if trace:
            for line in result.trace:
                click.echo(line)
        sys.exit(2)
    click.echo(f"#system {result.system}")
    for step in result.steps:
        args = " ".join(step.args)
        kwargs = " ".join(f"{k}={v}" for k, v in step.kwargs.items())
        tail = " ".join(x for x in (step.rule, args, kwargs) if x)
        click.echo(f"{step.id}: {print_formula(step.formula)} ; {tail}")


# -- strategies -------------------------------------------------------------


@main.command(name="extract")
@click.argument("script", type=click.Path(exists=True))
@click.option("--import", "imports", multiple=True)
@click.option("-o", "--output", type=click.Path(), required=True)
def extract_cmd(script: str, imports: tuple[str, ...], output: str) -> None:
    """Compile an accepted script into a strategy bundle."""
    compiled = _compiled(script, imports)
    text = _read(script)
    bundle = {
        "name": compiled.name,
        "system": compiled.system,
        "formula": print_formula(compiled.formula),
        "script": text,
        "sha256": hashlib.sha256(text.encode()).hexdigest(),
    }
    pathlib.Path(output).write_text(json.dumps(bundle, indent=2) + "\n")
    click.echo(f"wrote {output} ({compiled.name}: {bundle['formula']})")


@main.command(name="play")
@click.argument("bundle", type=click.Path(exists=True))
@click.option("--bound", required=True, type=int)
@click.option("--assign", multiple=True, help="var=value valuation entries")
@click.option("--import", "imports", multiple=True)
@click.option("--env", "env_file", type=click.Path(exists=True), help="counterbehavior file")
@click.option("--random", "seed", type=int, help="seeded random adversary")
@click.option("--interactive", is_flag=True, help="play the environment by hand")
def play_cmd(bundle, bound, assign, imports, env_file, seed, interactive) -> None:
    """Play a compiled strategy against an environment."""
    compiled = _compiled(bundle, imports)
    e = _valuation(bound, assign)
    if interactive:
        _interactive_play(compiled, e)
        return
    if env_file is not None:
        adversary = parse_counterbehavior(_read(env_file))
    elif seed is not None:
        adversary = seed
    else:
        adversary = Counterbehavior()
    _print_transcript(run_play(compiled, adversary, e))


def _interactive_play(compiled: CompiledStrategy, e: Valuation) -> None:
    """Human plays the environment on stdin; illegal entries are rejected."""
    from .game_engine import IllegalMoveError, Labmove, adjudicate, apply_labmove
    from .strategy_extractor import time_report
    from .game_engine import TimedLabmove

    pos = PositionGame(compiled.formula, e)
    strat = compiled.instantiate(e)
    moves: list[TimedLabmove] = []
    tick = 0
    while True:
        m = strat.next_move()
        if m is not None:
            tick += 1
            moves.append(TimedLabmove(tick, TOP_LABEL, m))
            pos = apply_labmove(pos, Labmove(TOP_LABEL, m))
            click.echo(f"machine: {m}   position: {print_formula(pos.formula)}")
            continue
        options = [mv for lbl, mv, _ in legal_moves(pos) if lbl == BOT_LABEL]
        if not options:
            break
        entry = click.prompt(
            f"your move ({', '.join(options)} or 'pass')", default="pass"
        )
        if entry == "pass":
            break
        tick += 1
        try:
            pos = apply_labmove(pos, Labmove(BOT_LABEL, entry))
        except IllegalMoveError as err:
            click.echo(f"rejected: {err.reason}; legal: {', '.join(options)}")
            continue
        moves.append(TimedLabmove(tick, BOT_LABEL, entry))
        strat.observe(entry)
    run = tuple(tlm.labmove() for tlm in moves)
    verdict = adjudicate(PositionGame(compiled.formula, e), run)
    report = time_report(moves)
    click.echo(f"verdict: {verdict}  times: T={report.top_time} B={report.bot_time}")


@main.command(name="replay")
@click.argument("formula")
@click.argument("transcript", type=click.Path(exists=True))
@click.option("--bound", required=True, type=int)
@click.option("--assign", multiple=True, help="var=value valuation entries")
def replay_cmd(formula: str, transcript: str, bound: int, assign) -> None:
    """Adjudicate a recorded transcript of the given game.

    The transcript file holds one `<time> <T|B> <move>` line per move, the
    format in which plays and sessions export their runs.
    """
    from .strategy_extractor import time_report

    g = PositionGame(parse_formula(formula), _valuation(bound, assign))
    moves = parse_transcript(_read(transcript))
    verdict = adjudicate(g, tuple(tlm.labmove() for tlm in moves))
    report = time_report(moves)
    click.echo(f"verdict: {verdict}")
    click.echo(f"times: T={report.top_time} B={report.bot_time}")


@main.command(name="sweep")
@click.argument("bundle", type=click.Path(exists=True))
@click.option("--bound-range", default="1..2", show_default=True, help="like 2..5")
@click.option("--assign", multiple=True)
@click.option("--import", "imports", multiple=True)
@click.option("--exhaustive/--prompt-only", default=True,
              help="exhaustive runs prompt and non-prompt schedules")
def sweep_cmd(bundle, bound_range, assign, imports, exhaustive) -> None:
    """Play every enumerated counterbehavior; summarize the verdicts."""
    compiled = _compiled(bundle, imports)
    lo, _, hi = bound_range.partition("..")
    bounds = range(int(lo), int(hi or lo) + 1)
    failures = 0
    for b in bounds:
        e = _valuation(b, assign)
        g0 = PositionGame(compiled.formula, e)
        tally: dict[str, int] = {}
        modes = (True, False) if exhaustive else (True,)
        for prompt in modes:
            for cb in enumerate_counterbehaviors(g0, prompt_only=prompt):
                verdict = run_play(compiled, cb, e).verdict
                tally[verdict] = tally.get(verdict, 0) + 1
                if verdict != VERDICT_TOP:
                    failures += 1
        summary = " ".join(f"{k}={v}" for k, v in sorted(tally.items()))
        click.echo(f"bound {b}: {summary}")
    if failures:
        raise click.ClickException(f"{failures} non-winning plays")
    click.echo("all plays won")


@main.command(name="bench")
@click.argument("bundle", type=click.Path(exists=True))
@click.option("--bound-range", default="2..10", show_default=True)
@click.option("--assign", multiple=True)
@click.option("--import", "imports", multiple=True)
@click.option("--degree", default=3, show_default=True)
def bench_cmd(bundle, bound_range, assign, imports, degree) -> None:
    """Strategy work against a stress adversary, with a polynomial fit.

    Work is the number of internally routed moves, which (unlike the handful
    of visible moves) tracks the computation the strategy performs."""
    import numpy as np

    from .strategy_extractor import EventMeter

    compiled = _compiled(bundle, imports)
    lo, _, hi = bound_range.partition("..")
    bounds = list(range(int(lo), int(hi or lo) + 1))
    counts = []
    for b in bounds:
        e = _valuation(b, assign)
        with EventMeter() as meter:
            t = run_play(compiled, _StressEnvironment(), e)
        counts.append(meter.events)
        top_moves = sum(1 for tlm in t.moves if tlm.label == TOP_LABEL)
        click.echo(
            f"bound {b}: {meter.events} routed events, {top_moves} machine "
            f"moves, {t.ticks} ticks, {t.verdict}"
        )
    coeffs = np.polyfit(bounds, counts, deg=min(degree, len(bounds) - 1))
    fitted = np.polyval(coeffs, bounds)
    residual = float(np.max(np.abs(fitted - counts) / np.maximum(counts, 1)))
    click.echo(
        f"degree-{min(degree, len(bounds) - 1)} fit coefficients: "
        + " ".join(f"{c:.4g}" for c in coeffs)
    )
    click.echo(f"max relative residual: {residual:.3f}")


class _StressEnvironment:
    """Deterministic work-maximizing adversary: whenever the machine is
    quiet, resolve one environment choice -- the all-ones constant one bit
    short of the bound for a constant choice (so arithmetic on it still fits
    the bound), the last component for a finite choice."""

    def due(self, tick, position):
        for lbl, mv, _ in reversed(legal_moves(position)):
            if lbl != BOT_LABEL:
                continue
            b = position.valuation.bound
            node_moves = [m for l2, m, _ in legal_moves(position)
                          if l2 == BOT_LABEL and
                          m.rsplit(".", 1)[:-1] == mv.rsplit(".", 1)[:-1]]
            if len(node_moves) > 2:  # a constant choice: pick 2^(b-1) - 1
                want = format((1 << (b - 1)) - 1 if b > 1 else 0, "b")
                prefix = mv.rsplit(".", 1)[:-1]
                chosen = ".".join(prefix + [want]) if prefix else want
                return [(chosen, False)] if chosen in node_moves else [(mv, False)]
            return [(mv, False)]
        return []

    def spent(self, position):
        return not any(lbl == BOT_LABEL for lbl, _, _ in legal_moves(position))


# -- services ---------------------------------------------------------------


@main.command(name="serve")
@click.option("--port", default=8642, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve_cmd(port: int, host: str) -> None:
    """Run the JSON session API."""
    server = make_server(port=port, host=host)
    click.echo(f"session API on http://{host}:{server.server_address[1]}/")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()


@main.group(name="corpus")
def corpus_group() -> None:
    """The bundled proof corpus."""


@corpus_group.command(name="list")
def corpus_list() -> None:
    for name, script in sorted(_corpus().items()):
        click.echo(f"{name}: {script.system}, {len(script.steps)} steps, "
                   f"{print_formula(script.theorem)}")


@corpus_group.command(name="verify")
def corpus_verify() -> None:
    """Check every bundled script; exit 0 iff all accepted."""
    from .corpus import load_corpus, verify_corpus

    reports, summary = verify_corpus(load_corpus())
    click.echo(summary)
    if any(not r.accepted for r in reports.values()):
        sys.exit(1)


if __name__ == "__main__":
    main()
