"""JSON session API over local HTTP.

A single POST endpoint accepts `{"op": ..., ...}` requests:

    {"op": "create", "formula": <text>, "bound": <int>, "assign": {var: int}?,
     "script": <proof script text>?, "corpus": <script name>?}
        -> state; with "script"/"corpus" the machine side plays the strategy
           extracted from that accepted proof of the same formula
    {"op": "state", "session": <id>}            -> state
    {"op": "legal", "session": <id>}            -> {"legal": [...]}
    {"op": "move",  "session": <id>, "move": <move>, "label": "B"?}
        -> state, or {"error", "legal"} for an illegal move (rejected, the
           game continues)
    {"op": "tick",  "session": <id>}            -> state (machine may move)
    {"op": "finish","session": <id>}            -> state with verdict

Requests across sessions may run concurrently; each session serializes its
own mutations.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from ..formula_core import parse_formula
from ..game_engine import PositionGame, Valuation
from ..proof_checker import check, parse_script
from ..strategy_extractor import extract
from .session import SessionError, SessionStore


def _build_strategy(request: dict):
    text = request.get("script")
    corpus_name = request.get("corpus")
    if text is not None:
        script = parse_script(text, name=request.get("name", "session"))
        imports = _corpus_scripts()
        report = check(script, imports=imports)
        if not report.accepted:
            raise SessionError(
                f"script rejected at step {report.failed_step}: {report.reason}"
            )
        return extract(script, imports)
    if corpus_name is not None:
        scripts = _corpus_scripts()
        if corpus_name not in scripts:
            raise SessionError(f"unknown corpus script {corpus_name!r}")
        return extract(scripts[corpus_name], scripts)
    return None


def _corpus_scripts() -> dict:
    from ..corpus import load_corpus

    return load_corpus()


class SessionApi:
    """Transport-independent dispatcher, also usable directly in tests."""

    def __init__(self) -> None:
        self.store = SessionStore()

    def handle(self, request: dict) -> dict:
        op = request.get("op")
        if op == "create":
            formula = parse_formula(request["formula"])
            valuation = Valuation(
                int(request["bound"]),
                {k: int(v) for k, v in request.get("assign", {}).items()},
            )
            strategy = _build_strategy(request)
            if strategy is not None and strategy.formula != formula:
                raise SessionError("the proof script proves a different formula")
            session = self.store.create(PositionGame(formula, valuation), strategy)
            return session.state()
        sid = request.get("session")
        session = self.store.get(sid)
        with session.lock:
            if op == "state":
                return session.state()
            if op == "legal":
                return {"session": sid, "legal": session.legal()}
            if op == "move":
                return session.human_move(
                    request["move"], request.get("label", "B")
                )
            if op == "tick":
                return session.tick()
            if op == "finish":
                return session.finish()
        raise SessionError(f"unknown op {op!r}")


class _Handler(BaseHTTPRequestHandler):
    api: SessionApi  # set by serve()

    def _respond(self, code: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self) -> None:  # CORS preflight for the browser UI
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "POST, OPTIONS")
        self.end_headers()

    def do_POST(self) -> None:
        try:
            length = int(self.headers.get("Content-Length", 0))
            request = json.loads(self.rfile.read(length) or b"{}")
            self._respond(200, self.api.handle(request))
        except SessionError as err:
            self._respond(400, {"error": str(err)})
        except (KeyError, ValueError) as err:
            self._respond(400, {"error": f"bad request: {err}"})

    def log_message(self, *args) -> None:  # quiet by default
        pass


def serve(port: int = 8642, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Start the session API; returns the server (caller runs serve_forever
    or uses it as a handle to shut down)."""
    api = SessionApi()
    handler = type("Handler", (_Handler,), {"api": api})
    server = ThreadingHTTPServer((host, port), handler)
    server.api = api
    return server
