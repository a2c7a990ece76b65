#!/usr/bin/env python3
"""Play one interactive session against a compiled strategy, over the same
JSON API the browser UI uses.

The human plays the environment of `call x. call y.(y = x cor y != x)`:
they pick two constants, and the machine (compiled from the corpus proof
that equality is decidable) announces whether the constants are equal.
"""

import json
import threading
import urllib.request

from ptarith.interaction_runtime import serve


def post(port, payload):
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}/",
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


def show(state):
    print(f"  position : {state['formula']}")
    print(f"  legal    : {[e['label'] + ' ' + e['move'] for e in state['legal']]}")


def main():
    server = serve(port=0)
    port = server.server_address[1]
    threading.Thread(target=server.serve_forever, daemon=True).start()

    print("create a session: equality test at bound 2, machine = eqdec proof")
    state = post(
        port,
        {
            "op": "create",
            "formula": "call x.(call y.(y = x cor y != x))",
            "bound": 2,
            "corpus": "eqdec",
        },
    )
    sid = state["session"]
    show(state)

    for move in ("10", "11"):
        print(f"\nhuman picks {move}")
        state = post(port, {"op": "move", "session": sid, "move": move})
        show(state)

    print("\nan illegal entry is rejected, the game continues")
    reply = post(port, {"op": "move", "session": sid, "move": "1000"})
    print(f"  server   : {reply['error']}")

    print("\ntick until the machine has answered")
    while any(e["label"] == "T" for e in state["legal"]):
        state = post(port, {"op": "tick", "session": sid})
    show(state)

    state = post(port, {"op": "finish", "session": sid})
    print(f"\nverdict: {state['verdict']}  (times {state['times']})")
    server.shutdown()
    server.server_close()


if __name__ == "__main__":
    main()
