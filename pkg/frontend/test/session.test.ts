import { describe, expect, it } from "vitest";

import {
  ApiClient,
  LegalEntry,
  Poster,
  SessionState,
} from "../src/protocol.js";
import { SessionController } from "../src/session.js";

/**
 * Scripted stand-in for the server. It holds canned state and replays it;
 * no game rule lives here, mirroring the production split where the client
 * never derives state either.
 */
class FakeServer {
  calls: string[] = [];
  legal: LegalEntry[] = [
    { label: "T", move: "0.0" },
    { label: "B", move: "1.0" },
    { label: "B", move: "1.1" },
  ];
  run: string[] = [];
  clock = 0;
  status: "open" | "finished" = "open";
  verdict: string | undefined;
  rejectMoves = new Set<string>();
  /** clock values at which a canned machine reply is appended */
  machineMovesAt = new Map<number, string>();

  private state(): SessionState {
    return {
      session: "s1",
      status: this.status,
      clock: this.clock,
      formula: "whatever the server says",
      initial: "whatever the server says",
      bound: 2,
      legal: [...this.legal],
      run: [...this.run],
      times: { T: 0, B: 0 },
      machine: null,
      ...(this.verdict === undefined ? {} : { verdict: this.verdict }),
    };
  }

  poster: Poster = async (payload) => {
    const op = String(payload.op);
    this.calls.push(op);
    if (op === "create" || op === "state") return this.state();
    if (op === "move") {
      const move = String(payload.move);
      if (this.rejectMoves.has(move)) {
        return { error: `illegal move: ${move}`, legal: [...this.legal] };
      }
      this.run.push(`${this.clock} B ${move}`);
      return this.state();
    }
    if (op === "tick") {
      this.clock += 1;
      const reply = this.machineMovesAt.get(this.clock);
      if (reply !== undefined) this.run.push(`${this.clock} T ${reply}`);
      return this.state();
    }
    if (op === "finish") {
      this.status = "finished";
      this.verdict = "TOP";
      return this.state();
    }
    throw new Error(`unexpected op ${op}`);
  };
}

function controllerOver(server: FakeServer): SessionController {
  return new SessionController(new ApiClient(server.poster));
}

describe("SessionController", () => {
  it("exposes the server's legal list verbatim as the menu", async () => {
    const server = new FakeServer();
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    expect(controller.menu()).toEqual(server.legal);
  });

  it("keeps a rejected move as a notice and refreshes state", async () => {
    const server = new FakeServer();
    server.rejectMoves.add("1000");
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    await controller.choose("1000");
    expect(controller.rejection).toContain("illegal move");
    expect(controller.state?.run).toEqual([]);
    // the refresh after a rejection goes back to the server
    expect(server.calls).toEqual(["create", "move", "state"]);
  });

  it("clears the notice once a move is accepted", async () => {
    const server = new FakeServer();
    server.rejectMoves.add("1000");
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    await controller.choose("1000");
    await controller.choose("1.1");
    expect(controller.rejection).toBeNull();
    expect(controller.state?.run).toEqual(["0 B 1.1"]);
  });

  it("settles by ticking until the machine goes quiet", async () => {
    const server = new FakeServer();
    server.machineMovesAt.set(1, "0.1");
    server.machineMovesAt.set(2, "0.0");
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    await controller.settle();
    // two machine replies, then the quiet window (2 idle ticks)
    expect(controller.state?.run).toEqual(["1 T 0.1", "2 T 0.0"]);
    expect(controller.state?.clock).toBe(4);
  });

  it("stops settling as soon as the session finishes", async () => {
    const server = new FakeServer();
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    server.status = "finished";
    server.verdict = "BOT";
    await controller.settle();
    expect(server.calls.filter((op) => op === "tick")).toHaveLength(1);
    expect(controller.finished).toBe(true);
  });

  it("finish fetches the verdict exactly once", async () => {
    const server = new FakeServer();
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    const final = await controller.finish();
    expect(final.verdict).toBe("TOP");
    await controller.finish(); // already finished: no second request
    expect(server.calls.filter((op) => op === "finish")).toHaveLength(1);
  });

  it("exports the server's run lines as a transcript", async () => {
    const server = new FakeServer();
    server.machineMovesAt.set(1, "0.1");
    const controller = controllerOver(server);
    await controller.start({ formula: "x", bound: 2 });
    await controller.choose("1.1");
    await controller.settle();
    expect(controller.exportTranscript()).toBe("0 B 1.1\n1 T 0.1\n");
  });
});
