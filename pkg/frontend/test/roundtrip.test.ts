/**
 * End-to-end round trip against the real session server: a scripted session
 * plays a small two-choice game to completion, the menu is checked against
 * the server's legal list at every step, and the exported transcript is
 * replayed through the CLI, which must reach the identical verdict.
 */

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, httpPoster } from "../src/protocol.js";
import { SessionController } from "../src/session.js";

const REPO_ROOT = resolve(fileURLToPath(import.meta.url), "../../..");
const FORMULA = "(0 = 0 cand 0 = 1) -> (10 = 11 cand 10 = 10)";
const BOUND = 2;

let server: ChildProcess;
let api: ApiClient;
let scratch: string;

beforeAll(async () => {
  scratch = mkdtempSync(join(tmpdir(), "play-ui-"));
  server = spawn(
    "python3",
    ["-u", "-m", "ptarith.cli", "serve", "--port", "0", "--host", "127.0.0.1"],
    { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
  );
  const baseUrl = await new Promise<string>((resolveUrl, reject) => {
    let banner = "";
    server.stdout?.on("data", (chunk: Buffer) => {
      banner += chunk.toString();
      const match = banner.match(/session API on (http:\/\/[\d.]+:\d+\/)/);
      if (match) resolveUrl(match[1] as string);
    });
    server.on("error", reject);
    server.on("exit", (code) =>
      reject(new Error(`server exited early (code ${code})`)),
    );
  });
  server.removeAllListeners("exit");
  api = new ApiClient(httpPoster(baseUrl));
}, 30_000);

afterAll(() => {
  server?.kill();
  rmSync(scratch, { recursive: true, force: true });
});

/** CLI adjudication of a transcript file; returns the printed verdict. */
function replayVerdict(transcript: string): string {
  const file = join(scratch, `run-${Math.random().toString(36).slice(2)}.txt`);
  writeFileSync(file, transcript);
  const out = execFileSync(
    "python3",
    ["-m", "ptarith.cli", "replay", FORMULA, file, "--bound", String(BOUND)],
    { cwd: REPO_ROOT, encoding: "utf8" },
  );
  const match = out.match(/verdict: (\w+)/);
  if (!match) throw new Error(`no verdict in CLI output: ${out}`);
  return match[1] as string;
}

async function expectMenuMatchesServer(
  controller: SessionController,
): Promise<void> {
  const sid = controller.state?.session as string;
  expect(controller.menu()).toEqual(await api.legal(sid));
}

describe("browser session round trip", () => {
  it(
    "plays to completion; CLI replay of the export agrees",
    { timeout: 60_000 },
    async () => {
      const controller = new SessionController(api);
      await controller.start({ formula: FORMULA, bound: BOUND });
      await expectMenuMatchesServer(controller);

      // an off-menu move is rejected by the server; the session stays open
      const runBefore = [...(controller.state?.run ?? [])];
      await controller.choose("1000");
      expect(controller.rejection).toContain("illegal move");
      expect(controller.state?.run).toEqual(runBefore);
      await expectMenuMatchesServer(controller);

      // pick the menu's second consequent option, then let the clock settle
      const entry = controller
        .menu()
        .find((e) => e.label === "B" && e.move === "1.1");
      expect(entry).toBeDefined();
      await controller.choose(entry!.move);
      expect(controller.rejection).toBeNull();
      await expectMenuMatchesServer(controller);
      await controller.settle();
      await expectMenuMatchesServer(controller);

      const final = await controller.finish();
      expect(final.status).toBe("finished");
      expect(final.verdict).toBe("TOP");
      expect(final.times.B).toBe(0); // the human moved before the first tick

      const transcript = controller.exportTranscript();
      expect(transcript).toMatch(/^\d+ B 1\.1\n$/);
      expect(replayVerdict(transcript)).toBe(final.verdict);
    },
  );

  it(
    "a losing line replays to the same losing verdict",
    { timeout: 60_000 },
    async () => {
      const controller = new SessionController(api);
      await controller.start({ formula: FORMULA, bound: BOUND });
      await expectMenuMatchesServer(controller);
      await controller.choose("1.0"); // the false disjunct of the consequent
      await expectMenuMatchesServer(controller);
      const final = await controller.finish();
      expect(final.verdict).toBe("BOT");
      expect(replayVerdict(controller.exportTranscript())).toBe(final.verdict);
    },
  );
});
