/**
 * Session controller: the state machine behind the play console.
 *
 * All transitions go through the server; the controller's whole state is
 * the server's last reply plus the last rejection notice. The move menu is
 * the server's legal list verbatim.
 */

import {
  ApiClient,
  CreateRequest,
  LegalEntry,
  SessionState,
  isRejection,
} from "./protocol.js";

/** ticks to keep polling after the machine goes quiet */
const QUIET_TICKS = 2;
/** hard cap on polling, mirroring the play loop's tick cap */
const MAX_TICKS = 10_000;

export class SessionController {
  state: SessionState | null = null;
  rejection: string | null = null;

  constructor(private readonly api: ApiClient) {}

  private get sid(): string {
    if (this.state === null) throw new Error("no session started");
    return this.state.session;
  }

  async start(request: CreateRequest): Promise<SessionState> {
    this.state = await this.api.create(request);
    this.rejection = null;
    return this.state;
  }

  /** The move menu: the server's legal list, verbatim. */
  menu(): LegalEntry[] {
    return this.state?.legal ?? [];
  }

  get finished(): boolean {
    return this.state?.status === "finished";
  }

  /**
   * Submit a human move. An illegal move is rejected by the server and
   * surfaced as a notice; the session stays open.
   */
  async choose(move: string, label: "T" | "B" = "B"): Promise<SessionState> {
    const reply = await this.api.move(this.sid, move, label);
    if (isRejection(reply)) {
      this.rejection = reply.error;
      // refresh so the menu shown with the notice is the server's current list
      this.state = await this.api.state(this.sid);
      return this.state;
    }
    this.rejection = null;
    this.state = reply;
    return this.state;
  }

  /**
   * Advance the clock until the machine has been quiet for a grace
   * window (or the session finishes). Machine replies arrive as run
   * entries; the client only watches the run length grow.
   */
  async settle(): Promise<SessionState> {
    let quiet = 0;
    for (let i = 0; i < MAX_TICKS && quiet < QUIET_TICKS; i++) {
      const before = this.state?.run.length ?? 0;
      this.state = await this.api.tick(this.sid);
      if (this.state.status === "finished") break;
      quiet = this.state.run.length > before ? 0 : quiet + 1;
    }
    return this.state as SessionState;
  }

  async finish(): Promise<SessionState> {
    if (!this.finished) {
      this.state = await this.api.finish(this.sid);
    }
    return this.state as SessionState;
  }

  /** The run as a replayable transcript: `<time> <T|B> <move>` lines. */
  exportTranscript(): string {
    return (this.state?.run ?? []).join("\n") + "\n";
  }
}
