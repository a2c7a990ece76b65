/**
 * Typed client for the JSON session API.
 *
 * The server is the single source of truth: every view the UI shows is a
 * field of a server response, and the only state kept here is the last
 * response. No game rule is ever evaluated on the client.
 */

export interface LegalEntry {
  label: "T" | "B";
  move: string;
}

export interface SessionState {
  session: string;
  status: "open" | "finished";
  clock: number;
  formula: string;
  initial: string;
  bound: number;
  legal: LegalEntry[];
  run: string[];
  times: { T: number; B: number };
  machine: string | null;
  verdict?: string;
}

/** Reply to an illegal human move: the game continues. */
export interface MoveRejection {
  error: string;
  legal: LegalEntry[];
}

export interface CreateRequest {
  formula: string;
  bound: number;
  assign?: Record<string, number>;
  /** play the machine side with the strategy from this bundled proof */
  corpus?: string;
  /** ... or from this proof script text */
  script?: string;
}

export type Poster = (payload: Record<string, unknown>) => Promise<unknown>;

export class ApiError extends Error {}

/** POST helper against the session endpoint; non-2xx bodies become errors. */
export function httpPoster(baseUrl: string): Poster {
  return async (payload) => {
    const response = await fetch(baseUrl, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    const body = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ApiError(String(body.error ?? response.statusText));
    }
    return body;
  };
}

export class ApiClient {
  constructor(private readonly post: Poster) {}

  create(request: CreateRequest): Promise<SessionState> {
    return this.post({ op: "create", ...request }) as Promise<SessionState>;
  }

  state(session: string): Promise<SessionState> {
    return this.post({ op: "state", session }) as Promise<SessionState>;
  }

  async legal(session: string): Promise<LegalEntry[]> {
    const reply = (await this.post({ op: "legal", session })) as {
      legal: LegalEntry[];
    };
    return reply.legal;
  }

  move(
    session: string,
    move: string,
    label: "T" | "B" = "B",
  ): Promise<SessionState | MoveRejection> {
    return this.post({ op: "move", session, move, label }) as Promise<
      SessionState | MoveRejection
    >;
  }

  tick(session: string): Promise<SessionState> {
    return this.post({ op: "tick", session }) as Promise<SessionState>;
  }

  finish(session: string): Promise<SessionState> {
    return this.post({ op: "finish", session }) as Promise<SessionState>;
  }
}

export function isRejection(
  reply: SessionState | MoveRejection,
): reply is MoveRejection {
  return "error" in reply;
}
