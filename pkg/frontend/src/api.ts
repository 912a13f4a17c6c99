import { FetchLike, Hint, Move, ServedState } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

/** Thin JSON client over the game endpoints; fetch is injectable so tests
 * can run against a mocked service. */
export class GameClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike,
  ) {}

  private async post(path: string, body?: unknown): Promise<unknown> {
    const resp = await this.fetchImpl(this.base + path, {
      method: "POST",
      body: JSON.stringify(body ?? {}),
      headers: { "Content-Type": "application/json" },
    });
    const doc = (await resp.json()) as Record<string, unknown>;
    if (resp.status !== 200) {
      throw new ApiError(resp.status, String(doc["error"] ?? resp.status));
    }
    return doc;
  }

  async newGame(forms: number[][], p: number): Promise<{ session: string; state: ServedState }> {
    return (await this.post("/game/new", { forms, p })) as {
      session: string;
      state: ServedState;
    };
  }

  async state(session: string): Promise<ServedState> {
    const resp = await this.fetchImpl(`${this.base}/game/${session}`);
    const doc = (await resp.json()) as Record<string, unknown>;
    if (resp.status !== 200) {
      throw new ApiError(resp.status, String(doc["error"] ?? resp.status));
    }
    return doc as unknown as ServedState;
  }

  async move(session: string, move: Move): Promise<ServedState> {
    return (await this.post(`/game/${session}/move`, move)) as unknown as ServedState;
  }

  async undo(session: string): Promise<ServedState> {
    return (await this.post(`/game/${session}/undo`)) as unknown as ServedState;
  }

  async hint(session: string): Promise<Hint> {
    return (await this.post(`/game/${session}/hint`)) as unknown as Hint;
  }
}
