import { ApiError, GameClient } from "./api.js";
import { Hint, Move, ServedState, UiGameState } from "./types.js";

export type Listener = (state: UiGameState) => void;

/** Client-side store: one session per store, every field mirrors the server.
 * Moves are optimistic only in that the pending move is exposed for UI
 * feedback; the authoritative state is always the reconciled response. */
export class GameStore {
  private state: UiGameState = {
    session: null,
    server: null,
    pendingMove: null,
    lastError: null,
  };
  private listeners: Listener[] = [];
  private hintCache: Hint | null = null;

  constructor(private readonly client: GameClient) {}

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  get current(): UiGameState {
    return this.state;
  }

  get cachedHint(): Hint | null {
    return this.hintCache;
  }

  private emit(next: Partial<UiGameState>): void {
    this.state = { ...this.state, ...next };
    for (const fn of this.listeners) fn(this.state);
  }

  async newGame(forms: number[][], p: number): Promise<void> {
    const { session, state } = await this.client.newGame(forms, p);
    this.hintCache = null;
    this.emit({ session, server: state, pendingMove: null, lastError: null });
  }

  async submitMove(move: Move): Promise<boolean> {
    if (!this.state.session) throw new Error("no session");
    this.emit({ pendingMove: move, lastError: null });
    try {
      const server = await this.client.move(this.state.session, move);
      this.hintCache = null;
      this.emit({ server, pendingMove: null });
      return true;
    } catch (err) {
      // illegal moves surface the service diagnostic inline and leave the
      // reconciled state untouched
      const message = err instanceof ApiError ? err.message : String(err);
      this.emit({ pendingMove: null, lastError: message });
      return false;
    }
  }

  async undo(): Promise<void> {
    if (!this.state.session) throw new Error("no session");
    const server = await this.client.undo(this.state.session);
    this.hintCache = null;
    this.emit({ server, lastError: null });
  }

  async requestHint(): Promise<Hint> {
    if (!this.state.session) throw new Error("no session");
    const hint = await this.client.hint(this.state.session);
    this.hintCache = hint;
    return hint;
  }

  async applyHint(): Promise<boolean> {
    const hint = this.hintCache ?? (await this.requestHint());
    if (!hint.move) return false;
    return this.submitMove(hint.move);
  }

  /** Served facts the panels bind to; no client-side arithmetic. */
  get status(): string {
    return this.state.server?.status ?? "NoSession";
  }

  get exponentLog2(): number {
    return this.state.server?.exponent.log2_denominator ?? 0;
  }
}
