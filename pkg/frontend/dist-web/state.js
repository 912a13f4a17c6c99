import { ApiError } from "./api.js";
/** Client-side store: one session per store, every field mirrors the server.
 * Moves are optimistic only in that the pending move is exposed for UI
 * feedback; the authoritative state is always the reconciled response. */
export class GameStore {
    constructor(client) {
        this.client = client;
        this.state = {
            session: null,
            server: null,
            pendingMove: null,
            lastError: null,
        };
        this.listeners = [];
        this.hintCache = null;
    }
    subscribe(fn) {
        this.listeners.push(fn);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== fn);
        };
    }
    get current() {
        return this.state;
    }
    get cachedHint() {
        return this.hintCache;
    }
    emit(next) {
        this.state = { ...this.state, ...next };
        for (const fn of this.listeners)
            fn(this.state);
    }
    async newGame(forms, p) {
        const { session, state } = await this.client.newGame(forms, p);
        this.hintCache = null;
        this.emit({ session, server: state, pendingMove: null, lastError: null });
    }
    async submitMove(move) {
        if (!this.state.session)
            throw new Error("no session");
        this.emit({ pendingMove: move, lastError: null });
        try {
            const server = await this.client.move(this.state.session, move);
            this.hintCache = null;
            this.emit({ server, pendingMove: null });
            return true;
        }
        catch (err) {
            // illegal moves surface the service diagnostic inline and leave the
            // reconciled state untouched
            const message = err instanceof ApiError ? err.message : String(err);
            this.emit({ pendingMove: null, lastError: message });
            return false;
        }
    }
    async undo() {
        if (!this.state.session)
            throw new Error("no session");
        const server = await this.client.undo(this.state.session);
        this.hintCache = null;
        this.emit({ server, lastError: null });
    }
    async requestHint() {
        if (!this.state.session)
            throw new Error("no session");
        const hint = await this.client.hint(this.state.session);
        this.hintCache = hint;
        return hint;
    }
    async applyHint() {
        const hint = this.hintCache ?? (await this.requestHint());
        if (!hint.move)
            return false;
        return this.submitMove(hint.move);
    }
    /** Served facts the panels bind to; no client-side arithmetic. */
    get status() {
        return this.state.server?.status ?? "NoSession";
    }
    get exponentLog2() {
        return this.state.server?.exponent.log2_denominator ?? 0;
    }
}
