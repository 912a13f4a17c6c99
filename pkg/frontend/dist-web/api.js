export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
/** Thin JSON client over the game endpoints; fetch is injectable so tests
 * can run against a mocked service. */
export class GameClient {
    constructor(base, fetchImpl) {
        this.base = base;
        this.fetchImpl = fetchImpl;
    }
    async post(path, body) {
        const resp = await this.fetchImpl(this.base + path, {
            method: "POST",
            body: JSON.stringify(body ?? {}),
            headers: { "Content-Type": "application/json" },
        });
        const doc = (await resp.json());
        if (resp.status !== 200) {
            throw new ApiError(resp.status, String(doc["error"] ?? resp.status));
        }
        return doc;
    }
    async newGame(forms, p) {
        return (await this.post("/game/new", { forms, p }));
    }
    async state(session) {
        const resp = await this.fetchImpl(`${this.base}/game/${session}`);
        const doc = (await resp.json());
        if (resp.status !== 200) {
            throw new ApiError(resp.status, String(doc["error"] ?? resp.status));
        }
        return doc;
    }
    async move(session, move) {
        return (await this.post(`/game/${session}/move`, move));
    }
    async undo(session) {
        return (await this.post(`/game/${session}/undo`));
    }
    async hint(session) {
        return (await this.post(`/game/${session}/hint`));
    }
}
