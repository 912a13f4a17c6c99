import { FetchLike, Move, ServedState, StepDoc } from "./types.js";

/** In-memory stand-in for the session service, mirroring its JSON shapes.
 * Enough behaviour for the client tests: one collinear-triple system whose
 * hint is the skew endgame, CS moves that split the graph, undo, and 422
 * diagnostics for illegal moves. */

interface MockSession {
  state: ServedState;
  undoStack: ServedState[];
}

const clone = <T>(x: T): T => JSON.parse(JSON.stringify(x)) as T;

function initialState(session: string, p: number, labels: string[]): ServedState {
  return {
    session,
    prime: p,
    status: "InProgress",
    exponent: { log2_denominator: 0 },
    labels: labels.map((l) => ({ label: l, target_dim: 1 })),
    base_dim: 3,
    graph: { vertices: ["o"], edges: [] },
    moves: 0,
    history: [],
    legal_moves: { cs: labels, merge: "any surjective relabelling", endgame: true, block: false },
    can_win: true,
  };
}

export class MockService {
  private sessions = new Map<string, MockSession>();
  private counter = 0;

  readonly fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? (JSON.parse(init.body) as Record<string, unknown>) : {};
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const parts = path.split("/").filter((x) => x.length > 0);
    const reply = (status: number, doc: unknown) => ({
      status,
      json: async () => doc,
    });

    if (method === "POST" && parts.length === 2 && parts[0] === "game" && parts[1] === "new") {
      const sid = `mock-${++this.counter}`;
      const labels = ["1", "2", "3", "4", "5", "6"];
      this.sessions.set(sid, {
        state: initialState(sid, Number(body["p"] ?? 101), labels),
        undoStack: [],
      });
      return reply(200, { session: sid, state: clone(this.sessions.get(sid)!.state) });
    }
    const sess = this.sessions.get(parts[1] ?? "");
    if (!sess) return reply(404, { error: "unknown session" });
    if (method === "GET") return reply(200, clone(sess.state));

    const action = parts[2];
    if (action === "hint") {
      if (sess.state.can_win) {
        return reply(200, {
          move: { kind: "endgame" },
          detail: { variant: "skew", collinear: ["1", "2", "3"], exponent_log2: 1 },
        });
      }
      return reply(200, { move: null, detail: "no hint" });
    }
    if (action === "undo") {
      const prev = sess.undoStack.pop();
      if (!prev) return reply(422, { error: "nothing to undo" });
      sess.state = prev;
      return reply(200, clone(sess.state));
    }
    if (action === "move") {
      const move = body as unknown as Move;
      const before = clone(sess.state);
      if (sess.state.status !== "InProgress") {
        return reply(422, { error: `session is ${sess.state.status}` });
      }
      if (move.kind === "cs") {
        const j = move.j;
        if (!sess.state.labels.some((l) => l.label === j)) {
          return reply(422, { error: `no label ${j}` });
        }
        const rest = sess.state.labels.filter((l) => l.label !== j);
        sess.state.labels = [
          ...rest.map((l) => ({ label: `${l.label}.0`, target_dim: l.target_dim })),
          ...rest.map((l) => ({ label: `${l.label}.1`, target_dim: l.target_dim })),
        ];
        sess.state.graph = {
          vertices: [...sess.state.graph.vertices.map((v) => v + "0"),
                     ...sess.state.graph.vertices.map((v) => v + "1")],
          edges: [
            ...sess.state.graph.edges.map((e) => ({ a: e.a + "0", b: e.b + "0", label: e.label })),
            ...sess.state.graph.edges.map((e) => ({ a: e.a + "1", b: e.b + "1", label: e.label })),
            { a: "o0", b: "o1", label: j },
          ],
        };
        sess.state.exponent = { log2_denominator: sess.state.exponent.log2_denominator + 1 };
        sess.state.base_dim = 2 * sess.state.base_dim - 1;
        sess.state.history = [...sess.state.history, { kind: "cs", j } as StepDoc];
        sess.state.can_win = false;
      } else if (move.kind === "endgame") {
        if (!sess.state.can_win) return reply(422, { error: "endgame hypotheses are not satisfied" });
        sess.state.status = "Won(skew)";
        sess.state.exponent = { log2_denominator: sess.state.exponent.log2_denominator + 1 };
        sess.state.history = [...sess.state.history, { kind: "endgame", variant: "skew" } as StepDoc];
      } else if (move.kind === "merge") {
        const tau = move.tau;
        for (const src of Object.keys(tau)) {
          if (!sess.state.labels.some((l) => l.label === src)) {
            return reply(422, { error: `unknown merge label '${src}'` });
          }
        }
        const renamed = new Map<string, string>();
        for (const l of sess.state.labels) renamed.set(l.label, tau[l.label] ?? l.label);
        const seen = new Map<string, number>();
        for (const l of sess.state.labels) {
          const dst = renamed.get(l.label)!;
          seen.set(dst, (seen.get(dst) ?? 0) + l.target_dim);
        }
        sess.state.labels = [...seen.entries()].map(([label, dim]) => ({
          label,
          target_dim: dim,
        }));
        sess.state.history = [...sess.state.history, { kind: "merge", tau } as StepDoc];
      } else {
        return reply(422, { error: `unknown move kind '${(move as { kind?: string }).kind}'` });
      }
      sess.state.moves += 1;
      sess.undoStack.push(before);
      return reply(200, clone(sess.state));
    }
    return reply(404, { error: "not found" });
  };
}
