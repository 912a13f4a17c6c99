import assert from "node:assert/strict";
import { test } from "node:test";

import { GameClient } from "./api.js";
import { MockService } from "./mock.js";
import { GameStore } from "./state.js";

const TRIPLE = [
  [1, 0, 0],
  [0, 1, 0],
  [1, 1, 0],
  [0, 0, 1],
  [1, 2, 3],
  [3, 1, 4],
];

function makeStore(): GameStore {
  const mock = new MockService();
  return new GameStore(new GameClient("http://mock", mock.fetch));
}

test("session flow: new game, hint, endgame wins with exponent 1/2", async () => {
  const store = makeStore();
  await store.newGame(TRIPLE, 101);
  assert.equal(store.status, "InProgress");
  assert.equal(store.exponentLog2, 0);

  const hint = await store.requestHint();
  assert.deepEqual(hint.move, { kind: "endgame" });
  assert.equal((hint.detail as { variant: string }).variant, "skew");

  const ok = await store.applyHint();
  assert.equal(ok, true);
  assert.equal(store.status, "Won(skew)");
  assert.equal(store.exponentLog2, 1);
});

test("CS move on label 6 splits the graph into two vertices, one edge", async () => {
  const store = makeStore();
  await store.newGame(TRIPLE, 101);
  const ok = await store.submitMove({ kind: "cs", j: "6" });
  assert.equal(ok, true);
  const server = store.current.server!;
  assert.equal(server.labels.length, 10);
  assert.equal(server.graph.vertices.length, 2);
  assert.equal(server.graph.edges.length, 1);
  assert.equal(server.graph.edges[0].label, "6");
  assert.equal(store.exponentLog2, 1);
});

test("illegal moves surface the 422 diagnostic inline and keep state", async () => {
  const store = makeStore();
  await store.newGame(TRIPLE, 101);
  const before = store.current.server;
  const ok = await store.submitMove({ kind: "cs", j: "zzz" });
  assert.equal(ok, false);
  assert.match(store.current.lastError ?? "", /no label/);
  assert.deepEqual(store.current.server, before);
  assert.equal(store.current.pendingMove, null);
});

test("undo pops a history row", async () => {
  const store = makeStore();
  await store.newGame(TRIPLE, 101);
  await store.submitMove({ kind: "cs", j: "6" });
  assert.equal(store.current.server!.moves, 1);
  await store.undo();
  assert.equal(store.current.server!.moves, 0);
  assert.equal(store.current.server!.graph.vertices.length, 1);
});

test("displayed exponent always equals the served exponent", async () => {
  const store = makeStore();
  const observed: number[] = [];
  store.subscribe((s) => {
    // the displayed value is read straight off the served state
    if (s.server) observed.push(s.server.exponent.log2_denominator);
  });
  await store.newGame(TRIPLE, 101);
  await store.submitMove({ kind: "cs", j: "6" });
  await store.submitMove({ kind: "cs", j: "5.0" });
  assert.equal(store.exponentLog2, 2);
  assert.equal(observed[observed.length - 1], 2);
  for (let i = 1; i < observed.length; i++) {
    assert.ok(observed[i] >= observed[i - 1]);
  }
});
