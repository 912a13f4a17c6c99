import { GameClient } from "./api.js";
import { exponentText, historyRows } from "./history.js";
import { renderGraphSvg } from "./render.js";
import { GameStore } from "./state.js";
import { FetchLike, Move } from "./types.js";

/** Browser bootstrap: binds the store to the DOM. Excluded from headless
 * tests, which exercise the store/render layers directly. */

const browserFetch: FetchLike = async (url, init) => {
  const resp = await fetch(url, init);
  return { status: resp.status, json: () => resp.json() };
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function parseForms(text: string): number[][] {
  return text
    .split(";")
    .map((chunk) => chunk.trim())
    .filter((chunk) => chunk.length > 0)
    .map((chunk) => chunk.split(",").map((tok) => parseInt(tok.trim(), 10)));
}

export function bootstrap(): void {
  const base = (el<HTMLInputElement>("service-url").value || "").replace(/\/$/, "");
  const store = new GameStore(new GameClient(base, browserFetch));

  const render = () => {
    const s = store.current;
    el("status").textContent = store.status;
    el("exponent").textContent = exponentText(store.exponentLog2);
    el("error").textContent = s.lastError ?? "";
    if (s.server) {
      el("graph").innerHTML = renderGraphSvg(s.server.graph);
      el("labels").textContent = s.server.labels
        .map((l) => `${l.label}:F^${l.target_dim}`)
        .join("  ");
      const rows = historyRows(s.server)
        .map(
          (r) =>
            `<tr><td>${r.index + 1}</td><td>${r.summary}</td><td>${r.exponentText}</td></tr>`,
        )
        .join("");
      el("history").innerHTML = `<tr><th>#</th><th>move</th><th>exponent</th></tr>${rows}`;
    }
  };
  store.subscribe(render);

  el("new-game").addEventListener("click", () => {
    const p = parseInt(el<HTMLInputElement>("prime").value, 10);
    const forms = parseForms(el<HTMLTextAreaElement>("forms").value);
    void store.newGame(forms, p);
  });
  el("cs-move").addEventListener("click", () => {
    const j = el<HTMLInputElement>("cs-label").value.trim();
    void store.submitMove({ kind: "cs", j });
  });
  el("merge-move").addEventListener("click", () => {
    const tau = JSON.parse(el<HTMLInputElement>("merge-tau").value) as Record<string, string>;
    void store.submitMove({ kind: "merge", tau });
  });
  el("hint").addEventListener("click", async () => {
    const hint = await store.requestHint();
    el("hint-text").textContent = JSON.stringify(hint);
  });
  el("apply-hint").addEventListener("click", () => void store.applyHint());
  el("undo").addEventListener("click", () => void store.undo());
  el("endgame").addEventListener("click", () =>
    void store.submitMove({ kind: "endgame" } as Move),
  );
}

if (typeof document !== "undefined" && document.getElementById("new-game")) {
  bootstrap();
}
