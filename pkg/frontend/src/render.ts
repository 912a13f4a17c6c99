import { layoutGraph } from "./layout.js";
import { ServedGraph } from "./types.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Pure SVG rendering of the served graph; safe to snapshot in tests. */
export function renderGraphSvg(graph: ServedGraph): string {
  const layout = layoutGraph(graph);
  const pos = new Map(layout.nodes.map((n) => [n.id, n]));
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}">`,
  );
  for (const e of layout.edges) {
    const a = pos.get(e.a);
    const b = pos.get(e.b);
    if (!a || !b) continue;
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    parts.push(
      `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" stroke="#666"/>` +
        `<text x="${mx}" y="${my - 4}" class="edge">${esc(e.label)}</text>`,
    );
  }
  for (const n of layout.nodes) {
    parts.push(
      `<circle cx="${n.x}" cy="${n.y}" r="16" fill="#eef" stroke="#336"/>` +
        `<text x="${n.x}" y="${n.y + 4}" text-anchor="middle" class="vert">${esc(n.id)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
