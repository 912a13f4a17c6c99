import { ServedGraph } from "./types.js";

export interface NodePos {
  id: string;
  x: number;
  y: number;
  layer: number;
}

export interface Layout {
  nodes: NodePos[];
  edges: { a: string; b: string; label: string }[];
  width: number;
  height: number;
}

const X_GAP = 120;
const Y_GAP = 90;
const MARGIN = 60;

function popcount(bits: string): number {
  let n = 0;
  for (const c of bits) if (c === "1") n += 1;
  return n;
}

/** Deterministic layered layout keyed by the vertex bitstrings: the layer is
 * the number of set bits; vertices within a layer are sorted lexicographically.
 * No force simulation, so identical states render identically. */
export function layoutGraph(graph: ServedGraph): Layout {
  const byLayer = new Map<number, string[]>();
  for (const v of [...graph.vertices].sort()) {
    const layer = popcount(v);
    const bucket = byLayer.get(layer) ?? [];
    bucket.push(v);
    byLayer.set(layer, bucket);
  }
  const layers = [...byLayer.keys()].sort((a, b) => a - b);
  const nodes: NodePos[] = [];
  let maxRow = 1;
  layers.forEach((layer, col) => {
    const bucket = byLayer.get(layer)!;
    maxRow = Math.max(maxRow, bucket.length);
    bucket.forEach((v, row) => {
      nodes.push({ id: v, x: MARGIN + col * X_GAP, y: MARGIN + row * Y_GAP, layer });
    });
  });
  return {
    nodes,
    edges: graph.edges.map((e) => ({ a: e.a, b: e.b, label: e.label })),
    width: MARGIN * 2 + Math.max(0, layers.length - 1) * X_GAP,
    height: MARGIN * 2 + Math.max(0, maxRow - 1) * Y_GAP,
  };
}
