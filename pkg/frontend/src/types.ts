/** Wire types mirroring the session service's JSON. The client never
 * computes field arithmetic: every displayed fact is a served field. */

export interface LabelInfo {
  label: string;
  target_dim: number;
}

export interface GraphEdge {
  a: string;
  b: string;
  label: string;
}

export interface ServedGraph {
  vertices: string[];
  edges: GraphEdge[];
}

export interface Exponent {
  log2_denominator: number;
}

export type StepDoc = {
  kind: "cs" | "merge" | "trivial" | "endgame";
  [key: string]: unknown;
};

export interface ServedState {
  session: string;
  prime: number;
  status: string;
  exponent: Exponent;
  labels: LabelInfo[];
  base_dim: number;
  graph: ServedGraph;
  moves: number;
  history: StepDoc[];
  legal_moves: {
    cs: string[];
    merge: string;
    endgame: boolean;
    block: boolean;
  };
  can_win: boolean;
}

export type Move =
  | { kind: "cs"; j: string }
  | { kind: "merge"; tau: Record<string, string> }
  | { kind: "block"; i: number; j: number }
  | { kind: "make_augmented" }
  | { kind: "make_standard" }
  | { kind: "endgame" };

export interface Hint {
  move: Move | null;
  detail: unknown;
}

export interface UiGameState {
  session: string | null;
  server: ServedState | null;
  pendingMove: Move | null;
  lastError: string | null;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; body?: string; headers?: Record<string, string> },
) => Promise<{ status: number; json(): Promise<unknown> }>;
