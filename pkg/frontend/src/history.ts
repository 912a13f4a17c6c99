import { ServedState, StepDoc } from "./types.js";

export interface HistoryRow {
  index: number;
  kind: string;
  summary: string;
  stepLog2: number;
  cumulativeLog2: number;
  exponentText: string;
}

function stepLog2(step: StepDoc): number {
  if (step.kind === "cs") return 1;
  if (step.kind === "endgame") return step["variant"] === "skew" ? 1 : 0;
  return 0;
}

function summarize(step: StepDoc): string {
  switch (step.kind) {
    case "cs":
      return `CS at ${String(step["j"])}`;
    case "merge": {
      const tau = step["tau"] as Record<string, string>;
      const classes = new Map<string, string[]>();
      for (const [src, dst] of Object.entries(tau)) {
        classes.set(dst, [...(classes.get(dst) ?? []), src]);
      }
      return (
        "MERGE " +
        [...classes.entries()]
          .map(([dst, srcs]) => `{${srcs.sort().join(",")}}->${dst}`)
          .join(", ")
      );
    }
    case "trivial":
      return "TRIVIAL rewrite";
    case "endgame":
      return `ENDGAME (${String(step["variant"])})`;
    default:
      return step.kind;
  }
}

export function exponentText(log2: number): string {
  return log2 === 0 ? "1" : `1/2^${log2}`;
}

/** Move list with the cumulative exponent column; the cumulative value of
 * the last row always equals the served exponent. */
export function historyRows(state: ServedState): HistoryRow[] {
  let acc = 0;
  return state.history.map((step, index) => {
    const d = stepLog2(step);
    acc += d;
    return {
      index,
      kind: step.kind,
      summary: summarize(step),
      stepLog2: d,
      cumulativeLog2: acc,
      exponentText: exponentText(acc),
    };
  });
}
