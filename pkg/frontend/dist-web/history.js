function stepLog2(step) {
    if (step.kind === "cs")
        return 1;
    if (step.kind === "endgame")
        return step["variant"] === "skew" ? 1 : 0;
    return 0;
}
function summarize(step) {
    switch (step.kind) {
        case "cs":
            return `CS at ${String(step["j"])}`;
        case "merge": {
            const tau = step["tau"];
            const classes = new Map();
            for (const [src, dst] of Object.entries(tau)) {
                classes.set(dst, [...(classes.get(dst) ?? []), src]);
            }
            return ("MERGE " +
                [...classes.entries()]
                    .map(([dst, srcs]) => `{${srcs.sort().join(",")}}->${dst}`)
                    .join(", "));
        }
        case "trivial":
            return "TRIVIAL rewrite";
        case "endgame":
            return `ENDGAME (${String(step["variant"])})`;
        default:
            return step.kind;
    }
}
export function exponentText(log2) {
    return log2 === 0 ? "1" : `1/2^${log2}`;
}
/** Move list with the cumulative exponent column; the cumulative value of
 * the last row always equals the served exponent. */
export function historyRows(state) {
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
