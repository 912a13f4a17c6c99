"""The projective plane machinery: conics through six points, the chart on
the moving line, the twelve projection moves, and word planning.

Run:  python demos/02_projective_moves_and_words.py
"""

from sixforms import (
    BlockState,
    ProjLine2,
    ProjPoint2,
    chart_on_line,
    conic_through,
    euclid_word,
    sigma,
    tau_involution,
)
from sixforms.geometry import GADGETS, compose_word

p = 101

print("== conic detection ==")
on_parabola = [ProjPoint2.of(1, t, t * t, p) for t in range(5)] + [ProjPoint2.of(0, 0, 1, p)]
print("  six points on xz = y^2 -> conic:", conic_through(on_parabola))
generic = [ProjPoint2.of(*v, p) for v in
           ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (2, 3, 5), (7, 11, 13))]
print("  a generic sextuple -> conic:", conic_through(generic))

print("\n== the chart and the moves ==")
state = BlockState(
    (ProjPoint2.of(0, 0, 1, p), ProjPoint2.of(1, 0, 1, p),
     ProjPoint2.of(0, -1, 1, p), ProjPoint2.of(2, 3, 1, p)),
    ProjPoint2.of(1, 4, 0, p), ProjPoint2.of(3, 1, 0, p),
    ProjLine2.of(0, 0, 1, p),
)
chart = chart_on_line(state)
print("  anchors:", chart.to_chart(state.anchor(1, 2)),
      chart.to_chart(state.anchor(1, 3)), chart.to_chart(state.anchor(2, 3)))
m12 = sigma(1, 2, state)
print("  move (1->2) as a chart matrix:", m12.m)
tau = tau_involution(state)
print("  the pairing involution squares to identity:", (tau @ tau).is_identity())
print("  conjugation tau s_12 == s_21 tau:",
      (tau @ m12) == (sigma(2, 1, state) @ tau))

print("\n== gadget words ==")
for name, (letters, target) in GADGETS.items():
    got = compose_word(letters, state)
    print(f"  {name}: {len(letters)} letters compose to {target}: {got == got.of(target, p)}")

word = euclid_word(23, 7)
print(f"\n  word for [23:7]: {len(word)} letters; action check:",
      compose_word(word, state).apply((23, 7)) == (1, 1))
