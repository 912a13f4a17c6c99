"""Certificate synthesis for six-form systems.

The planner analyzes a system (conic test, partition complexity, collinearity
table), and when the true complexity is 1 it synthesizes a certificate:

* relabel so the target index is one of the four off-line roles, pick the two
  remaining forms as the moving pair and their join as the line;
* switch to the augmented datum (base space V + F_p) so the moving points may
  collide mid-walk;
* walk the moving point along the line with block moves, each spending four
  CS steps (exponent 1/16) plus merge/trivial bookkeeping, following a word
  planned on integer coordinate lifts;
* stop at the first collinear triple and close with a partition endgame.

Every trivial witness is constructed explicitly and validated on the spot;
a failed contract raises InternalWitnessFailure rather than emitting a bad
certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ffield import FpMatrix, PrimeModulus
from .geometry import (
    BlockState,
    ProjLine2,
    ProjPoint2,
    collinear,
    conic_through,
    euclid_word,
    incident,
    join,
    meet,
    quadratic_row,
    x5_coordinates_raw,
)
from .lindata import (
    Certificate,
    CSStep,
    EndgameStep,
    InvalidStep,
    LinearDatum,
    MergeStep,
    Step,
    TrivialStep,
    apply_cs,
    apply_merge,
    check_trivial,
    solve_sigma,
    standard_datum,
)


class NotTrueComplexityOne(ValueError):
    def __init__(self, witness):
        super().__init__(f"system lies on the conic {witness}")
        self.witness = witness


class UnplannableLabeling(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class InternalWitnessFailure(AssertionError):
    pass


class HypothesesFail(ValueError):
    pass


LABELS = ("1", "2", "3", "4", "5", "6")


@dataclass(frozen=True)
class FormSystem:
    """Six integer coefficient triples and a prime; forms reduce mod p."""

    p: int
    rows: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        PrimeModulus(self.p)
        if len(self.rows) != 6 or any(len(r) != 3 for r in self.rows):
            raise ValueError("need six coefficient triples")
        for r in self.rows:
            if all(c % self.p == 0 for c in r):
                raise PreconditionViolated(f"form {r} vanishes mod {self.p}")

    @staticmethod
    def parse(text: str, p: int) -> "FormSystem":
        """Parse the canonical "a,b,c; a,b,c; ..." six-triple syntax."""
        parts = [chunk for chunk in text.split(";") if chunk.strip()]
        if len(parts) != 6:
            raise ValueError(f"expected six forms, got {len(parts)}")
        rows = []
        for chunk in parts:
            nums = [int(tok) for tok in chunk.split(",")]
            if len(nums) != 3:
                raise ValueError(f"form {chunk!r} does not have three coefficients")
            rows.append(tuple(nums))
        return FormSystem(p, tuple(rows))

    @property
    def coeff_bound(self) -> int:
        return max(abs(c) for r in self.rows for c in r)

    def reduced(self, label: str) -> tuple[int, int, int]:
        r = self.rows[int(label) - 1]
        return tuple(c % self.p for c in r)  # type: ignore[return-value]

    def lift(self, label: str) -> tuple[int, int, int]:
        return self.rows[int(label) - 1]

    def point(self, label: str) -> ProjPoint2:
        return ProjPoint2.of(*self.reduced(label), self.p)

    def points(self) -> dict[str, ProjPoint2]:
        return {l: self.point(l) for l in LABELS}

    def standard_datum(self) -> LinearDatum:
        return standard_datum([self.reduced(l) for l in LABELS], self.p, LABELS)


@dataclass(frozen=True)
class ComplexityReport:
    p: int
    true_complexity_is_one: bool
    conic_witness: tuple[int, ...] | None
    eval_det: int
    cs_by_index: dict[str, tuple[int | None, tuple[tuple[str, ...], ...] | None]]
    collinear_triples: tuple[tuple[str, str, str], ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "true_complexity_is_one": self.true_complexity_is_one,
            "conic_witness": list(self.conic_witness) if self.conic_witness else None,
            "squared_forms_eval_det": self.eval_det,
            "cs_complexity": {
                j: {"s": s, "partition": [list(c) for c in part] if part else None}
                for j, (s, part) in self.cs_by_index.items()
            },
            "collinear_triples": [list(t) for t in self.collinear_triples],
        }


def _span_contains(rows: list[tuple[int, ...]], target: tuple[int, ...], p: int) -> bool:
    base = FpMatrix(list(rows), p)
    ext = base.vstack(FpMatrix([list(target)], p))
    return base.rank() == ext.rank()


def _set_partitions(items: list[str], classes: int):
    """All partitions of items into exactly `classes` nonempty classes,
    in restricted-growth order (deterministic)."""

    def rec(i, groups):
        if i == len(items):
            if len(groups) == classes:
                yield [tuple(g) for g in groups]
            return
        if len(groups) + (len(items) - i) < classes:
            return
        for g in groups:
            g.append(items[i])
            yield from rec(i + 1, groups)
            g.pop()
        if len(groups) < classes:
            groups.append([items[i]])
            yield from rec(i + 1, groups)
            groups.pop()

    yield from rec(0, [])


def cs_complexity(sys: FormSystem, j: str) -> tuple[int | None, tuple[tuple[str, ...], ...] | None]:
    """Smallest s with a partition of the other indices into s+1 classes,
    the target form outside every class span; (None, None) if s > 5."""
    target = sys.reduced(j)
    others = [l for l in LABELS if l != j]
    for s in range(0, 5):
        for part in _set_partitions(others, s + 1):
            if all(
                not _span_contains([sys.reduced(l) for l in cls], target, sys.p)
                for cls in part
            ):
                return s, tuple(part)
    return None, None


def collinear_triples(points: dict[str, ProjPoint2]) -> list[tuple[str, str, str]]:
    out = []
    for a, b, c in itertools.combinations(LABELS, 3):
        if collinear(points[a], points[b], points[c]):
            out.append((a, b, c))
    return out


def analyze(sys: FormSystem) -> ComplexityReport:
    pts = sys.points()
    point_list = [pts[l] for l in LABELS]
    witness = conic_through(point_list)
    eval_det = FpMatrix([quadratic_row(sys.reduced(l), sys.p) for l in LABELS], sys.p).det()
    # two independent code paths must agree
    if (witness is None) != (eval_det != 0):
        raise InternalWitnessFailure("conic kernel and determinant paths disagree")
    return ComplexityReport(
        sys.p,
        witness is None,
        witness,
        eval_det,
        {j: cs_complexity(sys, j) for j in LABELS},
        tuple(collinear_triples(pts)),
    )


# -- endgame ----------------------------------------------------------------


def _rows_by_label(d: LinearDatum) -> dict[str, tuple[int, ...]]:
    return {l: d.maps[l].row(0) for l in d.labels}


def make_endgame(sys_rows: dict[str, tuple[int, ...]], p: int, respected: str) -> EndgameStep | None:
    """Terminal step for a six-form system with a collinear triple.

    Prefers the exponent-1 partition bound (respected off the triple); falls
    back to the skew split (one more CS, exponent 1/2) when the respected
    label sits on every collinear line.  None if no triple is collinear.
    """
    pts = {l: ProjPoint2.of(*sys_rows[l], p) for l in sys_rows}
    triples = [
        t for t in itertools.combinations(sorted(pts), 3)
        if collinear(pts[t[0]], pts[t[1]], pts[t[2]])
    ]
    if not triples:
        return None
    sys = FormSystem(p, tuple(sys_rows[l] for l in LABELS))
    avoid = [t for t in triples if respected not in t]
    if avoid:
        s, part = cs_complexity(sys, respected)
        if s == 1 and part is not None:
            return EndgameStep(
                "csc", respected, tuple(sorted(avoid[0])), part, None, (), ()
            )
    containing = [t for t in triples if respected in t]
    if not containing:
        return None
    tri = containing[0]
    comp = tuple(l for l in LABELS if l not in tri)
    cs_label = comp[2]
    ordered = (respected,) + tuple(l for l in tri if l != respected)
    g = {k + 1: lbl for k, lbl in enumerate(ordered + comp)}
    s_class = ((g[2], 0), (g[4], 0), (g[1], 1), (g[2], 1), (g[3], 1))
    t_class = ((g[3], 0), (g[5], 0), (g[4], 1), (g[5], 1))
    step = EndgameStep("skew", respected, tuple(ordered), (), cs_label, s_class, t_class)
    _check_skew(sys_rows, p, step)  # HypothesesFail here, not at replay
    return step


def _skew_matrices(sys_rows: dict[str, tuple[int, ...]], p: int, step: EndgameStep):
    """M_S, M_T for the skew endgame, in coordinates where the CS'd form
    is the first coordinate functional."""
    g6 = step.cs_label
    assert g6 is not None
    comp = FpMatrix([list(sys_rows[g6])], p)
    # complete the CS'd form to a basis and change coordinates
    rows = [list(sys_rows[g6])]
    for e in np.eye(3, dtype=np.int64).tolist():
        cand = FpMatrix(rows + [e], p)
        if cand.rank() == len(rows) + 1:
            rows.append(e)
        if len(rows) == 3:
            break
    basis_change = FpMatrix(rows, p).inverse()
    coeff = {l: tuple(int(x) for x in (FpMatrix([list(sys_rows[l])], p) @ basis_change).row(0)) for l in sys_rows}
    assert coeff[g6] == (1, 0, 0)

    def copy_row(lbl: str, bit: int) -> list[int]:
        a, b, c = coeff[lbl]
        return [a, b, 0, c, 0] if bit == 0 else [a, 0, b, 0, c]

    g1 = step.respected
    ms = FpMatrix([copy_row(g1, 0)] + [copy_row(l, b) for l, b in step.s_class if (l, b) != (step.collinear[2], 1)], p)
    mt = FpMatrix([copy_row(g1, 0)] + [copy_row(l, b) for l, b in step.t_class], p)
    return ms, mt


def _check_skew(sys_rows: dict[str, tuple[int, ...]], p: int, step: EndgameStep) -> None:
    pts = {l: ProjPoint2.of(*sys_rows[l], p) for l in sys_rows}
    tri = step.collinear
    comp = tuple(l for l in LABELS if l not in tri)
    if not collinear(*(pts[l] for l in tri)):
        raise HypothesesFail(f"triple {tri} is not collinear")
    if collinear(*(pts[l] for l in comp)):
        raise HypothesesFail(f"complementary triple {comp} is collinear")
    if len({pts[l].coords for l in LABELS}) != 6:
        raise HypothesesFail("points are not distinct")
    for four in itertools.combinations(LABELS, 4):
        pl = [pts[l] for l in four]
        if all(collinear(*c) for c in itertools.combinations(pl, 3)):
            raise HypothesesFail(f"four collinear points {four}")
    # the off-line form is split off by one CS; both partition matrices must
    # be nonsingular, and the third collinear form must lie in the span of
    # the first two
    if not _span_contains([sys_rows[tri[0]], sys_rows[tri[1]]], sys_rows[tri[2]], p):
        raise HypothesesFail("collinear triple does not span a line")
    ms, mt = _skew_matrices(sys_rows, p, step)
    if ms.det() == 0:
        raise HypothesesFail(f"M_S is singular (det 0): {ms.tolist()}")
    if mt.det() == 0:
        raise HypothesesFail(f"M_T is singular (det 0): {mt.tolist()}")


def endgame_partition(sys: FormSystem, respected: str) -> EndgameStep:
    rows = {l: sys.reduced(l) for l in LABELS}
    step = make_endgame(rows, sys.p, respected)
    if step is None:
        raise HypothesesFail("no collinear triple")
    return step


def validate_endgame(d: LinearDatum, step: EndgameStep, index: int) -> None:
    """Replay-side validation of a terminal step against the final datum."""
    if d.base_dim != 3 or len(d.labels) != 6 or any(d.target_dim(l) != 1 for l in d.labels):
        raise InvalidStep(index, "endgame needs a six-form system in three variables")
    rows = _rows_by_label(d)
    pts = {l: ProjPoint2.of(*rows[l], d.p) for l in d.labels}
    tri = step.collinear
    if any(l not in rows for l in tri) or len(set(tri)) != 3:
        raise InvalidStep(index, "endgame collinear triple is malformed")
    if not collinear(*(pts[l] for l in tri)):
        raise InvalidStep(index, f"triple {tri} is not collinear")
    comp = tuple(l for l in sorted(rows) if l not in tri)
    if collinear(*(pts[l] for l in comp)):
        raise InvalidStep(index, f"complementary triple {comp} is collinear")
    if step.variant == "csc":
        classes = step.partition
        flat = [l for cls in classes for l in cls]
        if sorted(flat) != sorted(l for l in rows if l != step.respected):
            raise InvalidStep(index, "endgame partition does not cover the other labels")
        for cls in classes:
            if _span_contains([rows[l] for l in cls], rows[step.respected], d.p):
                raise InvalidStep(index, f"respected form lies in the span of {cls}")
    elif step.variant == "skew":
        if step.respected != tri[0]:
            raise InvalidStep(index, "skew endgame must respect the first collinear label")
        try:
            _check_skew(rows, d.p, step)
        except HypothesesFail as e:
            raise InvalidStep(index, str(e)) from e
    else:
        raise InvalidStep(index, f"unknown endgame variant {step.variant}")


# -- augmented data ----------------------------------------------------------


def _ell_subspace(ell: ProjLine2) -> FpMatrix:
    """Basis rows of the 2-dim subspace of V* whose projective points lie on ell."""
    return FpMatrix([list(ell.coeffs)], ell.p).kernel_basis()


def _in_rowspace(basis: FpMatrix, row, p: int) -> bool:
    return _span_contains([tuple(r) for r in basis.tolist()], tuple(row), p)


@dataclass(frozen=True)
class AugmentedDatum:
    """Augmented datum representing (phi_1..phi_6; ell) on V + F_p.

    roles maps role 1..6 to the actual label; phis holds the coefficient
    rows; chi5/chi6 are the extra covectors (in ell) of the two on-line maps.
    """

    p: int
    roles: dict[int, str]
    phis: dict[str, tuple[int, int, int]]
    chi5: tuple[int, int, int]
    chi6: tuple[int, int, int]
    ell: ProjLine2

    def label(self, role: int) -> str:
        return self.roles[role]

    def point(self, role: int) -> ProjPoint2:
        return ProjPoint2.of(*self.phis[self.roles[role]], self.p)

    def chi(self, role: int) -> tuple[int, int, int]:
        return self.chi5 if role == 5 else self.chi6

    def validate(self) -> None:
        p = self.p
        ell_basis = _ell_subspace(self.ell)
        for role in (5, 6):
            if not _in_rowspace(ell_basis, self.phis[self.roles[role]], p):
                raise PreconditionViolated(f"form of role {role} is off the line")
            if not _in_rowspace(ell_basis, self.chi(role), p):
                raise PreconditionViolated(f"chi of role {role} is not in the line subspace")
        for role in (1, 2, 3, 4):
            if incident(self.point(role), self.ell):
                raise PreconditionViolated(f"role {role} lies on the line")
        for c in itertools.combinations((1, 2, 3, 4), 3):
            if collinear(*(self.point(r) for r in c)):
                raise PreconditionViolated(f"roles {c} are collinear")

    def block_state(self) -> BlockState:
        return BlockState(
            tuple(self.point(r) for r in (1, 2, 3, 4)),
            self.point(5),
            self.point(6),
            self.ell,
        )

    def to_datum(self) -> LinearDatum:
        maps = {}
        for role in (1, 2, 3, 4):
            lbl = self.roles[role]
            maps[lbl] = FpMatrix([list(self.phis[lbl]) + [0]], self.p)
        for role in (5, 6):
            lbl = self.roles[role]
            maps[lbl] = FpMatrix(
                [list(self.phis[lbl]) + [0], list(self.chi(role)) + [1]], self.p
            )
        return LinearDatum(self.p, 4, LABELS, maps)


def make_augmented_forward(aug: AugmentedDatum, d_std: LinearDatum, respected: str) -> TrivialStep:
    """Standard -> augmented: theta drops the extra coordinate."""
    p = aug.p
    theta = FpMatrix(np.hstack([np.eye(3, dtype=np.int64), np.zeros((3, 1), dtype=np.int64)]), p)
    d_aug = aug.to_datum()
    sigmas = {}
    for lbl in LABELS:
        if d_aug.target_dim(lbl) == 1:
            sigmas[lbl] = FpMatrix.identity(1, p)
        else:
            sigmas[lbl] = FpMatrix([[1, 0]], p)
    if not check_trivial(d_std, d_aug, theta, sigmas, respected):
        raise InternalWitnessFailure("augmentation witness failed")
    return TrivialStep(d_aug, theta, sigmas, respected, respected)


def make_augmented_reverse(aug: AugmentedDatum, respected: str) -> tuple[TrivialStep, LinearDatum]:
    """Augmented -> standard, via the section v -> (v, mu(v)).

    Needs the two on-line points distinct; mu is solved from
    chi5 - chi6 = alpha*phi5 + beta*phi6 and collapses each on-line map onto
    its first component.
    """
    p = aug.p
    phi5 = aug.phis[aug.roles[5]]
    phi6 = aug.phis[aug.roles[6]]
    if aug.point(5) == aug.point(6):
        raise PreconditionViolated("moving points coincide; cannot drop the augmentation")
    basis = FpMatrix([list(phi5), list(phi6)], p)
    delta = [(a - b) % p for a, b in zip(aug.chi5, aug.chi6)]
    sol = basis.T.solve(delta)
    if sol is None:
        raise InternalWitnessFailure("chi difference is not in the span of the line forms")
    alpha, beta = sol
    mu = [(alpha * a - c) % p for a, c in zip(phi5, aug.chi5)]
    gamma5 = alpha
    gamma6 = (-beta) % p
    theta = FpMatrix(
        np.vstack([np.eye(3, dtype=np.int64), np.array([mu], dtype=np.int64)]), p
    )
    d_std = standard_datum([aug.phis[l] for l in LABELS], p, LABELS)
    d_aug = aug.to_datum()
    sigmas = {}
    for role, lbl in aug.roles.items():
        if role <= 4:
            sigmas[lbl] = FpMatrix.identity(1, p)
        else:
            gamma = gamma5 if role == 5 else gamma6
            sigmas[lbl] = FpMatrix([[1], [gamma]], p)
    if not check_trivial(d_aug, d_std, theta, sigmas, respected):
        raise InternalWitnessFailure("de-augmentation witness failed")
    return TrivialStep(d_std, theta, sigmas, respected, respected), d_std


# -- block geometry -----------------------------------------------------------


def _walk_collinearity(state: BlockState) -> tuple[int, int, int] | None:
    for k, l in itertools.combinations((1, 2, 3, 4), 2):
        for x in (5, 6):
            if collinear(state.point(k), state.point(l), state.point(x)):
                return (k, l, x)
    return None


def _assert_off_conic(state: BlockState) -> None:
    """The walk must keep the configuration off every conic: the involution
    never pairs the two moving points."""
    from .geometry import chart_on_line, tau_involution

    chart = chart_on_line(state)
    tau = tau_involution(state)
    if tau.apply(chart.to_chart(state.x5)) == chart.to_chart(state.x6):
        raise InternalWitnessFailure("walk landed on a conic configuration")


def block_geometry(state: BlockState, i: int, j: int) -> BlockState:
    """The projective move: X5' = join(X_j, Y) ^ ell for Y = join(X_i, X5)
    ^ join(X_k, X_l), and symmetrically X6' with i and j exchanged."""
    bad = _walk_collinearity(state)
    if bad is not None:
        raise PreconditionViolated(f"triple {bad} is collinear")
    ks = [k for k in (1, 2, 3, 4) if k not in (i, j)]
    back = join(state.point(ks[0]), state.point(ks[1]))
    y = meet(join(state.point(i), state.x5), back)
    z = meet(join(state.point(j), state.x6), back)
    x5p = meet(join(state.point(j), y), state.ell)
    x6p = meet(join(state.point(i), z), state.ell)
    return BlockState(state.points, x5p, x6p, state.ell)


# -- block datum: the 1/16-exponent pipeline ---------------------------------


def _rowspace_basis(m: FpMatrix) -> FpMatrix:
    red, piv = m.rref()
    return FpMatrix(red.a[: len(piv)], m.p)


def _rowspace_intersection(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    perp = a.kernel_basis().vstack(b.kernel_basis())
    return perp.kernel_basis()


def _extend_rows(base: np.ndarray, candidates: np.ndarray, p: int) -> np.ndarray:
    """Greedily extend base rows by candidate rows to a larger independent set."""
    rows = [r for r in base]
    rank = FpMatrix(np.array(rows), p).rank() if rows else 0
    for r in candidates:
        trial = rows + [r]
        if FpMatrix(np.array(trial), p).rank() == rank + 1:
            rows.append(r)
            rank += 1
    return np.array(rows)


def easy_prune_pair(m5: FpMatrix, m6: FpMatrix) -> tuple[FpMatrix, FpMatrix]:
    """Commuting projections s1, s2 with psi5 s1 = psi5, ker s1 = ker psi5,
    and likewise for s2/psi6."""
    p = m5.p
    n = m5.cols
    k5, k6 = m5.kernel_basis(), m6.kernel_basis()
    dt = k5.a.dtype
    empty = np.zeros((0, n), dtype=dt)
    k00 = m5.vstack(m6).kernel_basis().a
    if k00.size == 0:
        k00 = empty
    b01 = _extend_rows(k00, k5.a, p) if k5.rows else k00
    b10 = _extend_rows(k00, k6.a, p) if k6.rows else k00
    n00 = k00.shape[0]
    n01 = b01.shape[0] - n00
    n10 = b10.shape[0] - n00
    partial = np.vstack([b01.reshape(-1, n), b10[n00:].reshape(-1, n)])
    full = _extend_rows(partial, np.eye(n, dtype=dt), p)
    pmat = FpMatrix(full, p).T  # columns: K00 | K01 | K10 | K11
    pinv = pmat.inverse()
    d1 = np.zeros(n, dtype=np.int64)
    d1[n00 + n01 :] = 1  # kill ker s1 = K00 + K01
    d2 = np.zeros(n, dtype=np.int64)
    d2[n00 : n00 + n01] = 1
    d2[n00 + n01 + n10 :] = 1  # kill ker s2 = K00 + K10
    s1 = pmat @ FpMatrix(np.diag(d1), p) @ pinv
    s2 = pmat @ FpMatrix(np.diag(d2), p) @ pinv
    for s, m in ((s1, m5), (s2, m6)):
        if (m @ s) != m:
            raise InternalWitnessFailure("prune projection does not fix its map")
        if s.kernel_basis().rows != m.kernel_basis().rows or not (m @ s.kernel_basis().T).is_zero():
            raise InternalWitnessFailure("prune projection has the wrong kernel")
    if (s1 @ s2) != (s2 @ s1):
        raise InternalWitnessFailure("prune projections do not commute")
    return s1, s2


def _frame_change(w: FpMatrix, u1: FpMatrix, u2: FpMatrix) -> FpMatrix:
    """Row-action matrix C sending the configuration (w; u1, u2) to the
    canonical one (w=(1,1,0); u1={x=0}, u2={y=0}).

    w: 1x3 row not in u1 or u2; u1, u2: distinct 2-dim row spaces in F^3.
    """
    p = w.p
    r1 = u1.kernel_basis()  # 1x3: functional vanishing on u1
    r2 = u2.kernel_basis()
    c1 = int((w @ r1.T).a[0, 0])
    c2 = int((w @ r2.T).a[0, 0])
    if c1 == 0 or c2 == 0:
        raise InternalWitnessFailure("frame point lies on a frame plane")
    row1 = r1.scale(pow(c1, -1, p))
    row2 = r2.scale(pow(c2, -1, p))
    g0 = None
    for e in np.eye(3, dtype=np.int64):
        cand = FpMatrix(np.vstack([row1.a, row2.a, e.reshape(1, 3)]), p)
        if cand.rank() == 3:
            g0 = FpMatrix(e.reshape(1, 3), p)
            break
    assert g0 is not None
    gw = int((w @ g0.T).a[0, 0])
    g = g0 - row1.scale(gw)
    cmat = FpMatrix(np.vstack([row1.a, row2.a, g.a]), p)
    # row action: f . C^T sends w to (1,1,0), u1 into {x=0}, u2 into {y=0}
    return cmat.T


def frame_isomorphism(w, u1, u2, w2, v1, v2) -> FpMatrix:
    """Row-action matrix F with w.F ~ w2, u1.F = v1, u2.F = v2 (subspaces)."""
    c_src = _frame_change(w, u1, u2)
    c_dst = _frame_change(w2, v1, v2)
    f = c_src @ c_dst.inverse()
    return f


def _row4(row3, p: int, last: int = 0) -> FpMatrix:
    return FpMatrix([list(row3) + [last]], p)


class _Pipeline:
    """Vertex/edge bookkeeping for one block's CS spine."""

    def __init__(self, aug: AugmentedDatum, tmpl: dict[int, str]):
        self.p = aug.p
        self.d0 = aug.to_datum()
        self.tmpl = tmpl  # template role -> actual label
        self.role_of = {v: k for k, v in tmpl.items()}
        self.d = self.d0
        self.verts: list[str] = [""]
        self.edges: list[tuple[str, str, int]] = []
        self.blocks: dict[str, FpMatrix] = {"": FpMatrix.identity(4, self.p)}
        self.locs: dict[str, list[tuple[int, str]]] = {
            lbl: [(self.role_of[lbl], "")] for lbl in self.d0.labels
        }
        self.steps: list[Step] = []

    def base_map(self, trole: int) -> FpMatrix:
        return self.d0.maps[self.tmpl[trole]]

    def cs(self, label: str, respected: str) -> None:
        mj = self.d.maps[label]
        k = mj.hstack(mj.scale(-1)).kernel_basis()
        left = FpMatrix(k.a[:, : self.d.base_dim], self.p).T
        right = FpMatrix(k.a[:, self.d.base_dim :], self.p).T
        self.steps.append(CSStep(label, respected, respected + ".0"))
        cross = [(v + "0", v + "1", t) for (t, v) in self.locs[label]]
        new_edges = []
        for (va, vb, t) in self.edges:
            new_edges += [(va + "0", vb + "0", t), (va + "1", vb + "1", t)]
        self.edges = new_edges + cross
        new_blocks = {}
        for v in self.verts:
            new_blocks[v + "0"] = self.blocks[v] @ left
            new_blocks[v + "1"] = self.blocks[v] @ right
        self.blocks = new_blocks
        self.verts = [v + "0" for v in self.verts] + [v + "1" for v in self.verts]
        new_locs = {}
        for lbl, cons in self.locs.items():
            if lbl == label:
                continue
            new_locs[lbl + ".0"] = [(t, v + "0") for (t, v) in cons]
            new_locs[lbl + ".1"] = [(t, v + "1") for (t, v) in cons]
        self.locs = new_locs
        self.d = apply_cs(self.d, label)

    def merge(self, tau: dict[str, str], respected: str) -> None:
        self.steps.append(MergeStep(dict(tau), respected, tau.get(respected, respected)))
        new_locs: dict[str, list[tuple[int, str]]] = {}
        for lbl, cons in self.locs.items():
            tgt = tau.get(lbl, lbl)
            new_locs.setdefault(tgt, []).extend(cons)
        self.locs = new_locs
        self.d = apply_merge(self.d, tau)

    def graph_kernel(self, verts: list[str], edges: list[tuple[str, str, int]]) -> FpMatrix:
        idx = {v: i for i, v in enumerate(verts)}
        rows = []
        for (va, vb, t) in edges:
            m = self.base_map(t)
            for r in range(m.rows):
                row = np.zeros(4 * len(verts), dtype=m.a.dtype)
                row[4 * idx[va] : 4 * idx[va] + 4] = m.a[r]
                row[4 * idx[vb] : 4 * idx[vb] + 4] = (-m.a[r]) % self.p
                rows.append(row)
        if not rows:
            return FpMatrix.identity(4 * len(verts), self.p)
        return FpMatrix(np.array(rows), self.p).kernel_basis()

    def trivial_to(self, verts, edges, blocks, locs, vertex_maps, respected) -> None:
        """Emit a TRIVIAL step onto the datum presented by (verts, edges),
        where vertex_maps gives, per old vertex, the 4x(new dim) composite
        realizing the inclusion of the new graph space into the old one."""
        maps = {}
        for lbl, cons in locs.items():
            stacked = None
            for (t, v) in sorted(cons, key=lambda c: (c[1], c[0])):
                piece = self.base_map(t) @ blocks[v]
                stacked = piece if stacked is None else stacked.vstack(piece)
            maps[lbl] = stacked
        dim = next(iter(blocks.values())).cols
        d_to = LinearDatum(self.p, dim, tuple(self.d.labels), maps)
        j_stacked = None
        for v in self.verts:
            piece = vertex_maps[v]
            j_stacked = piece if j_stacked is None else j_stacked.vstack(piece)
        e_old = None
        for v in self.verts:
            e_old = self.blocks[v] if e_old is None else e_old.vstack(self.blocks[v])
        theta = e_old.solve_matrix(j_stacked)
        if theta is None or (e_old @ theta) != j_stacked:
            raise InternalWitnessFailure("graph inclusion is not realized by the embedding")
        sigmas = {}
        for lbl in self.d.labels:
            sig = solve_sigma(self.d, d_to, theta, lbl)
            if sig is None:
                raise InternalWitnessFailure(f"no sigma witness for {lbl}")
            sigmas[lbl] = sig
        if not check_trivial(self.d, d_to, theta, sigmas, respected):
            raise InternalWitnessFailure("pruning trivial step failed validation")
        self.steps.append(TrivialStep(d_to, theta, sigmas, respected, respected))
        self.verts, self.edges, self.blocks, self.locs, self.d = verts, edges, blocks, locs, d_to

    def prune_square(self, square: list[str], kept: str, s1: FpMatrix, s2: FpMatrix,
                     name5: str, name6: str, respected: str) -> None:
        """Merge the three disposable corners of a (5,6)-square into two
        labels and retract them onto the kept corner."""
        drop = [v for v in square if v != kept]
        v_s1, v_s2, v_s12 = drop  # adjacent via 5, adjacent via 6, opposite
        members_r = sorted(l for l, cons in self.locs.items() if cons[0][1] == v_s1)
        members_s = sorted(l for l, cons in self.locs.items()
                           if cons[0][1] in (v_s2, v_s12))
        tau = {l: name5 for l in members_r}
        tau.update({l: name6 for l in members_s})
        self.merge(tau, respected)
        verts = [v for v in self.verts if v not in drop]
        edges = [(a, b, t) for (a, b, t) in self.edges if a not in drop and b not in drop]
        kbasis = self.graph_kernel(verts, edges)
        blocks = {
            v: FpMatrix(kbasis.a[:, 4 * i : 4 * i + 4], self.p).T
            for i, v in enumerate(verts)
        }
        locs = {}
        for lbl, cons in self.locs.items():
            if lbl == name5:
                locs[lbl] = [(5, kept)]
            elif lbl == name6:
                locs[lbl] = [(6, kept)]
            else:
                assert all(v not in drop for (_, v) in cons)
                locs[lbl] = cons
        vertex_maps = {}
        for v in self.verts:
            if v == v_s1:
                vertex_maps[v] = s1 @ blocks[kept]
            elif v == v_s2:
                vertex_maps[v] = s2 @ blocks[kept]
            elif v == v_s12:
                vertex_maps[v] = s1 @ s2 @ blocks[kept]
            else:
                vertex_maps[v] = blocks[v]
        self.trivial_to(verts, edges, blocks, locs, vertex_maps, respected)


def _tau1(aug: AugmentedDatum, tmpl: dict[int, str], y_pt: ProjPoint2, z_pt: ProjPoint2) -> FpMatrix:
    """Dual projection onto the span of roles 3,4 collapsing the two pencil
    lines onto Y and Z."""
    p = aug.p
    h = {t: _rowspace_basis(aug.to_datum().maps[tmpl[t]]) for t in (1, 2, 3, 4, 5, 6)}
    h15 = _rowspace_basis(h[1].vstack(h[5]))
    h26 = _rowspace_basis(h[2].vstack(h[6]))
    w = _rowspace_intersection(h15, h26)
    if w.rows != 2:
        raise InternalWitnessFailure("pencil planes do not meet in a 2-space")
    vstar = FpMatrix(np.hstack([np.eye(3, dtype=np.int64), np.zeros((3, 1), dtype=np.int64)]), p)
    wv = _rowspace_intersection(w, vstar)
    if wv.rows != 1:
        raise InternalWitnessFailure("pencil intersection misses the plane at infinity")
    y_row = wv
    x_row = None
    for r in range(w.rows):
        cand = FpMatrix(np.vstack([y_row.a, w.a[r : r + 1]]), p)
        if cand.rank() == 2:
            x_row = FpMatrix(w.a[r : r + 1], p)
            break
    assert x_row is not None
    phi3 = _row4(aug.phis[tmpl[3]], p)
    phi4 = _row4(aug.phis[tmpl[4]], p)
    q = phi3.vstack(phi4).vstack(x_row).vstack(y_row)
    if q.rank() != 4:
        raise InternalWitnessFailure("frame for the first projection is degenerate")
    qp = phi3.vstack(phi4).vstack(FpMatrix.zeros(2, 4, p))
    t1 = q.inverse() @ qp
    # contract: the pencil planes collapse onto the single points Y and Z
    hy = _rowspace_basis(h15 @ t1)
    hz = _rowspace_basis(h26 @ t1)
    for got, pt in ((hy, y_pt), (hz, z_pt)):
        if got.rows != 1 or not _in_rowspace(_row4(pt.coords, p), got.row(0), p):
            raise InternalWitnessFailure("projection image is not the expected point")
    return t1


def _tau2(aug: AugmentedDatum, tmpl: dict[int, str]) -> FpMatrix:
    p = aug.p
    ell2 = _ell_subspace(aug.ell)
    e_rows = FpMatrix(np.hstack([ell2.a, np.zeros((2, 1), dtype=ell2.a.dtype)]), p)
    xi = FpMatrix([[0, 0, 0, 1]], p)
    phi1 = _row4(aug.phis[tmpl[1]], p)
    q = phi1.vstack(e_rows).vstack(xi)
    if q.rank() != 4:
        raise InternalWitnessFailure("frame for the second projection is degenerate")
    qp = xi.vstack(e_rows).vstack(xi)
    return q.inverse() @ qp


def _tau3(aug: AugmentedDatum, tmpl: dict[int, str]) -> FpMatrix:
    p = aug.p
    rows = {t: FpMatrix([list(aug.phis[tmpl[t]])], p) for t in (1, 2, 3, 5, 6)}
    ell2 = _ell_subspace(aug.ell)
    u1 = _rowspace_basis(rows[1].vstack(rows[5]))
    u2 = _rowspace_basis(rows[2].vstack(rows[6]))
    h12 = _rowspace_basis(rows[1].vstack(rows[2]))
    f = frame_isomorphism(rows[3], ell2, h12, rows[3], u1, u2)
    if not _in_rowspace(rows[3], (rows[3] @ f).row(0), p):
        raise InternalWitnessFailure("frame map moved its fixed point")
    t3 = np.zeros((4, 4), dtype=f.a.dtype)
    t3[:3, :3] = f.a
    return FpMatrix(t3, p)


def _tau4(aug: AugmentedDatum, tmpl: dict[int, str], y_pt: ProjPoint2, z_pt: ProjPoint2) -> FpMatrix:
    p = aug.p
    rows = {t: FpMatrix([list(aug.phis[tmpl[t]])], p) for t in (1, 2, 3, 4, 6)}
    h12 = _rowspace_basis(rows[1].vstack(rows[2]))
    h34 = _rowspace_basis(rows[3].vstack(rows[4]))
    y_row = FpMatrix([list(y_pt.coords)], p)
    z_row = FpMatrix([list(z_pt.coords)], p)
    u1 = _rowspace_basis(y_row.vstack(rows[2]))
    u2 = _rowspace_basis(z_row.vstack(rows[1]))
    f = frame_isomorphism(rows[6], h12, h34, rows[6], u1, u2)
    chi6xi = _row4(aug.chi6, p, last=1)
    q_rows = np.vstack([np.hstack([np.eye(3, dtype=np.int64), np.zeros((3, 1), dtype=np.int64)]), chi6xi.a])
    q = FpMatrix(q_rows, p)
    qp_rows = np.vstack([np.hstack([f.a, np.zeros((3, 1), dtype=f.a.dtype)]), chi6xi.a])
    qp = FpMatrix(qp_rows % p, p)
    if q.rank() != 4:
        raise InternalWitnessFailure("frame for the fourth projection is degenerate")
    return q.inverse() @ qp


def block_datum(aug: AugmentedDatum, i: int, j: int) -> tuple[AugmentedDatum, list[Step], BlockState]:
    """Linear-data implementation of the block move on roles (i, j).

    Emits the CS/Merge/Trivial sequence (exponent 1/16) carrying the
    augmented datum to one representing the moved configuration; the
    degenerate case where the two pencils meet on the back line reduces to a
    label swap with no CS cost.
    """
    p = aug.p
    state = aug.block_state()
    new_state = block_geometry(state, i, j)
    respected0 = aug.roles[1]

    ks = [k for k in (1, 2, 3, 4) if k not in (i, j)]
    troles = {1: i, 2: j, 3: ks[0], 4: ks[1], 5: 5, 6: 6}
    tmpl = {t: aug.roles[r] for t, r in troles.items()}
    tpoint = {t: state.point(r) for t, r in troles.items()}

    back = join(tpoint[3], tpoint[4])
    y_pt = meet(join(tpoint[1], tpoint[5]), back)
    z_pt = meet(join(tpoint[2], tpoint[6]), back)

    if y_pt == z_pt:
        # the block only swaps the moving points: relabel and pay nothing
        l5, l6 = aug.roles[5], aug.roles[6]
        tau = {l5: l6, l6: l5}
        d_after = apply_merge(aug.to_datum(), tau)
        step = MergeStep(tau, respected0, respected0)
        aug2 = AugmentedDatum(
            p, dict(aug.roles),
            {**aug.phis, l5: aug.phis[l6], l6: aug.phis[l5]},
            aug.chi6, aug.chi5, aug.ell,
        )
        d2 = aug2.to_datum()
        if any(d2.maps[l] != d_after.maps[l] for l in LABELS):
            raise InternalWitnessFailure("swap relabel mismatch")
        _assert_moved(aug2, new_state)
        return aug2, [step], new_state

    t1 = _tau1(aug, tmpl, y_pt, z_pt)
    t2 = _tau2(aug, tmpl)
    t3 = _tau3(aug, tmpl)
    t4 = _tau4(aug, tmpl, y_pt, z_pt)
    d0 = aug.to_datum()
    m = {t: d0.maps[tmpl[t]] for t in (1, 2, 3, 4, 5, 6)}
    for mat, fixed in ((t1, (3, 4)), (t2, (5, 6)), (t3, (3,)), (t4, (6,))):
        for t in fixed:
            if (m[t] @ mat) != m[t]:
                raise InternalWitnessFailure(f"projection failed to fix role {t}")

    h = {t: _rowspace_basis(m[t]) for t in (1, 2, 3, 4, 5, 6)}
    y_row = _row4(y_pt.coords, p)
    z_row = _row4(z_pt.coords, p)
    hp5 = _rowspace_basis(y_row.vstack(h[2]) @ t2)
    hp6 = _rowspace_basis(z_row.vstack(h[1]) @ t2)

    phi5p = new_state.x5.coords
    phi6p = new_state.x6.coords
    chi5p = _chi_from_h(hp5, phi5p, p)
    chi6p = _chi_from_h(hp6, phi6p, p)

    aug2 = AugmentedDatum(
        p, dict(aug.roles),
        {**aug.phis, aug.roles[5]: phi5p, aug.roles[6]: phi6p},
        chi5p, chi6p, aug.ell,
    )
    aug2.validate()

    pipe = _Pipeline(aug, tmpl)
    lab = tmpl
    resp = respected0
    pipe.cs(lab[6], resp)
    resp += ".0"
    pipe.merge({lab[5] + ".0": "R", lab[5] + ".1": "R"}, resp)
    pipe.cs("R", resp)
    resp += ".0"
    pipe.cs(lab[3] + ".0.1", resp)
    resp += ".0"
    pipe.merge({lab[4] + ".0.1.0": "R", lab[4] + ".0.1.1": "R"}, resp)
    pipe.cs("R", resp)
    resp += ".0"

    s1, s2 = easy_prune_pair(m[5], m[6])
    squares = [
        (["0010", "1010", "0110", "1110"], "0110"),
        (["0011", "1011", "0111", "1111"], "0111"),
        (["0001", "1001", "0101", "1101"], "0101"),
    ]
    for square, kept in squares:
        v_s1 = kept[0] + "0" + kept[2:]  # reached from kept through s1 (edge 5)
        v_s2 = "1" + kept[1:]            # reached through s2 (edge 6)
        v_s12 = "10" + kept[2:]
        assert sorted([v_s1, v_s2, v_s12, kept]) == sorted(square)
        pipe.prune_square(
            [v_s1, v_s2, v_s12, kept], kept, s1, s2,
            _vertex_label(lab[5], kept), _vertex_label(lab[6], kept), resp,
        )

    a_members = sorted(
        [_vertex_label(lab[1], "1000"), _vertex_label(lab[2], "1000"),
         _vertex_label(lab[1], "1100"), _vertex_label(lab[2], "1100"),
         _vertex_label(lab[5], "0110"), _vertex_label(lab[6], "0110"),
         _vertex_label(lab[5], "0111"), _vertex_label(lab[6], "0111"),
         _vertex_label(lab[5], "0101"), _vertex_label(lab[1], "0101"),
         _vertex_label(lab[2], "0100")]
    )
    b_members = sorted(
        [_vertex_label(lab[3], "1000"), _vertex_label(lab[4], "1000"),
         _vertex_label(lab[3], "1100"), _vertex_label(lab[4], "1100"),
         _vertex_label(lab[1], "0110"), _vertex_label(lab[2], "0110"),
         _vertex_label(lab[1], "0111"), _vertex_label(lab[2], "0111"),
         _vertex_label(lab[6], "0101"), _vertex_label(lab[2], "0101"),
         _vertex_label(lab[1], "0100")]
    )
    tau_ab = {l: "A" for l in a_members}
    tau_ab.update({l: "B" for l in b_members})
    pipe.merge(tau_ab, resp)
    relabel = {_vertex_label(lab[t], "0000"): lab[t] for t in (1, 2, 3, 4)}
    relabel.update({"A": lab[5], "B": lab[6]})
    pipe.merge(relabel, resp)
    resp = respected0

    # closing trivial: embed V' diagonally through the four projections
    composites = {
        "0000": FpMatrix.identity(4, p),
        "0100": t2,
        "1000": t4 @ t2,
        "1100": t4 @ t2,
        "0101": t1 @ t2,
        "0110": t3 @ t1 @ t2,
        "0111": t3 @ t1 @ t2,
    }
    d_to = aug2.to_datum()
    j_stacked = None
    for v in pipe.verts:
        piece = composites[v]
        j_stacked = piece if j_stacked is None else j_stacked.vstack(piece)
    e_old = None
    for v in pipe.verts:
        e_old = pipe.blocks[v] if e_old is None else e_old.vstack(pipe.blocks[v])
    theta = e_old.solve_matrix(j_stacked)
    if theta is None or (e_old @ theta) != j_stacked:
        raise InternalWitnessFailure("closing embedding is not inside the graph space")
    sigmas = {}
    for lbl in pipe.d.labels:
        sig = solve_sigma(pipe.d, d_to, theta, lbl)
        if sig is None:
            raise InternalWitnessFailure(f"closing witness missing for {lbl}")
        sigmas[lbl] = sig
    if not check_trivial(pipe.d, d_to, theta, sigmas, respected0):
        raise InternalWitnessFailure("closing trivial step failed validation")
    pipe.steps.append(TrivialStep(d_to, theta, sigmas, respected0, respected0))

    _assert_moved(aug2, new_state)
    return aug2, pipe.steps, new_state


def _vertex_label(base: str, bits: str) -> str:
    return base + "." + ".".join(bits)


def _chi_from_h(h_basis: FpMatrix, phi_row, p: int) -> tuple[int, int, int]:
    """chi in the line subspace with span(phi, xi + chi) containing H'."""
    phi4 = _row4(phi_row, p)
    for r in range(h_basis.rows):
        row = h_basis.row(r)
        if row[3] != 0:
            inv = pow(row[3], -1, p)
            chi = tuple(c * inv % p for c in row[:3])
            target = FpMatrix([list(phi_row) + [0], list(chi) + [1]], p)
            for k in range(h_basis.rows):
                if not _in_rowspace(target, h_basis.row(k), p):
                    raise InternalWitnessFailure("pruned plane exceeds the moved pencil")
            return chi  # type: ignore[return-value]
    # H' is inside the plane at infinity: it must be the moved point itself
    for k in range(h_basis.rows):
        if not _in_rowspace(phi4, h_basis.row(k), p):
            raise InternalWitnessFailure("pruned plane is not the moved point")
    return (0, 0, 0)


def _assert_moved(aug2: AugmentedDatum, new_state: BlockState) -> None:
    if aug2.point(5) != new_state.x5 or aug2.point(6) != new_state.x6:
        raise InternalWitnessFailure("datum and geometry disagree on the moved points")


# -- role assignment and the full plan ---------------------------------------


def assign_roles(sys: FormSystem, target: str) -> dict[int, str]:
    """Roles 1..6 for the walk: the target is role 1; the moving pair (5, 6)
    is the lexicographically first pair leaving four points in general
    position off their join."""
    pts = sys.points()
    others = [l for l in LABELS if l != target]
    if len({pts[l].coords for l in LABELS}) != 6:
        raise UnplannableLabeling("points are not distinct")
    for a, b in itertools.combinations(others, 2):
        four = [target] + [l for l in others if l not in (a, b)]
        if any(
            collinear(pts[x], pts[y], pts[z])
            for x, y, z in itertools.combinations(four, 3)
        ):
            continue
        ell = join(pts[a], pts[b])
        if any(incident(pts[l], ell) for l in four):
            continue
        return {1: target, 2: four[1], 3: four[2], 4: four[3], 5: a, 6: b}
    raise UnplannableLabeling(f"no admissible role assignment for target {target}")


def initial_augmented(sys: FormSystem, roles: dict[int, str]) -> AugmentedDatum:
    ell = join(sys.point(roles[5]), sys.point(roles[6]))
    aug = AugmentedDatum(
        sys.p,
        roles,
        {l: sys.reduced(l) for l in LABELS},
        (0, 0, 0),
        (0, 0, 0),
        ell,
    )
    aug.validate()
    return aug


def plan(sys: FormSystem, target: str = "1", stats: dict | None = None) -> Certificate:
    """Synthesize a full certificate for the system at the target index.

    When given, `stats` is filled with the planned word length, the number
    of blocks actually expanded, and the integer chart lifts.
    """
    if target not in LABELS:
        raise ValueError(f"target must be one of {LABELS}")
    report = analyze(sys)
    if not report.true_complexity_is_one:
        raise NotTrueComplexityOne(report.conic_witness)

    initial_rows = {l: sys.reduced(l) for l in LABELS}
    immediate = make_endgame(initial_rows, sys.p, target)
    if immediate is not None:
        if stats is not None:
            stats.update({"word_length": 0, "blocks_used": 0, "lift": (0, 0)})
        final_rows = tuple(initial_rows[l] for l in LABELS)
        return Certificate(
            sys.p, tuple(sys.lift(l) for l in LABELS), target,
            (immediate,), final_rows, immediate.exponent_log2,
        )

    roles = assign_roles(sys, target)
    aug = initial_augmented(sys, roles)
    d_std = sys.standard_datum()
    steps: list[Step] = [make_augmented_forward(aug, d_std, target)]

    r, s = x5_coordinates_raw(
        sys.lift(roles[1]), sys.lift(roles[2]), sys.lift(roles[3]),
        sys.lift(roles[5]), sys.lift(roles[6]),
    )
    if r == 0 or s == 0:
        raise InternalWitnessFailure("walk entered with a degenerate chart point")
    word = euclid_word(r, s)
    state = aug.block_state()
    blocks_used = 0
    _assert_off_conic(state)
    for (i, j) in word:
        if _walk_collinearity(state) is not None:
            break
        aug, block_steps, state = block_datum(aug, i, j)
        steps.extend(block_steps)
        blocks_used += 1
        _assert_off_conic(state)
    stop = _walk_collinearity(state)
    if stop is None:
        raise InternalWitnessFailure("walk finished without reaching a collinear triple")
    if stats is not None:
        stats.update({"word_length": len(word), "blocks_used": blocks_used, "lift": (r, s)})

    closing, d_final = make_augmented_reverse(aug, target)
    steps.append(closing)
    final_rows_map = {l: aug.phis[l] for l in LABELS}
    endgame = make_endgame(final_rows_map, sys.p, target)
    if endgame is None:
        raise InternalWitnessFailure("no endgame at the stopping configuration")
    steps.append(endgame)

    denom = sum(1 for st in steps if isinstance(st, CSStep)) + endgame.exponent_log2
    final_rows = tuple(final_rows_map[l] for l in LABELS)
    return Certificate(
        sys.p, tuple(sys.lift(l) for l in LABELS), target,
        tuple(steps), final_rows, denom,
    )
