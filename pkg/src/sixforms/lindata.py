"""Linear data and the three certificate moves.

A linear datum is a base space F_p^d together with labelled surjections onto
small target spaces, the object acted on by the game moves:

* a CS move replaces the base by the fiber product of it with itself over one
  target, duplicating every other label with ``.0`` / ``.1`` suffixes;
* a MERGE move groups labels, stacking their maps and corestricting onto the
  image (kernels intersect; singleton classes keep their map verbatim);
* a TRIVIAL move rewrites the datum along an explicitly witnessed morphism
  (theta between base spaces, sigma per label) and is only ever *checked*,
  never derived, at replay time.

Certificates record the move sequence with all witnesses plus a respected
label threaded through every step, and replay independently of the planner.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .ffield import FpMatrix


class UnknownLabel(KeyError):
    pass


class NonSurjectiveTau(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class InvalidStep(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class LinearDatum:
    """Base space F_p^base_dim with surjections maps[label] onto F_p^{w}."""

    p: int
    base_dim: int
    labels: tuple[str, ...]
    maps: dict[str, FpMatrix]

    def __post_init__(self) -> None:
        if set(self.labels) != set(self.maps):
            raise ValueError("labels and maps disagree")
        for lbl in self.labels:
            m = self.maps[lbl]
            if m.cols != self.base_dim:
                raise DimensionMismatch(f"map {lbl} has {m.cols} columns, base is {self.base_dim}")
            if m.rows < 1 or m.rank() != m.rows:
                raise ValueError(f"map {lbl} is not surjective")

    def target_dim(self, label: str) -> int:
        return self.maps[label].rows

    def map(self, label: str) -> FpMatrix:
        if label not in self.maps:
            raise UnknownLabel(label)
        return self.maps[label]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearDatum)
            and self.p == other.p
            and self.base_dim == other.base_dim
            and self.labels == other.labels
            and all(self.maps[l] == other.maps[l] for l in self.labels)
        )


def standard_datum(rows, p: int, labels=None) -> LinearDatum:
    """Datum of a system of linear forms: one 1-dim map per coefficient row."""
    labels = tuple(labels) if labels else tuple(str(i + 1) for i in range(len(rows)))
    maps = {lbl: FpMatrix([list(r)], p) for lbl, r in zip(labels, rows)}
    dim = len(rows[0])
    return LinearDatum(p, dim, labels, maps)


def apply_cs(d: LinearDatum, j: str) -> LinearDatum:
    """Fiber product of the base with itself over target j.

    New base dimension is 2*base_dim - dim W_j; every label i != j splits
    into i.0 (left copy) and i.1 (right copy).
    """
    mj = d.map(j)
    constraint = mj.hstack(mj.scale(-1))
    k = constraint.kernel_basis()  # rows: basis of the fiber product
    left = FpMatrix(k.a[:, : d.base_dim], d.p).T
    right = FpMatrix(k.a[:, d.base_dim :], d.p).T
    labels: list[str] = []
    maps: dict[str, FpMatrix] = {}
    for lbl in d.labels:
        if lbl == j:
            continue
        maps[lbl + ".0"] = d.maps[lbl] @ left
        maps[lbl + ".1"] = d.maps[lbl] @ right
        labels += [lbl + ".0", lbl + ".1"]
    # keep the two copies of the index set grouped as (all .0, all .1)
    labels.sort(key=lambda s: (s.rsplit(".", 1)[1], d.labels.index(s.rsplit(".", 1)[0])))
    return LinearDatum(d.p, k.rows, tuple(labels), maps)


def normalize_tau(d: LinearDatum, tau: dict[str, str]) -> dict[str, str]:
    """Complete a merge map: labels absent from tau map to themselves."""
    full = {}
    for lbl in d.labels:
        full[lbl] = tau.get(lbl, lbl)
    for src in tau:
        if src not in d.maps:
            raise UnknownLabel(src)
    return full


def merged_map(d: LinearDatum, members: list[str]) -> tuple[FpMatrix, FpMatrix]:
    """(new map, image basis) for a merge class, in canonical echelon form.

    The stacked map S is corestricted onto its image: the image basis B is
    the RREF of S^T, and the new map consists of the pivot rows of S, so the
    inclusion of the new target back into the stacked target is B^T.
    """
    stacked = d.maps[members[0]]
    for m in members[1:]:
        stacked = stacked.vstack(d.maps[m])
    basis, piv = stacked.T.rref()
    b = FpMatrix(basis.a[: len(piv)], d.p)
    new_map = FpMatrix(stacked.a[list(piv), :], d.p)
    return new_map, b


def apply_merge(d: LinearDatum, tau: dict[str, str]) -> LinearDatum:
    """MERGE along a total surjective label map; singletons keep their map."""
    full = normalize_tau(d, tau)
    classes: dict[str, list[str]] = {}
    for lbl in d.labels:
        classes.setdefault(full[lbl], []).append(lbl)
    new_labels = []
    seen = set()
    for lbl in d.labels:  # output order follows first occurrence
        tgt = full[lbl]
        if tgt not in seen:
            seen.add(tgt)
            new_labels.append(tgt)
    if len(new_labels) != len(classes):
        raise NonSurjectiveTau("duplicate class names")
    maps = {}
    for tgt, members in classes.items():
        if len(members) == 1:
            maps[tgt] = d.maps[members[0]]
        else:
            maps[tgt] = merged_map(d, sorted(members))[0]
    return LinearDatum(d.p, d.base_dim, tuple(new_labels), maps)


def check_trivial(
    d_from: LinearDatum,
    d_to: LinearDatum,
    theta: FpMatrix,
    sigmas: dict[str, FpMatrix],
    respected: str,
) -> bool:
    """Do (theta, sigmas) witness that d_to dominates d_from at `respected`?

    theta maps base(d_to) -> base(d_from) and every square
    map_from[i] . theta = sigma[i] . map_to[i] must commute, with
    sigma[respected] the identity on an unchanged target.
    """
    if set(d_from.labels) != set(d_to.labels):
        raise DimensionMismatch("label sets differ")
    if theta.rows != d_from.base_dim or theta.cols != d_to.base_dim:
        raise DimensionMismatch(
            f"theta is {theta.shape}, need {d_from.base_dim}x{d_to.base_dim}"
        )
    for lbl in d_from.labels:
        sig = sigmas.get(lbl)
        if sig is None:
            return False
        if sig.rows != d_from.target_dim(lbl) or sig.cols != d_to.target_dim(lbl):
            return False
        if (d_from.maps[lbl] @ theta) != (sig @ d_to.maps[lbl]):
            return False
    if d_from.target_dim(respected) != d_to.target_dim(respected):
        return False
    if sigmas[respected] != FpMatrix.identity(d_from.target_dim(respected), d_from.p):
        return False
    return True


def solve_sigma(d_from: LinearDatum, d_to: LinearDatum, theta: FpMatrix, lbl: str) -> FpMatrix | None:
    """The unique sigma with map_from . theta = sigma . map_to, if it exists."""
    lhs = d_from.maps[lbl] @ theta
    sig = lhs @ d_to.maps[lbl].right_inverse()
    if (sig @ d_to.maps[lbl]) != lhs:
        return None
    return sig


# -- graphs of vector spaces ----------------------------------------------


@dataclass(frozen=True)
class GraphOfSpaces:
    """Multigraph with a subspace of the ambient space on every edge.

    Edge subspaces are given by kernel bases (rows spanning H_e); the
    realized space consists of vertex tuples whose edge differences lie in
    the edge subspace.
    """

    p: int
    base_dim: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, FpMatrix], ...]

    def constraint_rows(self, va: str, vb: str, h_basis: FpMatrix) -> FpMatrix:
        perp = h_basis.kernel_basis()  # functionals vanishing on H_e
        return perp


def realize_graph(g: GraphOfSpaces) -> tuple[FpMatrix, int]:
    """Basis (rows) and dimension of the realized subspace of V^vertices."""
    n = len(g.vertices)
    idx = {v: i for i, v in enumerate(g.vertices)}
    rows = []
    for va, vb, h in g.edges:
        if h.cols != g.base_dim:
            raise DimensionMismatch("edge subspace lives in the wrong ambient space")
        perp = g.constraint_rows(va, vb, h)
        for r in range(perp.rows):
            row = np.zeros(n * g.base_dim, dtype=perp.a.dtype)
            row[idx[va] * g.base_dim : (idx[va] + 1) * g.base_dim] = perp.a[r]
            row[idx[vb] * g.base_dim : (idx[vb] + 1) * g.base_dim] = (-perp.a[r]) % g.p
            rows.append(row)
    if not rows:
        basis = FpMatrix.identity(n * g.base_dim, g.p)
        return basis, n * g.base_dim
    constraints = FpMatrix(np.array(rows), g.p)
    basis = constraints.kernel_basis()
    return basis, basis.rows


# -- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class CSStep:
    j: str
    respected_before: str
    respected_after: str
    exponent_log2 = 1
    kind = "cs"


@dataclass(frozen=True)
class MergeStep:
    tau: dict[str, str]  # only the non-identity assignments
    respected_before: str
    respected_after: str
    exponent_log2 = 0
    kind = "merge"


@dataclass(frozen=True)
class TrivialStep:
    to_datum: LinearDatum
    theta: FpMatrix
    sigmas: dict[str, FpMatrix]
    respected_before: str
    respected_after: str
    exponent_log2 = 0
    kind = "trivial"


@dataclass(frozen=True)
class EndgameStep:
    """Terminal step: the final datum is a six-form system with a usable
    collinear triple; variant "csc" partitions the other five labels with
    exponent 1, variant "skew" spends one more CS for exponent 1/2."""

    variant: str  # "csc" | "skew"
    respected: str
    collinear: tuple[str, str, str]
    partition: tuple[tuple[str, ...], ...]  # csc: label classes
    cs_label: str | None  # skew: the label Cauchy-Schwarzed first
    s_class: tuple[tuple[str, int], ...]  # skew: (label, copy) pairs
    t_class: tuple[tuple[str, int], ...]
    kind = "endgame"

    @property
    def exponent_log2(self) -> int:
        return 1 if self.variant == "skew" else 0

    @property
    def respected_before(self) -> str:
        return self.respected

    @property
    def respected_after(self) -> str:
        return self.respected


Step = CSStep | MergeStep | TrivialStep | EndgameStep


@dataclass(frozen=True)
class Certificate:
    p: int
    initial_rows: tuple[tuple[int, int, int], ...]  # integer coefficient lifts
    target: str
    steps: tuple[Step, ...]
    final_rows: tuple[tuple[int, ...], ...]  # residues of the final forms
    exponent_log2_denominator: int

    def initial_datum(self) -> LinearDatum:
        return standard_datum(self.initial_rows, self.p)

    @property
    def cs_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, CSStep))


def _endgame_valid(d: LinearDatum, step: EndgameStep, index: int) -> None:
    from .planner import validate_endgame  # deferred: planner builds on lindata

    validate_endgame(d, step, index)


def replay(cert: Certificate) -> LinearDatum:
    """Re-run the certificate from its initial datum, validating every step.

    CS and MERGE steps are reconstructed; TRIVIAL steps are only checked
    against their stored witnesses.  Raises InvalidStep on any failure.
    """
    d = cert.initial_datum()
    respected = cert.target
    denom = 0
    for k, step in enumerate(cert.steps):
        if step.respected_before != respected:
            raise InvalidStep(k, f"respected thread broken: {step.respected_before} != {respected}")
        if respected not in d.maps:
            raise InvalidStep(k, f"respected label {respected} is not in the datum")
        if isinstance(step, CSStep):
            if step.j == respected:
                raise InvalidStep(k, "CS move applied to the respected label")
            if step.j not in d.maps:
                raise InvalidStep(k, f"unknown CS label {step.j}")
            d = apply_cs(d, step.j)
            if step.respected_after != respected + ".0":
                raise InvalidStep(k, "CS must respect the untouched left copy")
            denom += 1
        elif isinstance(step, MergeStep):
            try:
                full = normalize_tau(d, step.tau)
            except UnknownLabel as e:
                raise InvalidStep(k, f"unknown merge label {e}") from e
            cls = [l for l in d.labels if full[l] == full[respected]]
            if cls != [respected]:
                raise InvalidStep(k, "merge class of the respected label is not a singleton")
            if step.respected_after != full[respected]:
                raise InvalidStep(k, "respected label renamed inconsistently")
            d = apply_merge(d, step.tau)
        elif isinstance(step, TrivialStep):
            if step.respected_after != step.respected_before:
                raise InvalidStep(k, "trivial step cannot rename the respected label")
            try:
                ok = check_trivial(d, step.to_datum, step.theta, step.sigmas, respected)
            except (DimensionMismatch, UnknownLabel) as e:
                raise InvalidStep(k, str(e)) from e
            if not ok:
                raise InvalidStep(k, "trivial witness fails its commuting squares")
            d = step.to_datum
        elif isinstance(step, EndgameStep):
            if k != len(cert.steps) - 1:
                raise InvalidStep(k, "endgame must be the final step")
            if step.respected != respected:
                raise InvalidStep(k, "endgame respects the wrong label")
            _endgame_valid(d, step, k)
            denom += step.exponent_log2
        else:  # pragma: no cover
            raise InvalidStep(k, f"unknown step kind {step!r}")
        respected = step.respected_after
    if denom != cert.exponent_log2_denominator:
        raise InvalidStep(len(cert.steps), f"exponent mismatch: {denom} CS-halvings, certificate claims {cert.exponent_log2_denominator}")
    final = cert.final_rows
    if len(final) != len(d.labels):
        raise InvalidStep(len(cert.steps), "final system has the wrong number of forms")
    for lbl, row in zip(sorted(d.labels, key=_label_key), final):
        if d.maps[lbl].rows != 1 or d.maps[lbl].row(0) != tuple(int(x) % cert.p for x in row):
            raise InvalidStep(len(cert.steps), f"final form {lbl} does not match the certificate")
    return d


def _label_key(lbl: str):
    return (len(lbl), lbl)


# -- JSON serialization ----------------------------------------------------


def _mat_json(m: FpMatrix) -> list[list[int]]:
    return m.tolist()


def _datum_json(d: LinearDatum) -> dict:
    return {
        "base_dim": d.base_dim,
        "labels": list(d.labels),
        "maps": {l: _mat_json(d.maps[l]) for l in d.labels},
    }


def _datum_from_json(obj: dict, p: int) -> LinearDatum:
    return LinearDatum(
        p,
        int(obj["base_dim"]),
        tuple(obj["labels"]),
        {l: FpMatrix(obj["maps"][l], p) for l in obj["labels"]},
    )


def step_to_json(step: Step) -> dict:
    if isinstance(step, CSStep):
        return {
            "kind": "cs",
            "j": step.j,
            "respected": [step.respected_before, step.respected_after],
        }
    if isinstance(step, MergeStep):
        return {
            "kind": "merge",
            "tau": dict(sorted(step.tau.items())),
            "respected": [step.respected_before, step.respected_after],
        }
    if isinstance(step, TrivialStep):
        return {
            "kind": "trivial",
            "respected": [step.respected_before, step.respected_after],
            "theta": _mat_json(step.theta),
            "sigmas": {l: _mat_json(m) for l, m in sorted(step.sigmas.items())},
            "to": _datum_json(step.to_datum),
        }
    if isinstance(step, EndgameStep):
        return {
            "kind": "endgame",
            "variant": step.variant,
            "respected": step.respected,
            "collinear": list(step.collinear),
            "partition": [list(c) for c in step.partition],
            "cs_label": step.cs_label,
            "s_class": [[l, b] for l, b in step.s_class],
            "t_class": [[l, b] for l, b in step.t_class],
        }
    raise TypeError(step)


def step_from_json(obj: dict, p: int) -> Step:
    kind = obj["kind"]
    if kind == "cs":
        return CSStep(obj["j"], obj["respected"][0], obj["respected"][1])
    if kind == "merge":
        return MergeStep(dict(obj["tau"]), obj["respected"][0], obj["respected"][1])
    if kind == "trivial":
        return TrivialStep(
            _datum_from_json(obj["to"], p),
            FpMatrix(obj["theta"], p),
            {l: FpMatrix(m, p) for l, m in obj["sigmas"].items()},
            obj["respected"][0],
            obj["respected"][1],
        )
    if kind == "endgame":
        return EndgameStep(
            obj["variant"],
            obj["respected"],
            tuple(obj["collinear"]),
            tuple(tuple(c) for c in obj["partition"]),
            obj["cs_label"],
            tuple((l, int(b)) for l, b in obj["s_class"]),
            tuple((l, int(b)) for l, b in obj["t_class"]),
        )
    raise ValueError(f"unknown step kind {kind}")


def certificate_to_json(cert: Certificate) -> str:
    doc = {
        "format": "cs-game-certificate/1",
        "prime": cert.p,
        "initial_system": [list(r) for r in cert.initial_rows],
        "target_index": cert.target,
        "steps": [step_to_json(s) for s in cert.steps],
        "final_system": [list(r) for r in cert.final_rows],
        "total_exponent": {"log2_denominator": cert.exponent_log2_denominator},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def certificate_from_json(text: str) -> Certificate:
    doc = json.loads(text)
    if doc.get("format") != "cs-game-certificate/1":
        raise ValueError("not a certificate document")
    p = int(doc["prime"])
    return Certificate(
        p,
        tuple(tuple(int(x) for x in r) for r in doc["initial_system"]),
        doc["target_index"],
        tuple(step_from_json(s, p) for s in doc["steps"]),
        tuple(tuple(int(x) for x in r) for r in doc["final_system"]),
        int(doc["total_exponent"]["log2_denominator"]),
    )
