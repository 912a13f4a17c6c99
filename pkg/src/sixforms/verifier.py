"""Numerical ground truth for certificates.

Everything in this module evaluates averages by full enumeration over small
groups: the multilinear average of a linear datum, the degree-2 uniformity
norm (via DFT, cross-checked against the direct quadruple sum), the
end-to-end theorem inequality for a replayed certificate, and per-step
numeric soundness checks (merge preserves the average exactly, a CS step
square-roots it, a trivial step dominates it through an explicitly
constructed coset representative).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ffield import FpMatrix
from .lindata import Certificate, CSStep, LinearDatum, MergeStep, TrivialStep, merged_map, normalize_tau, replay

SIZE_GUARD = 10**9
TOL = 1e-9


class TooLarge(ValueError):
    pass


class ReplayFailed(ValueError):
    pass


@dataclass(frozen=True)
class FunctionTable:
    """Complex function on F_p^k (p^k <= 2^16), sup-norm at most 1.

    Values are indexed lexicographically: the first coordinate is the most
    significant digit.
    """

    p: int
    k: int
    values: np.ndarray

    def __post_init__(self) -> None:
        size = self.p**self.k
        if size > 1 << 16:
            raise TooLarge(f"group of size {size} exceeds the table guard")
        if self.values.shape != (size,):
            raise ValueError("value count does not match the group")
        if np.max(np.abs(self.values)) > 1 + 1e-12:
            raise ValueError("sup-norm exceeds 1")

    @staticmethod
    def constant(p: int, k: int, value: complex = 1.0) -> "FunctionTable":
        return FunctionTable(p, k, np.full(p**k, value, dtype=np.complex128))

    @staticmethod
    def random_phases(p: int, k: int, rng: np.random.Generator) -> "FunctionTable":
        phases = rng.uniform(0.0, 1.0, p**k)
        return FunctionTable(p, k, np.exp(2j * np.pi * phases))


def random_tuple(d: LinearDatum, n: int, rng: np.random.Generator) -> dict[str, FunctionTable]:
    return {l: FunctionTable.random_phases(d.p, d.target_dim(l) * n, rng) for l in d.labels}


def _digit_matrix(idx: np.ndarray, p: int, width: int) -> np.ndarray:
    digits = np.empty((idx.size, width), dtype=np.int64)
    rest = idx.copy()
    for pos in range(width - 1, -1, -1):
        digits[:, pos] = rest % p
        rest //= p
    return digits


def lambda_avg(d: LinearDatum, fs: dict[str, FunctionTable], n: int = 1,
               guard: int = SIZE_GUARD) -> complex:
    """Exact multilinear average by full enumeration, compensated summation."""
    p = d.p
    total = p ** (n * d.base_dim)
    if total > guard:
        raise TooLarge(f"enumeration of size {total} refused")
    for l in d.labels:
        if fs[l].p != p or fs[l].k != d.target_dim(l) * n:
            raise ValueError(f"table for {l} lives on the wrong group")
    mats = {l: np.asarray(d.maps[l].a, dtype=np.int64) for l in d.labels}
    batch = 1 << 15
    acc = 0.0 + 0.0j
    comp = 0.0 + 0.0j  # Kahan compensation across batches
    for start in range(0, total, batch):
        idx = np.arange(start, min(start + batch, total), dtype=np.int64)
        digits = _digit_matrix(idx, p, n * d.base_dim).reshape(-1, n, d.base_dim)
        prod = np.ones(idx.size, dtype=np.complex128)
        for l in d.labels:
            w = digits @ mats[l].T % p  # (N, n, w_l)
            flat = w.reshape(idx.size, -1)
            key = np.zeros(idx.size, dtype=np.int64)
            for c in range(flat.shape[1]):
                key = key * p + flat[:, c]
            prod *= fs[l].values[key]
        term = prod.sum() - comp
        new_acc = acc + term
        comp = (new_acc - acc) - term
        acc = new_acc
    value = acc / total
    if abs(value) > 1 + 1e-9:
        raise AssertionError("average exceeded the trivial bound")
    return complex(value)


def u2_norm(f: FunctionTable) -> float:
    """Degree-2 uniformity norm, via the Fourier fourth-moment identity."""
    grid = f.values.reshape((f.p,) * f.k)
    fhat = np.fft.fftn(grid) / f.p**f.k
    return float(np.sum(np.abs(fhat) ** 4) ** 0.25)


def u2_norm_direct(f: FunctionTable) -> float:
    """Quadruple-sum oracle; cost |G|^3, intended for |G| <= 64."""
    size = f.p**f.k
    if size > 64:
        raise TooLarge("direct quadruple sum refused beyond |G| = 64")
    digits = _digit_matrix(np.arange(size, dtype=np.int64), f.p, f.k)

    def key(mat):
        out = np.zeros(mat.shape[0], dtype=np.int64)
        for c in range(mat.shape[1]):
            out = out * f.p + mat[:, c] % f.p
        return out

    total = 0.0 + 0.0j
    v = f.values
    for xi in range(size):
        x_h2 = key((digits[xi] + digits) % f.p)  # x + h2 over all h2
        for hi in range(size):
            xh1 = key((digits[xi] + digits[hi]).reshape(1, -1) % f.p)[0]
            x_h1_h2 = key((digits[xi] + digits[hi] + digits) % f.p)
            total += v[xi] * np.conj(v[xh1]) * np.sum(np.conj(v[x_h2]) * v[x_h1_h2])
    return float(abs(total / size**3) ** 0.25)


@dataclass(frozen=True)
class TheoremReport:
    worst_margin: float
    trials: int
    seed: int
    group: str
    exponent_log2_denominator: int
    failures: int

    def to_json(self) -> dict:
        return {
            "worst_margin": self.worst_margin,
            "trials": self.trials,
            "seed": self.seed,
            "group": self.group,
            "exponent_log2_denominator": self.exponent_log2_denominator,
            "failures": self.failures,
        }


def check_theorem(cert: Certificate, trials: int, n: int = 1, seed: int = 0,
                  guard: int = SIZE_GUARD) -> TheoremReport:
    """|Lambda| <= ||f_target||_{U^2}^{2^-k} + TOL over random phase tuples.

    The certificate is replayed first; the exponent claim is then tested
    against seeded random unit-modulus inputs on the initial system.
    """
    try:
        replay(cert)
    except Exception as e:
        raise ReplayFailed(str(e)) from e
    d = cert.initial_datum()
    exponent = 2.0 ** (-cert.exponent_log2_denominator)
    rng = np.random.default_rng(seed)
    worst = -1.0
    failures = 0
    for _ in range(trials):
        fs = random_tuple(d, n, rng)
        lam = abs(lambda_avg(d, fs, n, guard))
        bound = u2_norm(fs[cert.target]) ** exponent
        margin = bound + TOL - lam
        worst = max(worst, lam - bound)
        if margin < 0:
            failures += 1
    return TheoremReport(worst, trials, seed, f"{d.p}^{n}", cert.exponent_log2_denominator, failures)


def _theta_image_cosets(d_from: LinearDatum, theta: FpMatrix, respected: str) -> list[np.ndarray]:
    """Coset representatives of im(theta) in the base, chosen in ker(psi_j)."""
    p = d_from.p
    image = theta.T  # rows span im(theta)
    kerj = d_from.maps[respected].kernel_basis()
    inter = image.kernel_basis().vstack(kerj.kernel_basis()).kernel_basis()  # im ^ ker
    rows = [r for r in inter.a]
    rank = FpMatrix(np.array(rows), p).rank() if rows else 0
    comp = []
    for r in kerj.a:
        trial = rows + [r]
        if FpMatrix(np.array(trial), p).rank() == rank + 1:
            rows.append(r)
            comp.append(r)
            rank += 1
    want = d_from.base_dim - image.rank()
    if len(comp) != want:
        raise AssertionError("coset complement has the wrong dimension")
    reps = []
    for idx in range(p ** len(comp)):
        digits = _digit_matrix(np.array([idx], dtype=np.int64), p, max(len(comp), 1))[0]
        v = np.zeros(d_from.base_dim, dtype=np.int64)
        for c, row in zip(digits[-len(comp):] if comp else [], comp):
            v = (v + c * np.asarray(row)) % p
        reps.append(v)
    return reps


def check_step_numeric(step, d_before: LinearDatum, d_after: LinearDatum,
                       fs: dict[str, FunctionTable], n: int = 1,
                       guard: int = SIZE_GUARD) -> bool:
    """Numeric soundness of one step at enumeration scale.

    Merge: the average is preserved exactly.  CS: the square-root inequality
    with conjugated duplicates.  Trivial: domination via the best coset
    representative from the proof's recipe.
    """
    p = d_before.p
    lam_before = lambda_avg(d_before, fs, n, guard)
    if isinstance(step, MergeStep):
        gs = _merge_tables(step, d_before, d_after, fs, n)
        lam_after = lambda_avg(d_after, gs, n, guard)
        return abs(lam_before - lam_after) <= TOL
    if isinstance(step, CSStep):
        gs = {}
        for lbl in d_before.labels:
            if lbl == step.j:
                continue
            gs[lbl + ".0"] = fs[lbl]
            gs[lbl + ".1"] = FunctionTable(p, fs[lbl].k, np.conj(fs[lbl].values))
        lam_after = lambda_avg(d_after, gs, n, guard)
        return abs(lam_before) <= abs(lam_after) ** 0.5 + TOL
    if isinstance(step, TrivialStep):
        if n != 1:
            raise TooLarge("trivial-step check implemented for n = 1")
        gs, lam_after = _best_coset_tables(step, d_before, d_after, fs, guard)
        return abs(lam_before) <= lam_after + TOL
    raise ValueError(f"no numeric check for step kind {getattr(step, 'kind', step)}")


def _merge_tables(step: MergeStep, d_before: LinearDatum, d_after: LinearDatum,
                  fs: dict[str, FunctionTable], n: int) -> dict[str, FunctionTable]:
    p = d_before.p
    full = normalize_tau(d_before, step.tau)
    classes: dict[str, list[str]] = {}
    for lbl in d_before.labels:
        classes.setdefault(full[lbl], []).append(lbl)
    gs = {}
    for tgt, members in classes.items():
        if len(members) == 1:
            gs[tgt] = fs[members[0]]
            continue
        members = sorted(members)
        _, image_basis = merged_map(d_before, members)
        w = d_after.target_dim(tgt)
        size = p ** (w * n)
        idx = np.arange(size, dtype=np.int64)
        coords = _digit_matrix(idx, p, w * n).reshape(size, n, w)
        ambient = coords @ np.asarray(image_basis.a, dtype=np.int64) % p  # (size, n, sum w_i)
        vals = np.ones(size, dtype=np.complex128)
        offset = 0
        for m in members:
            wm = d_before.target_dim(m)
            piece = ambient[:, :, offset : offset + wm].reshape(size, -1)
            key = np.zeros(size, dtype=np.int64)
            for c in range(piece.shape[1]):
                key = key * p + piece[:, c]
            vals *= fs[m].values[key]
            offset += wm
        gs[tgt] = FunctionTable(p, w * n, vals)
    return gs


def _best_coset_tables(step: TrivialStep, d_before: LinearDatum, d_after: LinearDatum,
                       fs: dict[str, FunctionTable], guard: int):
    p = d_before.p
    reps = _theta_image_cosets(d_before, step.theta, step.respected_before)
    best, best_val = None, -1.0
    mats = {l: np.asarray(d_before.maps[l].a, dtype=np.int64) for l in d_before.labels}
    sig = {l: np.asarray(step.sigmas[l].a, dtype=np.int64) for l in d_before.labels}
    for rep in reps:
        gs = {}
        for lbl in d_before.labels:
            shift = mats[lbl] @ rep % p
            w_to = d_after.target_dim(lbl)
            size = p**w_to
            coords = _digit_matrix(np.arange(size, dtype=np.int64), p, w_to)
            moved = (coords @ sig[lbl].T + shift) % p
            key = np.zeros(size, dtype=np.int64)
            for c in range(moved.shape[1]):
                key = key * p + moved[:, c]
            gs[lbl] = FunctionTable(p, w_to, fs[lbl].values[key])
        val = abs(lambda_avg(d_after, gs, 1, guard))
        if val > best_val:
            best, best_val = gs, val
    return best, best_val
