"""The quadratic-phase construction showing the exponent must degrade.

Over primes p = +-1 (mod 8), six forms built from a square root of 2 have no
conic through them (determinant check), yet a single phase function supported
on a small two-dimensional progression X = {a + b*sqrt2} makes the sixfold
average bounded below by a constant while every U^2 norm is polynomially
small.  The module builds the system, checks the alternating-phase identity
on the admissible box, certifies the average lower bound by exact lattice
counting, and scans the phase parameter for the uniformity-norm bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ffield import FpMatrix, sqrt_mod
from .planner import FormSystem

BOX_ALPHA_DEN = 199  # lattice box radius sqrt(p)/199 for the average bound
SUPPORT_ALPHA_DEN = 49  # support radius sqrt(p)/49 for the phase function


class BadPrime(ValueError):
    pass


class PTooSmall(ValueError):
    pass


class TooLarge(ValueError):
    pass


def admissible_prime(p: int) -> bool:
    from .ffield import is_prime

    return p % 8 in (1, 7) and is_prime(p)


def fixed_sqrt2(p: int) -> int:
    """The construction's square root of 2: conjugate of the canonical root.

    With this choice the displayed coefficient matrix has determinant
    exactly 512 times the canonical root.
    """
    r = sqrt_mod(2, p)
    if r is None:
        raise BadPrime(f"2 is not a square mod {p}")
    return (p - r) % p


def build_system(p: int) -> FormSystem:
    if not admissible_prime(p):
        raise BadPrime(f"{p} is not a prime congruent to +-1 mod 8")
    s = fixed_sqrt2(p)
    rows = (
        (1 + s, 0, 1),
        ((1 - s) % p, 0, 1),
        (0, 1 + s, 1),
        (0, (1 - s) % p, 1),
        (1, 1, s),
        (1, 1, (-s) % p),
    )
    return FormSystem(p, tuple(tuple(c % p for c in r) for r in rows))


def squared_forms_matrix(p: int) -> FpMatrix:
    """Quadratic-form coefficient matrix of the six squared forms.

    Columns are (x^2, y^2, z^2, xy, xz, yz); cross-term coefficients carry
    the factor 2.  Its determinant is 512 * sqrt2 for the conjugate root
    convention of fixed_sqrt2.
    """
    sys = build_system(p)
    rows = []
    for lbl in ("1", "2", "3", "4", "5", "6"):
        a, b, c = sys.reduced(lbl)
        rows.append([a * a, b * b, c * c, 2 * a * b, 2 * a * c, 2 * b * c])
    return FpMatrix(rows, p)


def det_check(p: int) -> dict:
    m = squared_forms_matrix(p)
    expected = 512 * sqrt_mod(2, p) % p
    return {"det": m.det(), "expected": expected, "ok": m.det() == expected}


# -- the support set and phase function ------------------------------------


@dataclass(frozen=True)
class QuadraticPhaseFunction:
    """f(a + b*sqrt2) = e(R * (a^2 - 2 b^2)) on the box |a|,|b| <= sqrt(p)/49."""

    p: int
    sqrt2: int
    radius: int
    xs: np.ndarray  # support elements
    norms: np.ndarray  # a^2 - 2 b^2 per element

    @staticmethod
    def build(p: int) -> "QuadraticPhaseFunction":
        if not admissible_prime(p):
            raise BadPrime(f"{p} is not admissible")
        s = fixed_sqrt2(p)
        radius = math.isqrt(p) // SUPPORT_ALPHA_DEN
        xs, norms, seen = [], [], {}
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                x = (a + b * s) % p
                if x in seen:
                    raise AssertionError(f"representation collision at {x}")
                seen[x] = (a, b)
                xs.append(x)
                norms.append(a * a - 2 * b * b)
        return QuadraticPhaseFunction(p, s, radius, np.array(xs), np.array(norms))

    def value(self, x: int, R: float) -> complex:
        hits = np.nonzero(self.xs == x % self.p)[0]
        if hits.size == 0:
            return 0.0 + 0.0j
        return complex(np.exp(2j * np.pi * R * self.norms[hits[0]]))

    def values_on_support(self, R: float) -> np.ndarray:
        return np.exp(2j * np.pi * R * self.norms)


def unique_representation_check(p: int, radius: int | None = None) -> bool:
    """No two lattice points a + b*sqrt2 in the box coincide mod p."""
    s = fixed_sqrt2(p)
    radius = radius if radius is not None else math.isqrt(p) // 4
    seen = set()
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            x = (a + b * s) % p
            if x in seen:
                return False
            seen.add(x)
    return True


# -- the alternating-phase identity -----------------------------------------


class Z2:
    """Tiny exact arithmetic in Z[sqrt2], elements as (a, b) = a + b*sqrt2."""

    @staticmethod
    def add(u, v):
        return (u[0] + v[0], u[1] + v[1])

    @staticmethod
    def sub(u, v):
        return (u[0] - v[0], u[1] - v[1])

    @staticmethod
    def mul(u, v):
        return (u[0] * v[0] + 2 * u[1] * v[1], u[0] * v[1] + u[1] * v[0])

    @staticmethod
    def scale(c, u):
        return (c * u[0], c * u[1])

    @staticmethod
    def norm(u) -> int:
        return u[0] * u[0] - 2 * u[1] * u[1]


SQRT2 = (0, 1)
ONE = (1, 0)

FORM_COEFFS = (
    ((1, 1), (0, 0), ONE),   # (1+sqrt2) x + z
    ((1, -1), (0, 0), ONE),  # (1-sqrt2) x + z
    ((0, 0), (1, 1), ONE),
    ((0, 0), (1, -1), ONE),
    (ONE, ONE, SQRT2),       # x + y + sqrt2 z
    (ONE, ONE, (0, -1)),     # x + y - sqrt2 z
)


def lifted_forms(x, y, z):
    """The six form values in Z[sqrt2] at a lifted triple."""
    out = []
    for cx, cy, cz in FORM_COEFFS:
        out.append(Z2.add(Z2.add(Z2.mul(cx, x), Z2.mul(cy, y)), Z2.mul(cz, z)))
    return out


def alternating_norm_sum(x, y, z) -> int:
    """N(r1) - N(r2) + N(r3) - N(r4) + N(r5) - N(r6); identically zero."""
    r = lifted_forms(x, y, z)
    return sum((-1) ** i * Z2.norm(r[i]) for i in range(6))


def linear_relations_hold(r) -> bool:
    """The three Z[sqrt2]-linear relations cutting out the image of the forms."""
    one_minus = (1, -1)
    one_plus = (1, 1)
    rel1 = Z2.sub(Z2.mul(one_minus, Z2.sub(r[0], r[2])), Z2.mul(one_plus, Z2.sub(r[1], r[3])))
    rel2 = Z2.sub(
        Z2.sub(Z2.scale(2, Z2.add(r[0], r[2])), Z2.mul((1, 2), r[4])), r[5]
    )
    rel3 = Z2.sub(
        Z2.sub(Z2.scale(2, Z2.add(r[1], r[3])), r[4]), Z2.mul((1, -2), r[5])
    )
    return rel1 == (0, 0) and rel2 == (0, 0) and rel3 == (0, 0)


def skew_conic_check(p: int, triples, R: float = 0.37) -> bool:
    """Every admissible lifted triple lands in the support and contributes a
    phase product of exactly 1; returns False with no exception otherwise."""
    f = QuadraticPhaseFunction.build(p)
    support = {int(x): complex(v) for x, v in zip(f.xs, f.values_on_support(R))}
    for (x, y, z) in triples:
        r = lifted_forms(x, y, z)
        if not linear_relations_hold(r):
            return False
        if alternating_norm_sum(x, y, z) != 0:
            return False
        prod = 1.0 + 0.0j
        for idx, val in enumerate(r):
            xm = (val[0] + val[1] * f.sqrt2) % p
            if xm not in support:
                return False
            factor = support[xm]
            prod *= factor if idx % 2 == 0 else np.conj(factor)
        if abs(prod - 1.0) > 1e-9:
            return False
    return True


def box_triples(p: int, limit: int | None = None, seed: int = 0):
    """Lifted triples from the admissible box |a|,|b| <= sqrt(p)/199."""
    m = math.isqrt(p) // BOX_ALPHA_DEN
    pairs = [(a, b) for a in range(-m, m + 1) for b in range(-m, m + 1)]
    triples = [(x, y, z) for x in pairs for y in pairs for z in pairs]
    if limit is not None and len(triples) > limit:
        rng = np.random.default_rng(seed)
        picks = rng.choice(len(triples), size=limit, replace=False)
        triples = [triples[i] for i in picks]
    return triples


def lambda_lower_bound(p: int, spot_check: int = 100) -> float:
    """Certified lower bound on |Lambda|: each box triple contributes 1."""
    if not admissible_prime(p):
        raise BadPrime(f"{p} is not admissible")
    m = math.isqrt(p) // BOX_ALPHA_DEN
    if m < 1:
        raise PTooSmall(f"box radius sqrt({p})/{BOX_ALPHA_DEN} is empty")
    per_variable = (2 * m + 1) ** 2
    count = per_variable**3
    if not skew_conic_check(p, box_triples(p, limit=spot_check)):
        raise AssertionError("a sampled box triple failed the phase identity")
    return count / p**3


def u2_scan(p: int, r_grid, guard: int = 10**9) -> dict:
    """U^2 norm of the phase function for each R, via support-restricted DFT.

    Returns the minimizing R, its norm, and the grid average of the fourth
    powers (the mean-value proxy).
    """
    f = QuadraticPhaseFunction.build(p)
    if p * len(f.xs) > guard:
        raise TooLarge("support DFT too large")
    freqs = np.arange(p, dtype=np.float64)
    phase = np.exp(-2j * np.pi * np.outer(freqs, f.xs.astype(np.float64)) / p)
    norms = []
    for R in r_grid:
        vals = f.values_on_support(R)
        fhat = phase @ vals / p
        norms.append(float(np.sum(np.abs(fhat) ** 4) ** 0.25))
    norms_arr = np.array(norms)
    best = int(np.argmin(norms_arr))
    return {
        "p": p,
        "best_R": float(r_grid[best]),
        "u2_norm": float(norms_arr[best]),
        "norms": norms_arr,
        "mean_fourth_power": float(np.mean(norms_arr**4)),
        "support_size": int(len(f.xs)),
    }


def desk_scale_prime() -> int:
    """Smallest admissible prime with a nonempty average box."""
    from .ffield import is_prime

    n = BOX_ALPHA_DEN**2
    while not (is_prime(n) and n % 8 in (1, 7)):
        n += 1
    return n


def full_report(p: int, grid_size: int = 64) -> dict:
    grid = [k / grid_size for k in range(grid_size)]
    scan = u2_scan(p, grid)
    dc = det_check(p)
    return {
        "p": p,
        "sqrt2": fixed_sqrt2(p),
        "det_check": dc,
        "lambda_lower_bound": lambda_lower_bound(p),
        "best_R": scan["best_R"],
        "u2_norm": scan["u2_norm"],
        "p_pow_minus_eighth": p**-0.125,
        "mean_fourth_power": scan["mean_fourth_power"],
        "two_p_pow_minus_half": 2 * p**-0.5,
    }
