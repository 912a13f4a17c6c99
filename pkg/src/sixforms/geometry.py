"""Projective geometry of P^2(F_p) and P^1(F_p).

Points and lines are canonical homogeneous triples (first nonzero coordinate
scaled to 1), so equality and hashing are plain tuple comparisons.  On top of
the incidence layer sit the pieces the certificate planner needs: conics
through six points, the distinguished chart on the line carrying the two
moving points, the Mobius maps realised by the twelve projection moves, the
conic involution pairing them, and the word planner that drives a chart point
to [1:1] by translations-by-2 and three short gadget words.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ffield import FpMatrix

X5_INDEX = 5
X6_INDEX = 6


class DegenerateFrame(ValueError):
    """The three chart anchors were not distinct: state invariants violated."""


class X5EqualsX6(ValueError):
    pass


class InvalidIndices(ValueError):
    pass


def _canon(v: tuple[int, ...], p: int) -> tuple[int, ...]:
    v = tuple(x % p for x in v)
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("zero vector is not projective")
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


@dataclass(frozen=True)
class ProjPoint2:
    """Point of P^2(F_p): canonicalized homogeneous (x, y, z)."""

    coords: tuple[int, int, int]
    p: int

    @staticmethod
    def of(x: int, y: int, z: int, p: int) -> "ProjPoint2":
        return ProjPoint2(_canon((x, y, z), p), p)  # type: ignore[arg-type]

    def vec(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)


@dataclass(frozen=True)
class ProjLine2:
    """Line of P^2(F_p): canonicalized dual triple (a, b, c) of ax+by+cz=0."""

    coeffs: tuple[int, int, int]
    p: int

    @staticmethod
    def of(a: int, b: int, c: int, p: int) -> "ProjLine2":
        return ProjLine2(_canon((a, b, c), p), p)  # type: ignore[arg-type]


def incident(point: ProjPoint2, line: ProjLine2) -> bool:
    s = sum(a * x for a, x in zip(line.coeffs, point.coords))
    return s % point.p == 0


def _cross(u, v, p: int) -> tuple[int, int, int]:
    return (
        (u[1] * v[2] - u[2] * v[1]) % p,
        (u[2] * v[0] - u[0] * v[2]) % p,
        (u[0] * v[1] - u[1] * v[0]) % p,
    )


def join(P: ProjPoint2, Q: ProjPoint2) -> ProjLine2:
    if P == Q:
        raise ValueError("join of equal points is undefined")
    return ProjLine2.of(*_cross(P.coords, Q.coords, P.p), P.p)


def meet(l1: ProjLine2, l2: ProjLine2) -> ProjPoint2:
    if l1 == l2:
        raise ValueError("meet of equal lines is undefined")
    return ProjPoint2.of(*_cross(l1.coeffs, l2.coeffs, l1.p), l1.p)


def det3(P: ProjPoint2, Q: ProjPoint2, R: ProjPoint2) -> int:
    m = FpMatrix([list(P.coords), list(Q.coords), list(R.coords)], P.p)
    return m.det()


def collinear(P: ProjPoint2, Q: ProjPoint2, R: ProjPoint2) -> bool:
    return det3(P, Q, R) == 0


def quadratic_row(coords, p: int) -> list[int]:
    """Evaluation row of a point against (x^2, y^2, z^2, xy, xz, yz)."""
    x, y, z = (c % p for c in coords)
    return [x * x % p, y * y % p, z * z % p, x * y % p, x * z % p, y * z % p]


def conic_through(points: list[ProjPoint2]) -> tuple[int, ...] | None:
    """Coefficients of a nonzero conic through all six points, if one exists.

    The returned 6-vector is the first row of the canonical kernel basis of
    the 6x6 evaluation matrix; None means the matrix is nonsingular, i.e. no
    conic passes through the configuration.
    """
    if len(points) != 6:
        raise ValueError("exactly six points required")
    p = points[0].p
    m = FpMatrix([quadratic_row(pt.coords, p) for pt in points], p)
    ker = m.kernel_basis()
    if ker.rows == 0:
        return None
    return ker.row(0)


@dataclass(frozen=True)
class Mobius:
    """Element of PGL_2(F_p): canonicalized nonsingular 2x2 matrix."""

    m: tuple[tuple[int, int], tuple[int, int]]
    p: int

    @staticmethod
    def of(entries, p: int) -> "Mobius":
        flat = [entries[0][0], entries[0][1], entries[1][0], entries[1][1]]
        a, b, c, d = _canon(tuple(flat), p)
        if (a * d - b * c) % p == 0:
            raise ValueError("singular matrix is not a Mobius map")
        return Mobius(((a, b), (c, d)), p)

    def apply(self, pt: tuple[int, int]) -> tuple[int, int]:
        (a, b), (c, d) = self.m
        u, v = pt
        return _canon((a * u + b * v, c * u + d * v), self.p)  # type: ignore[return-value]

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other (matrix product self @ other)."""
        s, o = np.array(self.m, dtype=np.int64), np.array(other.m, dtype=np.int64)
        return Mobius.of((s @ o % self.p).tolist(), self.p)

    def inverse(self) -> "Mobius":
        (a, b), (c, d) = self.m
        return Mobius.of([[d, -b], [-c, a]], self.p)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return self.compose(other)

    def is_identity(self) -> bool:
        (a, b), (c, d) = self.m
        return b == 0 and c == 0 and a == d


def mobius_through(src, dst, p: int) -> Mobius:
    """The unique Mobius map sending three distinct points to three others."""

    def frame(tri):
        (x1, y1), (x2, y2), (x3, y3) = tri
        d = (x1 * y2 - y1 * x2) % p
        if d == 0:
            raise DegenerateFrame("first two points coincide")
        lam = (x3 * y2 - y3 * x2) * pow(d, -1, p) % p
        mu = (x1 * y3 - y1 * x3) * pow(d, -1, p) % p
        if lam == 0 or mu == 0:
            raise DegenerateFrame("third point coincides with another")
        return np.array([[lam * x1, mu * x2], [lam * y1, mu * y2]], dtype=np.int64) % p

    A, B = frame(src), frame(dst)
    adj = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]], dtype=np.int64) % p
    return Mobius.of((B @ adj % p).tolist(), p)


@dataclass(frozen=True)
class BlockState:
    """Configuration (X1..X4; X5, X6; ell) tracked along a planned walk."""

    points: tuple[ProjPoint2, ProjPoint2, ProjPoint2, ProjPoint2]
    x5: ProjPoint2
    x6: ProjPoint2
    ell: ProjLine2

    def __post_init__(self) -> None:
        p4 = self.points
        if len({pt.coords for pt in p4}) != 4:
            raise ValueError("X1..X4 must be distinct")
        for pt in p4:
            if incident(pt, self.ell):
                raise ValueError("X1..X4 must avoid the line")
        for pt in (self.x5, self.x6):
            if not incident(pt, self.ell):
                raise ValueError("X5, X6 must lie on the line")
        for a in range(4):
            for b in range(a + 1, 4):
                for c in range(b + 1, 4):
                    if collinear(p4[a], p4[b], p4[c]):
                        raise ValueError("X1..X4 must be in general position")

    @property
    def p(self) -> int:
        return self.x5.p

    def point(self, i: int) -> ProjPoint2:
        if i in (1, 2, 3, 4):
            return self.points[i - 1]
        if i == X5_INDEX:
            return self.x5
        if i == X6_INDEX:
            return self.x6
        raise InvalidIndices(f"index {i}")

    def anchor(self, i: int, j: int) -> ProjPoint2:
        """A_ij = meet(join(X_i, X_j), ell)."""
        return meet(join(self.point(i), self.point(j)), self.ell)


@dataclass(frozen=True)
class LineChart:
    """The P^1 chart of ell with A12 -> [1:0], A13 -> [0:1], A23 -> [1:1].

    b1, b2 are homogeneous representatives on ell with chart(u*b1 + v*b2)
    = [u:v]; they are scaled representatives of A12 and A13.
    """

    b1: tuple[int, int, int]
    b2: tuple[int, int, int]
    p: int

    def to_chart(self, pt: ProjPoint2) -> tuple[int, int]:
        m = FpMatrix(
            [[self.b1[0], self.b2[0]], [self.b1[1], self.b2[1]], [self.b1[2], self.b2[2]]],
            self.p,
        )
        sol = m.solve(list(pt.coords))
        if sol is None:
            # pt not on ell for this representative scale; retry all scalings
            raise ValueError("point is not on the chart's line")
        return _canon(sol, self.p)  # type: ignore[return-value]

    def from_chart(self, uv: tuple[int, int]) -> ProjPoint2:
        u, v = uv
        coords = tuple(
            (u * a + v * b) % self.p for a, b in zip(self.b1, self.b2)
        )
        return ProjPoint2.of(*coords, self.p)


def chart_on_line(state: BlockState) -> LineChart:
    p = state.p
    a12, a13, a23 = state.anchor(1, 2), state.anchor(1, 3), state.anchor(2, 3)
    if len({a12.coords, a13.coords, a23.coords}) != 3:
        raise DegenerateFrame("chart anchors are not distinct")
    m = FpMatrix(
        [[a12.coords[k], a13.coords[k]] for k in range(3)], p
    )
    sol = m.solve(list(a23.coords))
    if sol is None:
        raise DegenerateFrame("anchors not coplanar with the line")
    alpha, beta = sol
    if alpha == 0 or beta == 0:
        raise DegenerateFrame("chart anchors are projectively dependent")
    b1 = tuple(alpha * c % p for c in a12.coords)
    b2 = tuple(beta * c % p for c in a13.coords)
    return LineChart(b1, b2, p)  # type: ignore[arg-type]


def x5_coordinates_raw(x1, x2, x3, x5, x6) -> tuple[int, int]:
    """(r, s) from the four 3x3 determinants, over plain integers.

    r = |X1 X3 X5| * |X2 X5 X6|,  s = |X1 X2 X5| * |X3 X5 X6|.
    """

    def d(u, v, w) -> int:
        return (
            u[0] * (v[1] * w[2] - v[2] * w[1])
            - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0])
        )

    return d(x1, x3, x5) * d(x2, x5, x6), d(x1, x2, x5) * d(x3, x5, x6)


def x5_coordinates(state: BlockState) -> tuple[int, int]:
    """Chart coordinates [r:s] of X5, via the determinant product formula."""
    if state.x5 == state.x6:
        raise X5EqualsX6("the coordinate formula needs X5 != X6")
    p = state.p
    r, s = x5_coordinates_raw(
        state.point(1).coords,
        state.point(2).coords,
        state.point(3).coords,
        state.x5.coords,
        state.x6.coords,
    )
    return _canon((r, s), p)  # type: ignore[return-value]


def _check_pair(i: int, j: int) -> tuple[int, int]:
    if i == j or i not in (1, 2, 3, 4) or j not in (1, 2, 3, 4):
        raise InvalidIndices(f"sigma indices must be a distinct pair in 1..4, got {(i, j)}")
    rest = [k for k in (1, 2, 3, 4) if k not in (i, j)]
    return rest[0], rest[1]


def sigma(i: int, j: int, state: BlockState) -> Mobius:
    """Chart matrix of the move sending P to join(X_j, Q) ^ ell,
    Q = join(X_i, P) ^ join(X_k, X_l), with {k, l} the complementary pair.

    Interpolated through three anchor images and checked on the fourth.
    """
    k, l = _check_pair(i, j)
    chart = chart_on_line(state)
    src = [chart.to_chart(state.anchor(i, j)),
           chart.to_chart(state.anchor(i, k)),
           chart.to_chart(state.anchor(i, l))]
    dst = [chart.to_chart(state.anchor(i, j)),
           chart.to_chart(state.anchor(j, k)),
           chart.to_chart(state.anchor(j, l))]
    m = mobius_through(src, dst, state.p)
    fixed = chart.to_chart(state.anchor(k, l))
    if m.apply(fixed) != fixed:
        raise DegenerateFrame("interpolated move does not fix the fourth anchor")
    return m


def sigma_point(i: int, j: int, state: BlockState, pt: ProjPoint2) -> ProjPoint2:
    """The synthetic (per-point) action of the move on a point of ell."""
    k, l = _check_pair(i, j)
    xi, xj = state.point(i), state.point(j)
    back = join(state.point(k), state.point(l))
    if pt == xi:
        raise ValueError("point must differ from the projection centre")
    q = meet(join(xi, pt), back)
    if q == xj:
        raise DegenerateFrame("projected point hit the second centre")
    return meet(join(xj, q), state.ell)


def tau_involution(state: BlockState) -> Mobius:
    """The involution swapping A12<->A34, A13<->A24, A14<->A23 in the chart."""
    chart = chart_on_line(state)
    a = {pair: chart.to_chart(state.anchor(*pair)) for pair in ((1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3))}
    m = mobius_through(
        [a[(1, 2)], a[(1, 3)], a[(1, 4)]],
        [a[(3, 4)], a[(2, 4)], a[(2, 3)]],
        state.p,
    )
    for src, dst in (((3, 4), (1, 2)), ((2, 4), (1, 3)), ((2, 3), (1, 4))):
        if m.apply(a[src]) != a[dst]:
            raise DegenerateFrame("conic involution failed a reverse anchor")
    return m


def normalized_sigma(i: int, j: int, a: int, b: int, p: int) -> Mobius:
    """Closed-form chart matrices in the normalized coordinates
    X1=[0:0:1], X2=[1:0:1], X3=[0:-1:1], X4=[a:b:1], ell={z=0}.

    The six base maps; the other six are inverses.
    """
    table = {
        (1, 2): [[a - b - 1, a], [0, a]],
        (1, 3): [[b, 0], [b, 1 + b - a]],
        (1, 4): [[a - 1, -a], [b, -b - 1]],
        (2, 3): [[0, a], [-b, a + b]],
        (2, 4): [[a, 0], [b, 1]],
        (3, 4): [[-1, a], [0, b]],
    }
    _check_pair(i, j)
    if (i, j) in table:
        return Mobius.of(table[(i, j)], p)
    return Mobius.of(table[(j, i)], p).inverse()


# -- Euclid-style word planning -------------------------------------------
#
# Gadget words over the twelve generators, written in application order
# (first letter acts first).  Their composed chart matrices are the five
# integer matrices used by the reduction plus a swap kept for completeness.

GADGETS: dict[str, tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], tuple[int, int]]]] = {
    "U1": (((2, 4), (1, 2), (4, 1)), ((-1, 1), (0, 1))),
    "U2": (((3, 4), (2, 3), (4, 2)), ((0, 1), (1, 0))),
    "U3": (((1, 4), (3, 1), (4, 3)), ((1, 0), (1, -1))),
    "T+": (((1, 3), (3, 4), (2, 3), (3, 1), (4, 3), (3, 2)), ((1, 2), (0, 1))),
    "T-": (((2, 3), (3, 4), (1, 3), (3, 2), (4, 3), (3, 1)), ((1, -2), (0, 1))),
    "L+": (((1, 2), (2, 4), (3, 2), (2, 1), (4, 2), (2, 3)), ((1, 0), (2, 1))),
    "L-": (((3, 2), (2, 4), (1, 2), (2, 3), (4, 2), (2, 1)), ((1, 0), (-2, 1))),
}

# Documented length constant: each loop iteration of euclid_word emits at
# most 6 letters per unit of |r|+|s| decrease, plus one final 3-letter gadget.
EUCLID_LENGTH_CONSTANT = 6


def _gadget_action(name: str, r: int, s: int) -> tuple[int, int]:
    (m11, m12), (m21, m22) = GADGETS[name][1]
    return m11 * r + m12 * s, m21 * r + m22 * s


def euclid_word(r: int, s: int) -> list[tuple[int, int]]:
    """A word of generator letters whose chart action maps [r:s] to [1:1].

    r, s are integer lifts, not both zero.  The reduction walks |r|+|s| down
    by translations [[1,+-2],[0,1]], [[1,0],[+-2,1]] (emitted as 6-letter
    gadgets) interleaved with the 3-letter gadgets when the magnitudes are
    within a factor two of each other, then pushes the endpoint to [1:1].
    Word length is at most EUCLID_LENGTH_CONSTANT * (|r|+|s|) + 3.
    """
    if r == 0 and s == 0:
        raise ValueError("[0:0] is not a projective point")
    word: list[tuple[int, int]] = []

    def emit(name: str, times: int = 1) -> None:
        nonlocal r, s
        for _ in range(times):
            word.extend(GADGETS[name][0])
            r, s = _gadget_action(name, r, s)

    while True:
        if r == s:
            break
        if s == 0:
            emit("U3")  # (r, 0) -> (r, r)
            break
        if r == 0:
            emit("U1")  # (0, s) -> (s, s)
            break
        if r == -s:
            emit("T+")  # (-s, s) -> (s, s)
            break
        if abs(r) >= 2 * abs(s):
            t = round(r / (2 * s))
            emit("T+" if t < 0 else "T-", abs(t))  # r -> r - 2ts
        elif abs(s) >= 2 * abs(r):
            t = round(s / (2 * r))
            emit("L+" if t < 0 else "L-", abs(t))  # s -> s - 2tr
        else:
            # magnitudes within a factor of two, neither zero, r != +-s
            if r * s > 0:
                if abs(r) > abs(s):
                    emit("U1")  # (r, s) -> (s - r, s)
                else:
                    emit("U3")  # (r, s) -> (r, r - s)
            else:
                if abs(r) >= abs(s):
                    emit("T+" if r < 0 else "T-")
                else:
                    emit("L+" if s < 0 else "L-")
    assert r == s and r != 0
    return word


def compose_word(word, state: BlockState) -> Mobius:
    """Composed chart matrix of a letter word (applied left to right)."""
    m = Mobius.of([[1, 0], [0, 1]], state.p)
    for (i, j) in word:
        m = sigma(i, j, state) @ m
    return m
