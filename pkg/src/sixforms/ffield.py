"""Exact arithmetic in F_p and dense small-matrix linear algebra.

Everything here is integer-exact: entries are canonical least residues in
[0, p), elimination uses modular inverses, and no floating point is involved.
Matrices are small (a few dozen rows/columns at most), so the implementation
favours determinism and clarity over asymptotics.  For p below 2**31 the row
operations run on int64 numpy arrays (products stay below 2**62); larger
word-sized primes fall back to object-dtype arrays holding Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_WORD_LIMIT = 1 << 62
_INT64_SAFE = 1 << 31

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NonSquare(ValueError):
    """Raised when a square matrix was required."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all word-sized inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A prime p < 2**62, checked at construction."""

    p: int

    def __post_init__(self) -> None:
        if self.p >= _WORD_LIMIT:
            raise ValueError(f"modulus {self.p} too large (need < 2**62)")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __int__(self) -> int:
        return self.p


def _dtype(p: int):
    return np.int64 if p < _INT64_SAFE else object


def _as_array(entries, p: int) -> np.ndarray:
    a = np.array(entries, dtype=_dtype(p))
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError("matrix entries must be two-dimensional")
    return a % p


class FpMatrix:
    """Immutable dense matrix over F_p with canonical least-residue entries."""

    __slots__ = ("p", "a")

    def __init__(self, entries, p: int):
        self.p = int(p)
        a = _as_array(entries, self.p)
        a.setflags(write=False)
        self.a = a

    # -- construction helpers -------------------------------------------

    @classmethod
    def _wrap(cls, reduced: np.ndarray, p: int) -> "FpMatrix":
        """Internal fast path: `reduced` must already be a 2-d array of
        canonical residues."""
        m = cls.__new__(cls)
        m.p = p
        reduced.setflags(write=False)
        m.a = reduced
        return m

    @staticmethod
    def identity(n: int, p: int) -> "FpMatrix":
        return FpMatrix._wrap(np.eye(n, dtype=_dtype(p)), p)

    @staticmethod
    def zeros(rows: int, cols: int, p: int) -> "FpMatrix":
        return FpMatrix._wrap(np.zeros((rows, cols), dtype=_dtype(p)), p)

    # -- basic protocol ---------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.a]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.shape, bytes(np.asarray(self.a, dtype=np.int64))))

    def __repr__(self) -> str:
        return f"FpMatrix({self.tolist()}, p={self.p})"

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FpMatrix._wrap(self.a @ other.a % self.p, self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix._wrap((self.a + other.a) % self.p, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix._wrap((self.a - other.a) % self.p, self.p)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix._wrap(self.a * (c % self.p) % self.p, self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix._wrap(self.a.T.copy(), self.p)

    @property
    def T(self) -> "FpMatrix":
        return self.transpose()

    def hstack(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix._wrap(np.hstack([self.a, other.a]), self.p)

    def vstack(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix._wrap(np.vstack([self.a, other.a]), self.p)

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.a[i])

    # -- elimination core -------------------------------------------------

    def rref(self) -> tuple["FpMatrix", tuple[int, ...]]:
        """Reduced row-echelon form and its pivot columns."""
        r, piv = _rref(self.a.copy(), self.p)
        return FpMatrix._wrap(r, self.p), piv

    def rank(self) -> int:
        if self.rows == 1:
            return 1 if np.any(self.a) else 0
        if self.rows == 2:
            r0, r1 = self.a[0], self.a[1]
            nz = _first_nonzero(r0, self.p)
            if nz is None:
                return 1 if np.any(r1) else 0
            factor = int(r1[nz]) * pow(int(r0[nz]), -1, self.p) % self.p
            return 1 if np.array_equal(r1, r0 * factor % self.p) else 2
        return len(self.rref()[1])

    def det(self) -> int:
        if self.rows != self.cols:
            raise NonSquare(f"{self.shape} matrix has no determinant")
        return _det(self.a.copy(), self.p)

    def kernel_basis(self) -> "FpMatrix":
        """Rows form the canonical (RREF-derived) basis of the right kernel."""
        red, piv = self.rref()
        free = [c for c in range(self.cols) if c not in piv]
        basis = np.zeros((len(free), self.cols), dtype=_dtype(self.p))
        for k, fc in enumerate(free):
            basis[k, fc] = 1
            for r_idx, pc in enumerate(piv):
                basis[k, pc] = (-int(red.a[r_idx, fc])) % self.p
        return FpMatrix(basis, self.p)

    def solve(self, b) -> tuple[int, ...] | None:
        """A canonical solution x of self @ x = b, or None if inconsistent.

        Free variables are set to 0 after echelon reduction.
        """
        x = self.solve_matrix(FpMatrix(np.array(b).reshape(-1, 1), self.p))
        if x is None:
            return None
        return tuple(int(v) for v in x.a[:, 0])

    def solve_matrix(self, B: "FpMatrix") -> "FpMatrix | None":
        """Solve self @ X = B columnwise; None if any column is inconsistent."""
        if B.rows != self.rows:
            raise ValueError("right-hand side has wrong number of rows")
        aug = np.hstack([self.a, B.a])
        red, piv = _rref(aug, self.p)
        n = self.cols
        for r_idx in range(red.shape[0]):
            lead = _first_nonzero(red[r_idx], self.p)
            if lead is not None and lead >= n:
                return None
        X = np.zeros((n, B.cols), dtype=_dtype(self.p))
        for r_idx, pc in enumerate(piv):
            if pc < n:
                X[pc] = red[r_idx, n:]
        return FpMatrix(X, self.p)

    def inverse(self) -> "FpMatrix":
        if self.rows != self.cols:
            raise NonSquare("only square matrices invert")
        X = self.solve_matrix(FpMatrix.identity(self.rows, self.p))
        if X is None or (self @ X) != FpMatrix.identity(self.rows, self.p):
            raise ZeroDivisionError("matrix is singular")
        return X

    def right_inverse(self) -> "FpMatrix":
        """Any R with self @ R = I; requires full row rank."""
        if self.rows == 1:
            nz = _first_nonzero(self.a[0], self.p)
            if nz is None:
                raise ZeroDivisionError("zero row has no right inverse")
            col = np.zeros((self.cols, 1), dtype=self.a.dtype)
            col[nz, 0] = pow(int(self.a[0, nz]), -1, self.p)
            return FpMatrix._wrap(col, self.p)
        R = self.solve_matrix(FpMatrix.identity(self.rows, self.p))
        if R is None:
            raise ZeroDivisionError("matrix does not have full row rank")
        return R

    def is_zero(self) -> bool:
        return not np.any(self.a)


def _first_nonzero(row, p: int) -> int | None:
    nz = np.nonzero(np.asarray(row) % p)[0]
    return int(nz[0]) if nz.size else None


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    a = a % p
    m, n = a.shape
    piv: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        piv.append(c)
        r += 1
    return a, tuple(piv)


def _det(a: np.ndarray, p: int) -> int:
    a = a % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            det = -det
        pivot = int(a[c, c])
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        if c + 1 < n:
            factors = a[c + 1 :, c] * inv % p
            a[c + 1 :] = (a[c + 1 :] - np.outer(factors, a[c])) % p
    return det % p


# -- module-level operations (the public surface) -------------------------


def det(m: FpMatrix) -> int:
    return m.det()


def rank(m: FpMatrix) -> int:
    return m.rank()


def kernel_basis(m: FpMatrix) -> FpMatrix:
    return m.kernel_basis()


def solve(m: FpMatrix, b) -> tuple[int, ...] | None:
    return m.solve(b)


def sqrt_mod(a: int, p: int | PrimeModulus) -> int | None:
    """Canonical square root of a mod p, or None for a non-residue.

    Deterministic Tonelli-Shanks; the witness non-residue is the smallest one,
    and of the two roots the one with r <= p - r is returned.
    """
    p = int(p)
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # factor p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)
