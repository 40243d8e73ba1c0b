"""Exact linear algebra over Q and Q(sqrt 5): characteristic polynomials,
dominant quadratic eigenvalues and Perron eigenvectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DominantRootNotQuadratic,
    EigenspaceNotOneDimensional,
    NotAnEigenvalue,
    ShapeMismatch,
)
from .qfield import QuadExt, quad_sign

__all__ = [
    "RatMatrix",
    "QuadVector",
    "char_poly",
    "poly_eval",
    "poly_mul",
    "dominant_quadratic_root",
    "perron_vector",
    "matrix_rank",
    "matrix_power",
    "matrix_inverse",
    "nullspace",
    "mat_vec",
]

QuadVector = tuple  # tuple of QuadExt


@dataclass(frozen=True)
class RatMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise ShapeMismatch("matrix needs at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "RatMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "RatMatrix":
        return cls.of([[0] * c for _ in range(r)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.shape[1] != other.shape[0]:
                raise ShapeMismatch(f"{self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            return RatMatrix(
                tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
            )
        return mat_vec(self, other)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return RatMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return RatMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, k) -> "RatMatrix":
        return RatMatrix(tuple(tuple(k * a for a in r) for r in self.rows))

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        (p, q), (r, s) = self.shape, other.shape
        return RatMatrix.of(
            [[self.rows[i // r][j // s] * other.rows[i % r][j % s] for j in range(q * s)] for i in range(p * r)]
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def to_int_lists(self) -> list[list[int]]:
        out = []
        for r in self.rows:
            if any(x.denominator != 1 for x in r):
                raise ValueError("matrix has non-integer entries")
            out.append([x.numerator for x in r])
        return out

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows])


def mat_vec(M, v: Sequence) -> tuple:
    """M @ v for a RatMatrix or nested list M and any field-valued vector."""
    rows = M.rows if isinstance(M, RatMatrix) else M
    if len(rows[0]) != len(v):
        raise ShapeMismatch(f"matrix with {len(rows[0])} columns times vector of length {len(v)}")
    out = []
    for r in rows:
        acc = 0
        for a, x in zip(r, v):
            if a:
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


# polynomials are coefficient lists, highest degree first -------------------

def poly_eval(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence, q: Sequence) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += Fraction(a) * Fraction(b)
    return out


def char_poly(M: RatMatrix) -> list[Fraction]:
    """Monic det(xI - M), highest degree first (Berkowitz, division free)."""
    if not M.is_square:
        raise ShapeMismatch("characteristic polynomial of a non-square matrix")
    A = M.rows
    n = len(A)
    # Berkowitz: the polynomial for the leading r x r block is extended by
    # a Toeplitz matrix built from the new row and column
    p = [Fraction(1), -A[0][0]]
    for r in range(1, n):
        R = A[r][:r]
        C = [A[i][r] for i in range(r)]
        Sub = [row[:r] for row in A[:r]]
        a = A[r][r]
        # column of the Toeplitz matrix: 1, -a, -R C, -R S C, ...
        col = [Fraction(1), -a]
        v = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(Sub[i][j] * v[j] for j in range(r)) for i in range(r)]
        # new coefficients: Toeplitz (r+2) x (r+1) times p
        newp = []
        for i in range(r + 2):
            newp.append(sum(col[i - j] * p[j] for j in range(len(p)) if 0 <= i - j < len(col)))
        p = newp
    return p


def _dominant_numeric(p: Sequence[Fraction]) -> tuple[complex, np.ndarray]:
    roots = np.roots([float(c) for c in p]) if len(p) > 1 else np.array([])
    if roots.size == 0:
        raise DominantRootNotQuadratic("constant polynomial has no roots")
    idx = int(np.argmax(np.abs(roots)))
    return roots[idx], roots


def dominant_quadratic_root(p: Sequence) -> QuadExt:
    """Exact real root of maximal modulus, assumed to lie in Q(sqrt 5).

    Numerical roots only select candidates; each candidate is confirmed by
    exact evaluation.
    """
    p = [Fraction(c) for c in p]
    r, roots = _dominant_numeric(p)
    mod = abs(r)
    tol = 1e-7 * max(1.0, mod)
    if abs(r.imag) > tol:
        raise DominantRootNotQuadratic("dominant root is not real")
    rivals = [z for z in roots if abs(abs(z) - mod) < tol and abs(z - r) > tol]
    if rivals:
        raise DominantRootNotQuadratic("dominant modulus is attained by several roots")
    x = r.real
    candidates = [QuadExt(Fraction(x).limit_denominator(10**6))]
    for z in roots:
        if abs(z.imag) > tol or abs(z - r) < tol:
            continue
        s = Fraction(x + z.real).limit_denominator(10**6)
        q = Fraction(x * z.real).limit_denominator(10**6)
        c2 = (s * s - 4 * q) / 5
        if c2 <= 0:
            continue
        c = _rational_sqrt(c2)
        if c is None:
            continue
        sign = 1 if x >= z.real else -1
        candidates.append(QuadExt(s / 2, sign * c / 2))
    for cand in candidates:
        if poly_eval(p, cand) == 0 and abs(float(cand) - x) < 1e-6 * max(1.0, mod):
            return cand
    raise DominantRootNotQuadratic("no rational or sqrt5-quadratic factor contains the dominant root")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt

    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def _rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over any exact field (Fraction or QuadExt)."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / QuadExt.coerce(A[r][c]) if isinstance(A[r][c], QuadExt) else 1 / Fraction(A[r][c])
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def nullspace(rows: list[list]) -> list[list]:
    """Basis of the right kernel, one vector per free column."""
    A, pivots = _rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    zero = A[0][0] * 0 if A and A[0] else Fraction(0)
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = zero + 1
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][f]
        basis.append(v)
    return basis


def perron_vector(M: RatMatrix, lam, normalization: str = "sum_one") -> QuadVector:
    """Exact eigenvector of M for eigenvalue lam.

    normalization is ``sum_one``, ``last_one`` or ``first_one``.
    """
    if not M.is_square:
        raise ShapeMismatch("eigenvector of a non-square matrix")
    lam = QuadExt.coerce(lam)
    n = M.shape[0]
    shifted = [[QuadExt(M.rows[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    ker = nullspace(shifted)
    if not ker:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    if len(ker) > 1:
        raise EigenspaceNotOneDimensional(f"eigenspace of {lam} has dimension {len(ker)}")
    v = [QuadExt.coerce(x) for x in ker[0]]
    if normalization == "sum_one":
        s = sum(v, QuadExt(0))
    elif normalization == "last_one":
        s = v[-1]
    elif normalization == "first_one":
        s = v[0]
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    if s == 0:
        raise ValueError(f"cannot normalize eigenvector by {normalization}")
    v = tuple(x / s for x in v)
    assert mat_vec(M, v) == tuple(lam * x for x in v)
    return v


def matrix_rank(M: RatMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on an integer copy."""
    rows = M.rows
    from math import lcm

    A = []
    for r in rows:
        d = lcm(*(x.denominator for x in r))
        A.append([int(x * d) for x in r])
    m, n = len(A), len(A[0])
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, m):
            A[i] = [(A[rank][c] * A[i][j] - A[i][c] * A[rank][j]) // prev for j in range(n)]
        prev = A[rank][c]
        rank += 1
        if rank == m:
            break
    return rank


def matrix_power(M: RatMatrix, n: int) -> RatMatrix:
    if not M.is_square:
        raise ShapeMismatch("power of a non-square matrix")
    if n < 0:
        return matrix_power(matrix_inverse(M), -n)
    out = RatMatrix.identity(M.shape[0])
    base = M
    while n:
        if n & 1:
            out = out @ base
        base = base @ base
        n >>= 1
    return out


def matrix_inverse(M: RatMatrix) -> RatMatrix:
    if not M.is_square:
        raise ShapeMismatch("inverse of a non-square matrix")
    n = M.shape[0]
    aug = [list(M.rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return RatMatrix.of([r[n:] for r in R])


def is_positive_vector(v: Sequence) -> bool:
    return all(quad_sign(QuadExt.coerce(x)) > 0 for x in v)
