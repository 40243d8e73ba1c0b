"""Symbolic model of the cat map [[2,1],[1,1]] on the five-rectangle Markov
partition: areas, grammar, conditional probabilities, cylinder measures and
the doubled one-sided shift used for the AF algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ShapeMismatch
from .qfield import (
    LAMBDA_S,
    LAMBDA_U,
    CatLatticeElem,
    QuadExt,
    quad_to_lattice,
)
from .spectral import RatMatrix, char_poly, mat_vec
from .symbolic import Sft, check_admissible, parse_word, tensor_double

__all__ = [
    "CatModel",
    "LABELS",
    "cat_model",
    "cat_sft",
    "cylinder_measure",
    "doubled_model",
    "stage_dims_cat",
    "projectors",
]

LABELS = ("A", "B00", "B01", "B10", "B11")

_SQ5 = QuadExt(0, 1)


@dataclass(frozen=True)
class CatModel:
    A: RatMatrix
    lambda_u: QuadExt
    lambda_s: QuadExt
    v_u: tuple[QuadExt, QuadExt]
    v_s: tuple[QuadExt, QuadExt]
    labels: tuple[str, ...]
    mu: tuple[QuadExt, ...]
    a: tuple[tuple[QuadExt, ...], ...]

    def verify(self) -> None:
        det = self.A[0, 0] * self.A[1, 1] - self.A[0, 1] * self.A[1, 0]
        if det != 1:
            raise AssertionError("cat matrix must be unimodular")
        for lam, v in ((self.lambda_u, self.v_u), (self.lambda_s, self.v_s)):
            if mat_vec(self.A, v) != tuple(lam * x for x in v):
                raise AssertionError("eigen data inconsistent")
        if sum(self.mu, QuadExt(0)) != 1:
            raise AssertionError("areas do not sum to one")
        for j in range(5):
            if sum((self.a[i][j] for i in range(5)), QuadExt(0)) != 1:
                raise AssertionError(f"column {j} of the conditional matrix is not stochastic")
        if mat_vec(self.a, self.mu) != self.mu:
            raise AssertionError("areas are not stationary")


@lru_cache(maxsize=None)
def cat_model() -> CatModel:
    A = RatMatrix.of([[2, 1], [1, 1]])
    lu, ls = LAMBDA_U, LAMBDA_S
    p = char_poly(A)
    if p != [1, -3, 1]:
        raise AssertionError("unexpected characteristic polynomial")
    half = Fraction(1, 2)
    v_u = (QuadExt(1), half * (_SQ5 - 1))
    v_s = (half * (1 - _SQ5), QuadExt(1))
    zeta = (5 - _SQ5) / 10
    mid = (3 * _SQ5 - 5) / 10
    mu = (zeta, mid, zeta, (5 - 2 * _SQ5) / 5, mid)
    z = QuadExt(0)
    a = (
        (ls, z, ls, z, ls),
        (1 - 2 * ls, z, 1 - 2 * ls, z, 1 - 2 * ls),
        (ls, z, ls, z, ls),
        (z, ls, z, ls, z),
        (z, 1 - ls, z, 1 - ls, z),
    )
    m = CatModel(A, lu, ls, v_u, v_s, LABELS, mu, a)
    m.verify()
    return m


def cat_sft() -> Sft:
    T = [
        [1, 0, 1, 0, 1],
        [1, 0, 1, 0, 1],
        [1, 0, 1, 0, 1],
        [0, 1, 0, 1, 0],
        [0, 1, 0, 1, 0],
    ]
    return Sft(LABELS, RatMatrix.of(T))


def cylinder_measure(w) -> tuple[QuadExt, CatLatticeElem]:
    """mu of the cylinder f_0..f_n: a[f_n][f_(n-1)] ... a[f_1][f_0] mu(f_0)."""
    s = cat_sft()
    word = parse_word(s, w) if isinstance(w, str) or (w and isinstance(w[0], str)) else tuple(w)
    check_admissible(s, word)
    m = cat_model()
    val = m.mu[word[0]]
    for prev, nxt in zip(word, word[1:]):
        val = m.a[nxt][prev] * val
    return val, quad_to_lattice(val, "cat")


def doubled_model() -> tuple[Sft, RatMatrix]:
    """The doubled shift (transition T^T kron T) and the 25 x 5 matrix A0."""
    s = cat_sft()
    T = s.transition
    A0 = RatMatrix.of([[T[k, i] * T[j, k] for k in range(5)] for i in range(5) for j in range(5)])
    return tensor_double(s), A0


def stage_dims_cat(n: int) -> list[list[int]]:
    """a^(n) as a 5 x 5 matrix indexed (backward symbol, forward symbol)."""
    if n < 0:
        raise ValueError("stage must be nonnegative")
    if n == 0:
        # a_i^(0) = 1: one copy of C per partition element
        return [[1] * 5]
    Td, A0 = doubled_model()
    vec = mat_vec(A0, (1,) * 5)
    for _ in range(n - 1):
        vec = mat_vec(Td.transition, vec)
    flat = [int(x) for x in vec]
    return [flat[5 * i : 5 * i + 5] for i in range(5)]


def projectors() -> tuple[RatMatrix, RatMatrix, RatMatrix]:
    PL = RatMatrix.of([[1, 1, 1, 0, 0], [0, 0, 0, 1, 1]])
    PR = RatMatrix.of([[1, 0, 1, 0, 1], [0, 1, 0, 1, 0]])
    Z = RatMatrix.of([[2, 1], [1, 1]])
    T = cat_sft().transition
    if not (PR @ T - Z @ PR).is_zero() or not (PL @ T.T - Z @ PL).is_zero():
        raise ShapeMismatch("projector identities fail")
    return PL, PR, Z
