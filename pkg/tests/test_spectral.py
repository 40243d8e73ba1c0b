from __future__ import annotations

import random
from fractions import Fraction as F

import numpy as np
import pytest

from afsym.catmap import cat_sft, doubled_model
from afsym.errors import DominantRootNotQuadratic, EigenspaceNotOneDimensional, NotAnEigenvalue
from afsym.penrose import EDGE_MATRIX, VERTEX_MATRIX
from afsym.qfield import LAMBDA_U, TAU, QuadExt, quad_sign
from afsym.spectral import (
    RatMatrix,
    char_poly,
    dominant_quadratic_root,
    matrix_inverse,
    matrix_power,
    matrix_rank,
    perron_vector,
    poly_eval,
    poly_mul,
)


def leverrier(M: RatMatrix) -> list[F]:
    """Faddeev-LeVerrier characteristic polynomial, an independent oracle."""
    n = M.shape[0]
    I = RatMatrix.identity(n)
    coeffs = [F(1)]
    Mk = RatMatrix.zeros(n, n)
    c = F(1)
    for k in range(1, n + 1):
        Mk = M @ Mk + I.scale(c)
        AM = M @ Mk
        c = -sum(AM[i, i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def expand(*factors):
    p = [F(1)]
    for f in factors:
        p = poly_mul(p, f)
    return [x / p[0] for x in p]


def random_matrix(rng, n, lo=-5, hi=5):
    return RatMatrix.of([[F(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])


def test_edge_char_poly():
    assert char_poly(EDGE_MATRIX) == expand([1, 0], [1, 0, 1], [9, 6, 2], [1, -3, 1])


def test_vertex_char_poly():
    assert char_poly(VERTEX_MATRIX) == expand([1, 0], [2, 1, 1], [1, 1, F(1, 2)], [1, -3, 1])


def test_fibonacci_char_poly():
    assert char_poly(RatMatrix.of([[1, 1], [1, 0]])) == [1, -1, -1]


def test_char_poly_matches_oracle():
    rng = random.Random(3)
    for n in range(1, 8):
        for _ in range(5):
            M = random_matrix(rng, n)
            assert char_poly(M) == leverrier(M)


def test_char_poly_non_square():
    with pytest.raises(Exception):
        char_poly(RatMatrix.of([[1, 2, 3]]))


def test_dominant_roots():
    assert dominant_quadratic_root([1, -3, 1]) == LAMBDA_U
    assert dominant_quadratic_root([1, -1, -1]) == TAU
    assert dominant_quadratic_root(char_poly(EDGE_MATRIX)) == LAMBDA_U
    assert dominant_quadratic_root(char_poly(VERTEX_MATRIX)) == LAMBDA_U
    assert dominant_quadratic_root([1, -2, 0]) == 2


def test_dominant_root_errors():
    with pytest.raises(DominantRootNotQuadratic):
        dominant_quadratic_root([1, 0, 1])
    with pytest.raises(DominantRootNotQuadratic):
        dominant_quadratic_root([1, 0, -2])  # sqrt 2 lies outside Q(sqrt 5)
    with pytest.raises(DominantRootNotQuadratic):
        dominant_quadratic_root([1, 0, -4])  # +2 and -2 tie in modulus


def test_returned_roots_are_exact_roots():
    for M in (EDGE_MATRIX, VERTEX_MATRIX, RatMatrix.of([[2, 1], [1, 1]])):
        p = char_poly(M)
        assert poly_eval(p, dominant_quadratic_root(p)) == 0


def test_edge_eigenvector():
    v = perron_vector(EDGE_MATRIX, LAMBDA_U, "sum_one")
    g = QuadExt.golden
    assert v == (g(-1, 1) / 3, g(-6, 4) / 3, g(2, -1) / 3, g(10, -6) / 3, g(4, -2) / 3, g(-3, 2) / 3, g(-3, 2) / 3)


def test_vertex_eigenvector():
    v = perron_vector(VERTEX_MATRIX, LAMBDA_U, "sum_one")
    g = QuadExt.golden
    assert v[0] == g(-11, 7) / 5
    assert v[1] == g(-29, 18) / 5
    assert v[2:] == (g(2, -1), g(-3, 2), g(5, -3), g(-8, 5), g(13, -8))
    assert sum(v, QuadExt(0)) == 1


def test_last_one_normalization():
    assert perron_vector(RatMatrix.of([[1, 1], [1, 0]]), TAU, "last_one") == (TAU, QuadExt(1))


def test_eigen_errors():
    with pytest.raises(NotAnEigenvalue):
        perron_vector(RatMatrix.of([[1, 1], [1, 0]]), QuadExt(2))
    with pytest.raises(EigenspaceNotOneDimensional):
        perron_vector(RatMatrix.identity(3), QuadExt(1))


def test_eigen_equation_exact():
    for M in (EDGE_MATRIX, VERTEX_MATRIX, RatMatrix.of([[2, 1], [1, 1]])):
        lam = dominant_quadratic_root(char_poly(M))
        v = perron_vector(M, lam)
        assert M @ v == tuple(lam * x for x in v)


def test_perron_vectors_of_primitive_matrices_are_positive():
    for M in (EDGE_MATRIX, VERTEX_MATRIX, RatMatrix.of([[2, 1], [1, 1]]), RatMatrix.of([[1, 1], [1, 0]])):
        lam = dominant_quadratic_root(char_poly(M))
        assert all(quad_sign(x) > 0 for x in perron_vector(M, lam))


def test_rank_examples():
    assert matrix_rank(cat_sft().transition) == 2
    assert matrix_rank(doubled_model()[0].transition) == 4
    assert matrix_rank(RatMatrix.identity(5)) == 5


def test_rank_transpose_and_numpy():
    rng = random.Random(5)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        base = [[rng.randint(-2, 2) for _ in range(c)] for _ in range(min(r, 2))]
        rows = [[sum(rng.randint(-1, 1) * b[j] for b in base) for j in range(c)] for _ in range(r)]
        M = RatMatrix.of(rows)
        assert matrix_rank(M) == matrix_rank(M.T) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_matrix_power():
    fib = RatMatrix.of([[1, 1], [1, 0]])
    assert matrix_power(fib, 8) == RatMatrix.of([[34, 21], [21, 13]])
    M = random_matrix(random.Random(1), 4)
    assert matrix_power(M, 0) == RatMatrix.identity(4)
    T2 = matrix_power(cat_sft().transition, 2)
    assert all(x > 0 for r in T2.rows for x in r)


def test_inverse():
    Z = RatMatrix.of([[2, 1], [1, 1]])
    assert matrix_inverse(Z) == RatMatrix.of([[1, -1], [-1, 2]])
    assert matrix_power(Z, -3) @ matrix_power(Z, 3) == RatMatrix.identity(2)
