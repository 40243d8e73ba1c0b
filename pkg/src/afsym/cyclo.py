"""Exact plane points in Z[zeta], zeta = exp(i pi/5).

A point is a 4-tuple ``(c0, c1, c2, c3)`` meaning c0 + c1 z + c2 z^2 + c3 z^3,
reduced with z^4 = z^3 - z^2 + z - 1 (so z^5 = -1).
"""
from __future__ import annotations

import math

from .qfield import QuadExt, TAU

CycloPoint = tuple  # (int, int, int, int)

ORIGIN: CycloPoint = (0, 0, 0, 0)
ONE: CycloPoint = (1, 0, 0, 0)
ZETA1: CycloPoint = (0, 1, 0, 0)
TAU_C: CycloPoint = (1, 0, 1, -1)
TAU_INV_C: CycloPoint = (0, 0, 1, -1)


def add(p: CycloPoint, q: CycloPoint) -> CycloPoint:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3])


def sub(p: CycloPoint, q: CycloPoint) -> CycloPoint:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3])


def neg(p: CycloPoint) -> CycloPoint:
    return (-p[0], -p[1], -p[2], -p[3])


def _reduce(d: list[int]) -> CycloPoint:
    # d has length 7 (degrees 0..6)
    d0, d1, d2, d3, d4, d5, d6 = d
    d0 -= d5  # z^5 = -1
    d1 -= d6  # z^6 = -z
    return (d0 - d4, d1 + d4, d2 - d4, d3 + d4)


def mul(p: CycloPoint, q: CycloPoint) -> CycloPoint:
    d = [0] * 7
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    d[i + j] += a * b
    return _reduce(d)


def scale_int(p: CycloPoint, k: int) -> CycloPoint:
    return (p[0] * k, p[1] * k, p[2] * k, p[3] * k)


def conj(p: CycloPoint) -> CycloPoint:
    # conj(z^k) = z^-k = -z^(5-k)
    c0, c1, c2, c3 = p
    return _reduce([c0, 0, -c3, -c2, -c1, 0, 0])


def power(k: int) -> CycloPoint:
    """z^k for any integer k."""
    k %= 10
    out = ONE
    for _ in range(k):
        out = mul(out, ZETA1)
    return out


def real_part(p: CycloPoint) -> QuadExt:
    """Re p as an element of Q(sqrt 5)."""
    c0, c1, c2, c3 = p
    # cos 36 = tau/2, cos 72 = (tau-1)/2, cos 108 = -(tau-1)/2
    return c0 + c1 * TAU / 2 + (c2 - c3) * (TAU - 1) / 2


def imag_over_sin36(p: CycloPoint) -> QuadExt:
    """Im p / sin(36 deg); sin 72 = tau sin 36 keeps this in Z[tau]."""
    _, c1, c2, c3 = p
    return c1 + (c2 + c3) * TAU


def abs2(p: CycloPoint) -> QuadExt:
    return real_part(mul(p, conj(p)))


def cross(u: CycloPoint, v: CycloPoint) -> QuadExt:
    """Im(conj(u) v) / sin 36, i.e. the signed parallelogram area in those units."""
    return imag_over_sin36(mul(conj(u), v))


_COS = [math.cos(k * math.pi / 5) for k in range(4)]
_SIN = [math.sin(k * math.pi / 5) for k in range(4)]


def to_float(p: CycloPoint) -> tuple[float, float]:
    x = sum(c * cs for c, cs in zip(p, _COS))
    y = sum(c * sn for c, sn in zip(p, _SIN))
    return x, y
