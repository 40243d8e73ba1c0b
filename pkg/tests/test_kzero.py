from __future__ import annotations

import random

import numpy as np
import pytest

from afsym.catmap import doubled_model, stage_dims_cat
from afsym.errors import ShapeMismatch, SupportViolation
from afsym.kzero import (
    BratteliDiagram,
    DimGroupElement,
    block_shape,
    builtin_diagrams,
    coordinates,
    dl_add,
    dl_equal,
    dl_in_scale,
    dl_neg,
    dl_positive,
    dl_push,
    functional_value,
    groupoid_block_product,
    k0_closed_form,
    k0_map,
    k0_of_finite,
    pi_embed,
    pi_invert,
    reference_element,
    stage_dims,
)
from afsym.qfield import TAU, CatLatticeElem, DyadicRat, GoldenInt, QuadExt
from afsym.spectral import RatMatrix, nullspace

SQ5 = QuadExt(0, 1)
E = DimGroupElement


def D(name):
    return builtin_diagrams()[name]


def test_stage_dims_examples():
    assert [stage_dims(D("penrose"), n) for n in range(6)] == [(1,), (1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]
    assert stage_dims(D("baker"), 6) == (64, 64)
    assert [stage_dims(D("baker"), n)[0] for n in range(4)] == [1, 2, 4, 8]
    assert stage_dims(D("compact_unit"), 4) == (1, 4)
    assert stage_dims(D("cat"), 0) == (1,) * 5
    assert list(stage_dims(D("cat"), 1)) == [x for r in stage_dims_cat(1) for x in r]
    assert list(stage_dims(D("cat"), 3)) == [x for r in stage_dims_cat(3) for x in r]


def test_finite_groups():
    g = k0_of_finite((3, 5))
    assert g.rank == 2 and g.unit_class == (3, 5)
    assert g.in_scale((3, 0)) and not g.in_scale((4, 0))
    assert g.is_positive((0, 7)) and not g.is_positive((-1, 0))
    assert k0_of_finite((1,)).in_scale((1,))
    assert k0_of_finite((1,) * 5).in_scale((1, 0, 1, 0, 1))
    with pytest.raises(ValueError):
        k0_of_finite((0, 1))
    with pytest.raises(ShapeMismatch):
        g.is_positive((1,))


def test_k0_map_examples():
    assert k0_map(RatMatrix.of([[1, 1], [1, 0]]), (1, 1)) == (2, 1)
    assert k0_map(RatMatrix.of([[1, 0], [1, 1]]), (1, 0)) == (1, 1)
    assert k0_map([[3, 1], [2, 2]], (0, 0)) == (0, 0)
    with pytest.raises(ShapeMismatch):
        k0_map([[1, 1]], (1, 2, 3))


def test_diagram_validation():
    with pytest.raises(ShapeMismatch):
        BratteliDiagram("bad", (1,), (), RatMatrix.of([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        BratteliDiagram("neg", (1,), (), RatMatrix.of([[-1]]))


def test_dl_equal_examples():
    d = D("penrose")
    assert dl_equal(d, E(1, (1, 1)), E(2, (2, 1)))
    assert not dl_equal(d, E(1, (1, 0)), E(1, (0, 1)))
    with pytest.raises(ValueError):
        dl_push(d, E(2, (1, 1)), 1)


def test_dl_equal_cat_kernel():
    d = D("cat")
    Td = doubled_model()[0].transition
    ker = nullspace([list(r) for r in Td.rows])
    rng = random.Random(3)
    for _ in range(10):
        base = [rng.randint(-3, 3) for _ in range(25)]
        k = ker[rng.randrange(len(ker))]
        den = 1
        for x in k:
            den = den * x.denominator // np.gcd(den, x.denominator)
        other = [b + int(x * den) for b, x in zip(base, k)]
        assert dl_equal(d, E(1, tuple(base)), E(1, tuple(other)))
        assert k0_map(Td, base) == k0_map(Td, other)


def test_dl_equal_is_an_equivalence():
    d = D("penrose")
    rng = random.Random(5)
    elems = [E(rng.randint(1, 4), (rng.randint(-3, 3), rng.randint(-3, 3))) for _ in range(30)]
    for x in elems:
        assert dl_equal(d, x, x)
        assert dl_equal(d, x, dl_push(d, x, x.stage + 3))
        for y in elems:
            assert dl_equal(d, x, y) == dl_equal(d, y, x)


def test_dl_add_and_neg():
    d = D("penrose")
    x, y = E(1, (1, 0)), E(3, (2, 5))
    s = dl_add(d, x, y)
    assert s.stage == 3
    assert dl_equal(d, dl_add(d, s, dl_neg(s)), E(0, (0,)))
    assert coordinates("penrose", s) == tuple(a + b for a, b in zip(coordinates("penrose", x), coordinates("penrose", y)))


def test_closed_forms():
    p = k0_closed_form("penrose")
    assert p.rank == 2
    assert p.order_functional == (TAU, QuadExt(1))
    assert p.scale_bound == TAU + 1
    c = k0_closed_form("cat")
    assert c.rank == 4
    h = (SQ5 - 1) / 2
    assert c.order_functional == (QuadExt(1), h, h, (3 - SQ5) / 2)
    assert c.unit_class == (13, 8, 8, 5)
    assert c.scale_bound == (25 + 11 * SQ5) / 2
    u = k0_closed_form("compact_unit")
    assert u.rank == 2 and u.order_functional is None
    with pytest.raises(ValueError):
        k0_closed_form("torus")


def test_membership_examples():
    x = reference_element("penrose", (2, -3))
    assert dl_positive("penrose", x) and dl_in_scale("penrose", x)
    assert functional_value("penrose", x) == 2 * TAU - 3
    unit = reference_element("cat", (13, 8, 8, 5))
    assert dl_in_scale("cat", unit)
    assert functional_value("cat", unit) == k0_closed_form("cat").scale_bound
    assert dl_in_scale("compact_unit", reference_element("compact_unit", (1, -2)))
    assert not dl_in_scale("compact_unit", reference_element("compact_unit", (2, 0)))
    assert dl_positive("compact_unit", reference_element("compact_unit", (3, -100)))
    assert not dl_positive("compact_unit", reference_element("compact_unit", (0, -1)))


def test_unit_is_in_scale_for_every_model():
    for name in ("penrose", "cat", "baker", "compact_unit"):
        d = D(name)
        unit = E(0, d.initial_dims)
        assert dl_in_scale(name, unit)
        assert dl_positive(name, unit)


def test_positivity_matches_stage_cones():
    # vectors positive at some stage are positive in the limit, and the
    # positive cone is closed under addition
    rng = random.Random(7)
    for name in ("penrose", "cat", "compact_unit", "baker"):
        d = D(name)
        for _ in range(40):
            n = rng.randint(0, 3)
            v = tuple(rng.randint(0, 4) for _ in range(d.rank(n)))
            w = tuple(rng.randint(0, 4) for _ in range(d.rank(n)))
            x, y = E(n, v), E(n, w)
            assert dl_positive(name, x) and dl_positive(name, dl_add(d, x, y))
            if any(v):
                assert not dl_positive(name, dl_neg(x)) or name == "cat" and functional_value(name, x) == 0


def test_scale_matches_stage_box():
    # elements in the box at a stage lie in the scale; twice the unit does not
    rng = random.Random(8)
    for name in ("penrose", "cat", "baker", "compact_unit"):
        d = D(name)
        for n in range(0, 4):
            dims = stage_dims(d, n)
            v = tuple(rng.randint(0, k) for k in dims)
            assert dl_in_scale(name, E(n, v))
        twice = E(0, tuple(2 * k for k in d.initial_dims))
        assert not dl_in_scale(name, twice)


def test_penrose_embedding():
    assert pi_embed("penrose", reference_element("penrose", (1, 0))) == GoldenInt(-1, 1)
    rng = random.Random(2)
    for _ in range(200):
        c = (rng.randint(-50, 50), rng.randint(-50, 50))
        x = reference_element("penrose", c)
        img = pi_embed("penrose", x)
        assert img.to_quad() == functional_value("penrose", x) / k0_closed_form("penrose").scale_bound
        assert pi_invert("penrose", img) == c


def test_cat_embedding_round_trip():
    assert pi_invert("cat", (CatLatticeElem(1, 0), 0, 0)) == (0, 0, 8, 5)
    first, u, v = pi_embed("cat", reference_element("cat", (13, 8, 8, 5)))
    assert first.to_quad() == QuadExt(1) and (u, v) == (13, 8)
    rng = random.Random(20240601)
    for _ in range(100):
        c = tuple(rng.randint(-30, 30) for _ in range(4))
        x = reference_element("cat", c)
        assert coordinates("cat", x) == c
        assert pi_invert("cat", pi_embed("cat", x)) == c


def test_cat_coordinates_respect_limit():
    d = D("cat")
    rng = random.Random(4)
    for _ in range(20):
        x = E(1, tuple(rng.randint(-2, 2) for _ in range(25)))
        for k in (2, 3):
            assert coordinates("cat", dl_push(d, x, k)) == coordinates("cat", x)


def test_baker():
    d = D("baker")
    assert coordinates("baker", E(0, (1, 1))) == DyadicRat(1, 0)
    assert coordinates("baker", E(2, (1, 0))) == DyadicRat(1, 3)
    assert pi_embed("baker", E(1, (1, 2))) == DyadicRat(3, 2)
    x = E(1, (3, -1))
    assert coordinates("baker", dl_push(d, x, 4)) == coordinates("baker", x)
    assert not dl_in_scale("baker", E(0, (2, 1)))
    with pytest.raises(ValueError):
        reference_element("baker", (1,))
    with pytest.raises(ValueError):
        pi_invert("baker", DyadicRat(1, 1))


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        coordinates("penrose", E(1, (1, 2, 3)))
    with pytest.raises(ShapeMismatch):
        dl_push(D("penrose"), E(0, (1, 1)), 2)


def test_groupoid_example():
    classes = [[0, 1, 2], [3, 4]]
    assert block_shape(classes) == (3, 2)
    one = [[int(i == j) for j in range(5)] for i in range(5)]
    rng = random.Random(1)
    owner = [0, 0, 0, 1, 1]
    for _ in range(50):
        f = [[rng.randint(-3, 3) if owner[i] == owner[j] else 0 for j in range(5)] for i in range(5)]
        g = [[rng.randint(-3, 3) if owner[i] == owner[j] else 0 for j in range(5)] for i in range(5)]
        assert groupoid_block_product(f, g, classes) == (np.array(f) @ np.array(g)).tolist()
        assert groupoid_block_product(f, one, classes) == f


def test_groupoid_errors():
    f = [[0] * 5 for _ in range(5)]
    f[0][4] = 1
    with pytest.raises(SupportViolation):
        groupoid_block_product(f, f, [[0, 1, 2], [3, 4]])
    with pytest.raises(ShapeMismatch):
        groupoid_block_product([[1]], [[1, 0], [0, 1]], [[0]])
    with pytest.raises(ValueError):
        groupoid_block_product([[1, 0], [0, 1]], [[1, 0], [0, 1]], [[0], [0]])
