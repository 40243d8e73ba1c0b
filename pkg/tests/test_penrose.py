from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from afsym.errors import DanglingSymbol, InadmissibleWord
from afsym.penrose import (
    EDGE_MATRIX,
    VERTEX_MATRIX,
    decode,
    edge_frequencies,
    frequency_table,
    inflate_motif_frequency,
    motif_frequency,
    penrose_sft,
    prototile_frequencies,
    ratio_iterates,
    recode,
    sequence_to_patch,
    vertex_frequencies,
)
from afsym.qfield import LAMBDA_U, TAU, GoldenInt, QuadExt
from afsym.symbolic import enumerate_words, format_word
from afsym.tilegeom import code_of_marked, count_tiles, is_edge_to_edge

g = QuadExt.golden
ZERO7 = (0,) * 7


def test_prototile_frequencies():
    t = prototile_frequencies()
    assert t["L"] == TAU - 1
    assert t["S"] == 2 - TAU
    assert t["L"] + t["S"] == 1
    assert t.eigenvalue == LAMBDA_U


def test_edge_frequencies():
    t = edge_frequencies()
    assert t["k"] == g(-1, 1)
    assert t["t"] == g(5, -3) == F(3, 2) * g(10, -6) / 3
    assert sum(t.hat_values, QuadExt(0)) == 1
    assert t.lattice()[0] == GoldenInt(-1, 1)


def test_vertex_frequencies():
    t = vertex_frequencies()
    assert t["⊙"] == g(-11, 7)
    assert t["K"] == g(13, -8)
    assert t["D"] == g(-3, 2)
    assert t["★"] == 5 * t.hat("★")


def test_frequency_tables_are_invariant_vectors():
    for t, M in ((edge_frequencies(), EDGE_MATRIX), (vertex_frequencies(), VERTEX_MATRIX)):
        assert M @ t.hat_values == tuple(LAMBDA_U * v for v in t.hat_values)
        assert all(0 < v < 1 for v in t.hat_values)


def test_frequency_table_dispatch():
    assert frequency_table("edge").labels == ("k", "k'", "d", "t", "l'", "r", "r'")
    with pytest.raises(ValueError):
        frequency_table("face")


def test_ratio_iterates():
    # three steps from 1 give 21/13: the iterates are ratios of
    # even- to odd-indexed Fibonacci numbers
    it = ratio_iterates(3)
    assert it == [F(1), F(3, 2), F(8, 5), F(21, 13)]
    errs = [abs(float(x) - float(TAU)) for x in ratio_iterates(12)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_inflation_scales_frequency():
    assert inflate_motif_frequency(1) == 2 - TAU
    assert inflate_motif_frequency(TAU - 1) == 2 * TAU - 3


def test_motif_examples():
    v, lat = motif_frequency(1, 2, 1)
    assert v == TAU - 1
    assert lat == GoldenInt(-1, 1)
    assert motif_frequency(0, 1, 0)[0] == TAU - 1
    assert motif_frequency(0, 0, 0, n_edge=(1,) + (0,) * 6)[0] == g(-1, 1)


def test_motif_of_inflated_tile_is_invariant():
    # an L tile inflated once holds 2 L and 1 S: frequency must not change
    for k in range(6):
        assert motif_frequency(k + 1, 2, 1)[0] == motif_frequency(k, 1, 0)[0]
        assert motif_frequency(k + 1, 1, 1)[0] == motif_frequency(k, 0, 1)[0]


def test_motif_linearity():
    rng = random.Random(4)
    for _ in range(50):
        k = rng.randint(0, 5)
        a = [rng.randint(0, 4) for _ in range(16)]
        b = [rng.randint(0, 4) for _ in range(16)]
        s = [x + y for x, y in zip(a, b)]
        f = lambda c: motif_frequency(k, c[0], c[1], c[2:9], c[9:])[0]
        assert f(s) == f(a) + f(b)


def test_motif_errors():
    with pytest.raises(ValueError):
        motif_frequency(-1, 1, 0)
    with pytest.raises(ValueError):
        motif_frequency(0, 1, 0, n_edge=(0,) * 6)
    with pytest.raises(ValueError):
        motif_frequency(0, -1, 0)


def test_recode_examples():
    assert recode("L,S,L,L") == ["l", "s", "l"]
    assert decode(["l", "s", "l"]) == ["L", "S", "L", "L"]
    with pytest.raises(DanglingSymbol):
        recode("L,S")
    with pytest.raises(InadmissibleWord):
        recode("S,S,L")
    with pytest.raises(InadmissibleWord):
        decode("l,x")


def test_recode_round_trip():
    rng = random.Random(8)
    for _ in range(1000):
        w = [rng.choice("ls") for _ in range(rng.randint(1, 30))]
        assert recode(decode(w)) == w


def test_recode_exhaustive():
    # every admissible word that ends in L recodes, and nothing else does
    s = penrose_sft()
    for n in range(1, 11):
        for word in enumerate_words(s, n):
            w = format_word(s, word).split(",")
            if w[-1] == "L":
                assert decode(recode(w)) == w
            else:
                with pytest.raises(DanglingSymbol):
                    recode(w)


def test_sequence_to_patch_round_trip():
    s = penrose_sft()
    for n in range(1, 13):
        for word in enumerate_words(s, n):
            w = format_word(s, word).split(",")
            p = sequence_to_patch(w)
            assert code_of_marked(p, len(w)) == w


def test_sequence_to_patch_tile_counts():
    # the level-n tile splits into Fibonacci-many pieces
    for n in range(1, 10):
        for top in ("L", "S"):
            w = ["L"] * n + [top]
            nl, ns = count_tiles(sequence_to_patch(w))
            fibs = [1, 1]
            while len(fibs) < n + 3:
                fibs.append(fibs[-1] + fibs[-2])
            assert nl + ns == (fibs[n + 1] if top == "L" else fibs[n])


def test_sequence_to_patch_is_edge_to_edge():
    for w in ("L,L,L,L,L,L,L", "S,L,S,L,L,S,L,L"):
        assert is_edge_to_edge(sequence_to_patch(w))


def test_sequence_to_patch_rejects_bad_words():
    with pytest.raises(InadmissibleWord):
        sequence_to_patch("L,S,S")
    with pytest.raises(InadmissibleWord):
        sequence_to_patch("L,X")
