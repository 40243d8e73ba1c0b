"""End-to-end acceptance checks, shared by ``afsym selftest`` and the test suite.

Each check returns ``(passed, detail)``.  Expected values are written out
literally here so a wrong matrix or eigenvector anywhere upstream is caught.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable

from . import catmap, kzero, penrose, spectral, symbolic, tilegeom
from .qfield import LAMBDA_S, LAMBDA_U, TAU, CatLatticeElem, DyadicRat, QuadExt

F = Fraction
Check = Callable[[], "tuple[bool, str]"]


def g(m, n) -> QuadExt:
    """m + n*tau."""
    return QuadExt.golden(m, n)


EXPECTED_PROTOTILE = {"L": g(-1, 1), "S": g(2, -1)}
EXPECTED_EDGE = {
    "k": g(-1, 1),
    "k'": g(-6, 4),
    "d": g(2, -1),
    "t": g(5, -3),
    "l'": g(2, -1),
    "r": g(-3, 2),
    "r'": g(-3, 2),
}
EXPECTED_EDGE_HAT = {
    "k": g(-1, 1) / 3,
    "k'": g(-6, 4) / 3,
    "d": g(2, -1) / 3,
    "t": g(10, -6) / 3,
    "l'": g(4, -2) / 3,
    "r": g(-3, 2) / 3,
    "r'": g(-3, 2) / 3,
}
EXPECTED_VERTEX = {
    "⊙": g(-11, 7),
    "★": g(-29, 18),
    "A": g(2, -1),
    "D": g(-3, 2),
    "J": g(5, -3),
    "Q": g(-8, 5),
    "K": g(13, -8),
}


def _poly(*factors) -> list[Fraction]:
    p = [F(1)]
    for f in factors:
        p = spectral.poly_mul(p, f)
    lead = p[0]
    return [c / lead for c in p]


def check_frequencies() -> tuple[bool, str]:
    t0 = time.perf_counter()
    pt = penrose.prototile_frequencies()
    et = penrose.edge_frequencies()
    vt = penrose.vertex_frequencies()
    dt = time.perf_counter() - t0
    bad = [k for k, v in EXPECTED_PROTOTILE.items() if pt[k] != v]
    bad += [k for k, v in EXPECTED_EDGE.items() if et[k] != v or et.hat(k) != EXPECTED_EDGE_HAT[k]]
    bad += [k for k, v in EXPECTED_VERTEX.items() if vt[k] != v or vt.hat(k) * (5 if k in "⊙★" else 1) != v]
    ok = not bad and dt < 1.0
    return ok, f"mismatches={bad} runtime={dt:.3f}s"


def check_char_polys() -> tuple[bool, str]:
    edge_expected = _poly([1, 0], [1, 0, 1], [9, 6, 2], [1, -3, 1])
    vertex_expected = _poly([1, 0], [2, 1, 1], [1, 1, F(1, 2)], [1, -3, 1])
    pe = spectral.char_poly(penrose.EDGE_MATRIX)
    pv = spectral.char_poly(penrose.VERTEX_MATRIX)
    le = spectral.dominant_quadratic_root(pe)
    lv = spectral.dominant_quadratic_root(pv)
    ok = pe == edge_expected and pv == vertex_expected and le == LAMBDA_U and lv == LAMBDA_U
    return ok, f"edge_poly_ok={pe == edge_expected} vertex_poly_ok={pv == vertex_expected} roots=({le}, {lv})"


def check_geometry() -> tuple[bool, str]:
    t0 = time.perf_counter()
    p = tilegeom.inflate(tilegeom.prototile("L"), 8)
    nl, ns = tilegeom.count_tiles(p)
    eh = tilegeom.edge_histogram(p)
    vh = tilegeom.vertex_histogram(p)
    dt = time.perf_counter() - t0
    ratio_err = abs(nl / (nl + ns) - float(TAU - 1))
    et, vt = penrose.edge_frequencies(), penrose.vertex_frequencies()
    ne, nv = sum(eh.values()), sum(vh.values())
    e_err = max(abs(eh[k] / ne - float(et.hat(k))) for k in et.labels)
    v_err = max(abs(vh[k] / nv - float(vt.hat(k))) for k in vt.labels)
    ok = ratio_err < 0.01 and e_err < 0.02 and v_err < 0.02 and dt < 10.0
    return ok, (
        f"tiles={nl + ns} ratio_err={ratio_err:.4f} edge_err={e_err:.4f} "
        f"vertex_err={v_err:.4f} runtime={dt:.2f}s"
    )


def check_cat_measures() -> tuple[bool, str]:
    m = catmap.cat_model()
    ok = sum(m.mu, QuadExt(0)) == 1
    ok &= all(sum((m.a[i][j] for i in range(5)), QuadExt(0)) == 1 for j in range(5))
    ok &= spectral.mat_vec(m.a, m.mu) == m.mu
    s = catmap.cat_sft()
    sums = []
    for n in range(1, 9):
        total = QuadExt(0)
        for w in symbolic.enumerate_words(s, n):
            val, lat = catmap.cylinder_measure(w)
            ok &= lat.to_quad() == val
            total = total + val
        sums.append(total)
    ok &= all(t == 1 for t in sums)
    return bool(ok), f"cylinder sums n=1..8 all one: {all(t == 1 for t in sums)}"


A1 = [[2, 2, 2, 1, 1], [1, 1, 1, 1, 1], [2, 2, 2, 1, 1], [1, 1, 1, 1, 1], [2, 2, 2, 1, 1]]


def check_bratteli() -> tuple[bool, str]:
    ok = catmap.stage_dims_cat(1) == A1
    diagrams = kzero.builtin_diagrams()
    for d in diagrams.values():
        for n in range(12):
            dn = kzero.stage_dims(d, n)
            ok &= kzero.stage_dims(d, n + 1) == kzero.k0_map(d.matrix(n), dn)
    fib = [0, 1]
    while len(fib) < 16:
        fib.append(fib[-1] + fib[-2])
    ok &= all(kzero.stage_dims(diagrams["penrose"], n) == (fib[n + 1], fib[n]) for n in range(1, 13))
    ok &= all(kzero.stage_dims(diagrams["baker"], n) == (2**n, 2**n) for n in range(13))
    # cat stages count admissible two-sided words of length 2n+1
    s = catmap.cat_sft()
    for n in range(1, 4):
        a = catmap.stage_dims_cat(n)
        ok &= all(a[i][j] == symbolic.count_words(s, 2 * n + 1, i, j) for i in range(5) for j in range(5))
        ok &= list(kzero.stage_dims(diagrams["cat"], n)) == [x for r in a for x in r]
    return bool(ok), "a(1), unitality to stage 12, Fibonacci and 2^n dims"


def check_doubled_spectrum() -> tuple[bool, str]:
    Td, _ = catmap.doubled_model()
    T = Td.transition
    rank = spectral.matrix_rank(T)
    cp = spectral.char_poly(T)
    expected = _poly(*([[1, 0]] * 21), [1, -1], [1, -1], [1, -7, 1])
    t = TAU
    vR = {"s": (1, 1, 1, -t, -t), "u": (1, 1, 1, t - 1, t - 1)}
    vL = {"s": (1, -t, 1, -t, 1), "u": (1, t - 1, 1, t - 1, 1)}
    lam = {"s": LAMBDA_S, "u": LAMBDA_U}
    eig_ok = True
    found = []
    for a in "su":
        for b in "su":
            v = tuple(QuadExt.coerce(x) * y for x in vL[a] for y in vR[b])
            mu = lam[a] * lam[b]
            eig_ok &= spectral.mat_vec(T, v) == tuple(mu * x for x in v)
            found.append(mu)
    spectrum_ok = sorted(found, key=float) == sorted([QuadExt(1), QuadExt(1), LAMBDA_S**2, LAMBDA_U**2], key=float)
    PL, PR, Z = catmap.projectors()
    Tc = catmap.cat_sft().transition
    proj_ok = (PR @ Tc - Z @ PR).is_zero() and (PL @ Tc.T - Z @ PL).is_zero()
    ok = rank == 4 and cp == expected and eig_ok and spectrum_ok and proj_ok
    return ok, f"rank={rank} charpoly_ok={cp == expected} eigen_ok={eig_ok} projectors_ok={proj_ok}"


def check_penrose_k0() -> tuple[bool, str]:
    grp = kzero.k0_closed_form("penrose")
    E = kzero.DimGroupElement
    ok = grp.order_functional == (TAU, QuadExt(1)) and grp.scale_bound == TAU + 1
    on_boundary = kzero.functional_value("penrose", E(1, (1, 1))) == grp.scale_bound
    ok &= on_boundary and kzero.dl_in_scale("penrose", E(1, (1, 1)))
    ok &= kzero.dl_in_scale("penrose", E(1, (2, -3)))
    ok &= not kzero.dl_positive("penrose", E(1, (1, -2)))
    ok &= kzero.pi_embed("penrose", E(1, (1, 0))).to_quad() == TAU - 1
    return bool(ok), f"functional={grp.order_functional} bound={grp.scale_bound}"


def check_cat_k0(samples: int = 100, seed: int = 20240601) -> tuple[bool, str]:
    grp = kzero.k0_closed_form("cat")
    bound = QuadExt(F(25, 2), F(11, 2))
    sq5 = QuadExt(0, 1)
    fn_expected = (QuadExt(1), (sq5 - 1) / 2, (sq5 - 1) / 2, (3 - sq5) / 2)
    unit = kzero.reference_element("cat", (13, 8, 8, 5))
    ok = grp.order_functional == fn_expected and grp.scale_bound == bound
    ok &= grp.unit_class == (13, 8, 8, 5)
    ok &= kzero.functional_value("cat", unit) == bound and kzero.dl_in_scale("cat", unit)
    rng = random.Random(seed)
    rt_ok = True
    for _ in range(samples):
        point = (CatLatticeElem(rng.randint(-50, 50), rng.randint(-50, 50)), rng.randint(-50, 50), rng.randint(-50, 50))
        coords = kzero.pi_invert("cat", point)
        back = kzero.pi_embed("cat", kzero.reference_element("cat", coords))
        rt_ok &= back == point
    return bool(ok and rt_ok), f"unit_value={kzero.functional_value('cat', unit)} roundtrips_ok={rt_ok}"


def check_baker_compact() -> tuple[bool, str]:
    E = kzero.DimGroupElement
    ok = kzero.k0_closed_form("baker").scale_bound == 2
    # unit class maps to 1; dyadic values at every stage are canonical
    ok &= kzero.pi_embed("baker", E(0, (1, 1))) == DyadicRat(1, 0)
    ok &= kzero.pi_embed("baker", E(3, (3, 5))) == DyadicRat(1, 1)
    for n in range(5):
        for a in range(-3, 2**n + 3):
            for b in (0, 2**n):
                x = E(n, (a, b))
                val = Fraction(a + b, 2 ** (n + 1))
                ok &= kzero.dl_in_scale("baker", x) == (0 <= val <= 1)
                ok &= kzero.dl_positive("baker", x) == (val >= 0)
    cases = {
        (0, 0): (True, True),
        (0, 5): (True, True),
        (0, -1): (False, False),
        (1, -2): (True, True),
        (1, 1): (True, True),
        (1, 2): (True, False),
        (2, -7): (True, False),
        (-1, 4): (False, False),
    }
    for (a, b), (pos, sc) in cases.items():
        x = E(1, (a, b))
        ok &= kzero.dl_positive("compact_unit", x) == pos and kzero.dl_in_scale("compact_unit", x) == sc
    ok &= kzero.k0_closed_form("compact_unit").unit_class == (1, 1)
    return bool(ok), "dyadic scale [0,1] and compacts-plus-unit branches"


def check_groupoid(samples: int = 50, seed: int = 7) -> tuple[bool, str]:
    import numpy as np

    classes = [[0, 1, 2], [3, 4]]
    rng = random.Random(seed)
    ok = kzero.block_shape(classes) == (3, 2)

    def rand_block():
        m = [[0] * 5 for _ in range(5)]
        for cls in classes:
            for i in cls:
                for j in cls:
                    m[i][j] = rng.randint(-9, 9)
        return m

    for _ in range(samples):
        f, h = rand_block(), rand_block()
        got = kzero.groupoid_block_product(f, h, classes)
        big = np.array(f) @ np.array(h)
        blocks = np.zeros((5, 5), dtype=int)
        blocks[:3, :3] = np.array(f)[:3, :3] @ np.array(h)[:3, :3]
        blocks[3:, 3:] = np.array(f)[3:, 3:] @ np.array(h)[3:, 3:]
        ok &= np.array_equal(np.array(got), blocks) and np.array_equal(blocks, big)
    return bool(ok), f"{samples} pairs"


CHECKS: list[tuple[int, str, Check]] = [
    (1, "frequency tables exact", check_frequencies),
    (2, "characteristic polynomials and dominant root", check_char_polys),
    (3, "geometric oracle after eight inflations", check_geometry),
    (4, "cat measures and cylinder sums", check_cat_measures),
    (5, "Bratteli stage dimensions", check_bratteli),
    (6, "doubled transition matrix spectrum", check_doubled_spectrum),
    (7, "Penrose K0", check_penrose_k0),
    (8, "cat K0 unit and Pi round trips", check_cat_k0),
    (9, "baker and compacts-plus-unit K0", check_baker_compact),
    (10, "groupoid product equals block product", check_groupoid),
]


def run_all(out=print, limit: float = 60.0) -> bool:
    """Run every check, print one line each, and return overall success."""
    t0 = time.perf_counter()
    all_ok = True
    for num, name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        out(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name} ({detail})")
    dt = time.perf_counter() - t0
    ok = all_ok and dt < limit
    out(f"[{'PASS' if ok else 'FAIL'}] criterion 11: selftest complete ({dt:.2f}s, limit {limit:.0f}s)")
    return ok
