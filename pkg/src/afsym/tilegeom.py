"""Geometric Penrose triangle patches with exact coordinates.

Two triangle shapes are used: the acute golden triangle (apex 36 deg, a kite
half) and the obtuse one (apex 108 deg, a dart half).  Which shape carries
the label L alternates with the decomposition parity: at parity 0 the acute
triangle is L, at parity 1 the obtuse one is.  A decomposition splits every
L into an S and an L of the next parity and relabels every S as L.

Vertices are stored as ``(A, B, C)`` with A the apex.  For acute tiles AC is
the kite axis; for obtuse tiles AB is the dart axis.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from typing import Sequence

from . import cyclo
from .cyclo import CycloPoint
from .errors import InadmissibleWord, UnclassifiableNeighborhood
from .qfield import TAU, QuadExt

__all__ = [
    "Triangle",
    "TrianglePatch",
    "StyleOptions",
    "prototile",
    "decompose",
    "compose",
    "inflate",
    "count_tiles",
    "edge_histogram",
    "vertex_histogram",
    "is_edge_to_edge",
    "patch_area",
    "patch_from_code",
    "code_of_marked",
    "render_svg",
    "EDGE_LABELS",
    "VERTEX_LABELS",
]

ACUTE, OBTUSE = "acute", "obtuse"

EDGE_LABELS = ("k", "k'", "d", "t", "l'", "r", "r'")
VERTEX_LABELS = ("⊙", "★", "A", "D", "J", "Q", "K")

# interior edge: sorted pair of (shape, edge) -> class
_EDGE_TABLE = {
    ((ACUTE, "AC"), (ACUTE, "AC")): "k",
    ((ACUTE, "AB"), (ACUTE, "AB")): "k'",
    ((OBTUSE, "AB"), (OBTUSE, "AB")): "d",
    ((ACUTE, "AB"), (OBTUSE, "BC")): "t",
    ((ACUTE, "BC"), (OBTUSE, "AC")): "l'",
    ((OBTUSE, "BC"), (OBTUSE, "BC")): "r",
    ((ACUTE, "BC"), (ACUTE, "BC")): "r'",
}


def _vsig(**counts: int) -> tuple:
    items = []
    for key, n in counts.items():
        shape = ACUTE if key[0] == "a" else OBTUSE
        items.extend([(shape, key[1])] * n)
    return tuple(sorted(items))


# interior vertex: sorted multiset of (shape, corner) -> class
_VERTEX_TABLE = {
    _vsig(aA=10): "⊙",
    _vsig(oB=10): "★",
    _vsig(aB=2, oA=2): "A",
    _vsig(aC=4, oC=2): "D",
    _vsig(aA=4, aC=2, oC=2): "J",
    _vsig(aB=4, oB=2): "Q",
    _vsig(aB=2, oB=6): "K",
}

# corner angles in units of pi/5
_ANGLE = {(ACUTE, "A"): 1, (ACUTE, "B"): 2, (ACUTE, "C"): 2, (OBTUSE, "A"): 3, (OBTUSE, "B"): 1, (OBTUSE, "C"): 1}


@dataclass(frozen=True, slots=True)
class Triangle:
    shape: str
    parity: int
    A: CycloPoint
    B: CycloPoint
    C: CycloPoint

    @property
    def kind(self) -> str:
        if self.parity == 0:
            return "L" if self.shape == ACUTE else "S"
        return "L" if self.shape == OBTUSE else "S"

    @property
    def vertices(self) -> tuple[CycloPoint, CycloPoint, CycloPoint]:
        return self.A, self.B, self.C

    @property
    def chirality(self) -> int:
        s = cyclo.cross(cyclo.sub(self.B, self.A), cyclo.sub(self.C, self.A))
        return 1 if s > 0 else -1

    def area(self) -> QuadExt:
        """Area divided by sin(36 deg), exact in Q(sqrt 5)."""
        return abs(cyclo.cross(cyclo.sub(self.B, self.A), cyclo.sub(self.C, self.A))) / 2

    def side_squares(self) -> tuple[QuadExt, QuadExt, QuadExt]:
        """Squared lengths of AB, AC, BC."""
        return (
            cyclo.abs2(cyclo.sub(self.B, self.A)),
            cyclo.abs2(cyclo.sub(self.C, self.A)),
            cyclo.abs2(cyclo.sub(self.C, self.B)),
        )

    def is_well_formed(self) -> bool:
        ab, ac, bc = self.side_squares()
        if ab != ac:
            return False
        # base/leg ratio is 1/tau for acute and tau for obtuse
        ratio2 = TAU * TAU if self.shape == OBTUSE else 1 / (TAU * TAU)
        return bc == ab * ratio2

    def scaled(self, factor: CycloPoint) -> "Triangle":
        return replace(self, A=cyclo.mul(self.A, factor), B=cyclo.mul(self.B, factor), C=cyclo.mul(self.C, factor))


@dataclass(frozen=True)
class TrianglePatch:
    triangles: tuple[Triangle, ...]
    marked: int | None = None

    def __len__(self) -> int:
        return len(self.triangles)

    @property
    def parity(self) -> int | None:
        ps = {t.parity for t in self.triangles}
        return ps.pop() if len(ps) == 1 else None


def prototile(kind: str, parity: int = 0) -> TrianglePatch:
    """A single L or S triangle with apex at the origin, marked."""
    if kind not in ("L", "S"):
        raise ValueError(f"unknown prototile {kind!r}")
    acute = (kind == "L") == (parity == 0)
    if acute:
        t = Triangle(ACUTE, parity, cyclo.ORIGIN, cyclo.ONE, cyclo.ZETA1)
    else:
        # legs 1/tau so that both shapes share the edge lengths {1/tau, 1}
        s = cyclo.TAU_INV_C
        t = Triangle(OBTUSE, parity, cyclo.ORIGIN, s, cyclo.mul(s, cyclo.power(3)))
    return TrianglePatch((t,), 0)


def _cut(P: CycloPoint, X: CycloPoint) -> CycloPoint:
    """Point on segment PX at distance |PX|/tau from P."""
    return cyclo.add(P, cyclo.mul(cyclo.sub(X, P), cyclo.TAU_INV_C))


def _split(t: Triangle) -> tuple[Triangle, ...]:
    q = 1 - t.parity
    A, B, C = t.A, t.B, t.C
    if t.kind == "S":
        return (replace(t, parity=q),)
    if t.shape == ACUTE:
        P = _cut(A, C)
        return (Triangle(ACUTE, q, B, C, P), Triangle(OBTUSE, q, P, B, A))
    Q = _cut(B, C)
    return (Triangle(ACUTE, q, B, Q, A), Triangle(OBTUSE, q, Q, C, A))


def decompose(p: TrianglePatch) -> TrianglePatch:
    """One decomposition step; the marked tile follows its L child."""
    out: list[Triangle] = []
    marked = None
    for i, t in enumerate(p.triangles):
        kids = _split(t)
        if i == p.marked:
            marked = len(out) + next(j for j, k in enumerate(kids) if k.kind == "L")
        out.extend(kids)
    return TrianglePatch(tuple(out), marked)


def _merge(s: Triangle, l: Triangle) -> Triangle | None:
    """Parent of an (S, L) sibling pair, or None if they are not siblings."""
    q = 1 - s.parity
    if s.shape == ACUTE:
        # parent acute (A,B,C): S = (B,C,P), L = (P,B,A)
        B, C, P = s.A, s.B, s.C
        if l.A == P and l.B == B:
            return Triangle(ACUTE, q, l.C, B, C)
    else:
        # parent obtuse (A,B,C): L = (B,Q,A), S = (Q,C,A)
        Q, C, A = s.A, s.B, s.C
        if l.B == Q and l.C == A:
            return Triangle(OBTUSE, q, A, l.A, C)
    return None


def compose(p: TrianglePatch) -> TrianglePatch:
    """Inverse of :func:`decompose` for patches whose S tiles all have their sibling.

    Raises ValueError if some S tile has no sibling in the patch.
    """
    by_edge: dict[frozenset, list[int]] = defaultdict(list)
    for i, t in enumerate(p.triangles):
        for e in ((t.A, t.B), (t.A, t.C), (t.B, t.C)):
            by_edge[frozenset(e)].append(i)
    partner: dict[int, int] = {}
    for i, t in enumerate(p.triangles):
        if t.kind != "S":
            continue
        near = sorted({j for e in ((t.A, t.B), (t.A, t.C), (t.B, t.C)) for j in by_edge[frozenset(e)]})
        for j in near:
            if j != i and p.triangles[j].kind == "L" and _merge(t, p.triangles[j]) is not None:
                partner[i] = j
                break
        else:
            raise ValueError("S tile without its sibling; patch cannot be composed")
    used = set(partner.values())
    out: list[Triangle] = []
    index_of: dict[int, int] = {}
    for i, t in enumerate(p.triangles):
        if t.kind == "S":
            parent = _merge(t, p.triangles[partner[i]])
            index_of[i] = index_of[partner[i]] = len(out)
            out.append(parent)
        elif i not in used:
            index_of[i] = len(out)
            out.append(replace(t, parity=1 - t.parity))
    marked = index_of[p.marked] if p.marked is not None else None
    return TrianglePatch(tuple(out), marked)


def inflate(p: TrianglePatch, steps: int = 1) -> TrianglePatch:
    """Scale by tau then decompose twice, ``steps`` times."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    for _ in range(steps):
        p = TrianglePatch(tuple(t.scaled(cyclo.TAU_C) for t in p.triangles), p.marked)
        p = decompose(decompose(p))
    return p


def count_tiles(p: TrianglePatch) -> tuple[int, int]:
    c = Counter(t.kind for t in p.triangles)
    return c["L"], c["S"]


def patch_area(p: TrianglePatch) -> QuadExt:
    return sum((t.area() for t in p.triangles), QuadExt(0))


def _require_even(p: TrianglePatch) -> None:
    # the seven-class tables describe the parity-0 (kite/dart) tiling only
    if p.parity != 0:
        raise ValueError("neighbourhood histograms need a patch at parity 0")


def _incidence(p: TrianglePatch):
    edges: dict[frozenset, list] = defaultdict(list)
    verts: dict[CycloPoint, list] = defaultdict(list)
    for t in p.triangles:
        edges[frozenset((t.A, t.B))].append((t.shape, "AB"))
        edges[frozenset((t.A, t.C))].append((t.shape, "AC"))
        edges[frozenset((t.B, t.C))].append((t.shape, "BC"))
        verts[t.A].append((t.shape, "A"))
        verts[t.B].append((t.shape, "B"))
        verts[t.C].append((t.shape, "C"))
    return edges, verts


def is_edge_to_edge(p: TrianglePatch) -> bool:
    """Check a disk-shaped patch: no edge shared thrice and V - E + F = 1.

    A vertex lying inside another tile's edge would make the naive edge
    count too large, so the Euler characteristic detects it.
    """
    edges, verts = _incidence(p)
    if any(len(v) > 2 for v in edges.values()):
        return False
    return len(verts) - len(edges) + len(p.triangles) == 1


def edge_histogram(p: TrianglePatch) -> dict[str, int]:
    """Counts of the seven interior edge classes."""
    _require_even(p)
    edges, _ = _incidence(p)
    hist = dict.fromkeys(EDGE_LABELS, 0)
    for inc in edges.values():
        if len(inc) != 2:
            continue
        label = _EDGE_TABLE.get(tuple(sorted(inc)))
        if label is None:
            raise UnclassifiableNeighborhood(f"edge with incidences {sorted(inc)}")
        hist[label] += 1
    return hist


def vertex_histogram(p: TrianglePatch) -> dict[str, int]:
    """Counts of the seven interior vertex classes."""
    _require_even(p)
    _, verts = _incidence(p)
    hist = dict.fromkeys(VERTEX_LABELS, 0)
    for inc in verts.values():
        total = sum(_ANGLE[c] for c in inc)
        if total < 10:
            continue
        label = _VERTEX_TABLE.get(tuple(sorted(inc))) if total == 10 else None
        if label is None:
            raise UnclassifiableNeighborhood(f"vertex with corners {sorted(inc)}")
        hist[label] += 1
    return hist


def patch_from_code(word: Sequence[str]) -> TrianglePatch:
    """Patch of level-0 tiles inside the level-n tile coded by x_0..x_n.

    The top tile has type x_n; each decomposition keeps the child whose type
    is the next lower symbol marked, so the marked level-0 tile has the code.
    """
    word = list(word)
    if not word or any(x not in ("L", "S") for x in word):
        raise InadmissibleWord("word must be a nonempty sequence over L, S")
    for a, b in zip(word, word[1:]):
        if a == "S" and b == "S":
            raise InadmissibleWord("S must be followed by L")
    n = len(word) - 1
    p = prototile(word[-1], parity=n % 2)
    for level in range(n - 1, -1, -1):
        target = word[level]
        out: list[Triangle] = []
        marked = None
        for i, t in enumerate(p.triangles):
            kids = _split(t)
            if i == p.marked:
                for k in kids:
                    if k.kind == target:
                        marked = len(out) + kids.index(k)
            out.extend(kids)
        if marked is None:
            raise InadmissibleWord("word violates the decomposition rule")
        p = TrianglePatch(tuple(out), marked)
    return p


def code_of_marked(p: TrianglePatch, length: int | None = None) -> list[str]:
    """Types of the tiles containing the marked tile under successive compositions.

    Composes until a single tile remains, or ``length`` symbols are read.
    """
    if p.marked is None:
        raise ValueError("patch has no marked tile")
    code = [p.triangles[p.marked].kind]
    while (length is None and len(p) > 1) or (length is not None and len(code) < length):
        p = compose(p)
        code.append(p.triangles[p.marked].kind)
    return code


@dataclass(frozen=True)
class StyleOptions:
    size: int = 800
    margin: float = 10.0
    stroke: str = "#333333"
    stroke_width: float = 0.5
    fill_L: str = "#f2c14e"
    fill_S: str = "#5b8e7d"
    fill_marked: str = "#d1495b"
    highlight_marked: bool = True


def render_svg(p: TrianglePatch, style: StyleOptions | None = None) -> str:
    style = style or StyleOptions()
    pts = [[cyclo.to_float(v) for v in t.vertices] for t in p.triangles]
    xs = [x for tri in pts for x, _ in tri] or [0.0]
    ys = [y for tri in pts for _, y in tri] or [0.0]
    w = max(xs) - min(xs) or 1.0
    h = max(ys) - min(ys) or 1.0
    k = (style.size - 2 * style.margin) / max(w, h)
    width = w * k + 2 * style.margin
    height = h * k + 2 * style.margin
    x0, y1 = min(xs), max(ys)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<g stroke="{style.stroke}" stroke-width="{style.stroke_width}" stroke-linejoin="round">',
    ]
    for i, (t, tri) in enumerate(zip(p.triangles, pts)):
        fill = style.fill_L if t.kind == "L" else style.fill_S
        if style.highlight_marked and i == p.marked:
            fill = style.fill_marked
        coords = " ".join(f"{(x - x0) * k + style.margin:.4f},{(y1 - y) * k + style.margin:.4f}" for x, y in tri)
        lines.append(f'<polygon class="{t.kind}" fill="{fill}" points="{coords}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
