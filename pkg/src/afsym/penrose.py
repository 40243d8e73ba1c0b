"""Closed-form Penrose tiling invariants: prototile, edge and vertex
frequencies, the motif-frequency formula, the L/S subshift and its recoding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DanglingSymbol, InadmissibleWord
from .qfield import TAU, GoldenInt, QuadExt, quad_to_lattice
from .spectral import RatMatrix, char_poly, dominant_quadratic_root, perron_vector
from .symbolic import Sft, check_admissible, parse_word
from .tilegeom import EDGE_LABELS, VERTEX_LABELS, TrianglePatch, patch_from_code

__all__ = [
    "FrequencyTable",
    "PROTOTILE_MATRIX",
    "EDGE_MATRIX",
    "VERTEX_MATRIX",
    "prototile_frequencies",
    "edge_frequencies",
    "vertex_frequencies",
    "frequency_table",
    "ratio_iterates",
    "inflate_motif_frequency",
    "motif_frequency",
    "penrose_sft",
    "sequence_to_patch",
    "recode",
    "decode",
]

F = Fraction

# tile counts under one inflation (double decomposition): column j gives the
# children of a tile of type j
PROTOTILE_MATRIX = RatMatrix.of([[2, 1], [1, 1]])

EDGE_MATRIX = RatMatrix.of(
    [
        [F(2, 3), F(2, 3), 1, F(1, 3), F(1, 3), 0, F(2, 3)],
        [0, 1, 0, 1, 0, 1, 1],
        [0, 1, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [F(2, 3)] * 7,
        [1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0],
    ]
)

VERTEX_MATRIX = RatMatrix.of(
    [
        [0, 1, 0, 0, 0, 1, 1],
        [1, 0, 0, 0, 0, 0, 0],
        [F(5, 2), F(5, 2), F(1, 2), F(1, 2), F(3, 2), F(3, 2), 2],
        [F(5, 2), 0, 0, 1, F(3, 2), 0, 0],
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
    ]
)

# symmetry factors turning neighbourhood ratios into per-tile frequencies
EDGE_FACTORS = (F(3), F(3), F(3), F(3, 2), F(3, 2), F(3), F(3))
VERTEX_FACTORS = (F(5), F(5), F(1), F(1), F(1), F(1), F(1))


@dataclass(frozen=True)
class FrequencyTable:
    kind: str
    labels: tuple[str, ...]
    hat_values: tuple[QuadExt, ...]
    converted_values: tuple[QuadExt, ...]
    eigenvalue: QuadExt

    def __post_init__(self) -> None:
        if sum(self.hat_values, QuadExt(0)) != 1:
            raise AssertionError(f"{self.kind} ratios do not sum to one")
        for v in self.converted_values:
            quad_to_lattice(v, "golden")

    def __getitem__(self, label: str) -> QuadExt:
        return self.converted_values[self.labels.index(label)]

    def hat(self, label: str) -> QuadExt:
        return self.hat_values[self.labels.index(label)]

    def lattice(self) -> tuple[GoldenInt, ...]:
        return tuple(quad_to_lattice(v, "golden") for v in self.converted_values)


def _table(kind: str, labels, M: RatMatrix, factors) -> FrequencyTable:
    lam = dominant_quadratic_root(char_poly(M))
    hat = perron_vector(M, lam, "sum_one")
    return FrequencyTable(kind, tuple(labels), hat, tuple(f * h for f, h in zip(factors, hat)), lam)


def prototile_frequencies() -> FrequencyTable:
    return _table("prototile", ("L", "S"), PROTOTILE_MATRIX, (F(1), F(1)))


def edge_frequencies() -> FrequencyTable:
    return _table("edge", EDGE_LABELS, EDGE_MATRIX, EDGE_FACTORS)


def vertex_frequencies() -> FrequencyTable:
    return _table("vertex", VERTEX_LABELS, VERTEX_MATRIX, VERTEX_FACTORS)


def frequency_table(kind: str) -> FrequencyTable:
    try:
        return {"prototile": prototile_frequencies, "edge": edge_frequencies, "vertex": vertex_frequencies}[kind]()
    except KeyError:
        raise ValueError(f"unknown frequency kind {kind!r}") from None


def ratio_iterates(n: int, start=1) -> list[Fraction]:
    """N_L/N_S after successive inflations: l -> (2l+1)/(l+1)."""
    out = [Fraction(start)]
    for _ in range(n):
        l = out[-1]
        out.append((2 * l + 1) / (l + 1))
    return out


def inflate_motif_frequency(kappa) -> QuadExt:
    return (2 - TAU) * QuadExt.coerce(kappa)


def motif_frequency(
    k: int,
    n_L: int = 0,
    n_S: int = 0,
    n_edge: Sequence[int] = (0,) * 7,
    n_vertex: Sequence[int] = (0,) * 7,
) -> tuple[QuadExt, GoldenInt]:
    """Frequency of a motif made of ``k``-fold inflated tiles, edges and vertices."""
    counts = [n_L, n_S, *n_edge, *n_vertex]
    if len(n_edge) != 7 or len(n_vertex) != 7:
        raise ValueError("edge and vertex counts need seven entries each")
    if k < 0 or any(c < 0 for c in counts):
        raise ValueError("counts must be nonnegative")
    freqs = (
        prototile_frequencies().converted_values
        + edge_frequencies().converted_values
        + vertex_frequencies().converted_values
    )
    total = sum((c * f for c, f in zip(counts, freqs)), QuadExt(0))
    value = (2 - TAU) ** k * total
    return value, quad_to_lattice(value, "golden")


def penrose_sft() -> Sft:
    return Sft(("L", "S"), RatMatrix.of([[1, 1], [1, 0]]))


def _symbols(w) -> list[str]:
    if isinstance(w, str):
        return [t.strip() for t in w.split(",") if t.strip()]
    return list(w)


def sequence_to_patch(w) -> TrianglePatch:
    """Triangle patch of the tile coded by the admissible word w = x_0,...,x_n.

    The marked tile has code w: composing the patch repeatedly and reading
    the type of the tile containing it returns w.
    """
    s = penrose_sft()
    check_admissible(s, parse_word(s, _symbols(w)))
    return patch_from_code(_symbols(w))


def recode(w) -> list[str]:
    """L -> l and the pair S,L -> s."""
    w = _symbols(w)
    s = penrose_sft()
    check_admissible(s, parse_word(s, w))
    out: list[str] = []
    i = 0
    while i < len(w):
        if w[i] == "L":
            out.append("l")
            i += 1
        elif i + 1 < len(w):
            out.append("s")
            i += 2
        else:
            raise DanglingSymbol("trailing S has no closing L")
    return out


def decode(w) -> list[str]:
    """Inverse of :func:`recode`."""
    out: list[str] = []
    for x in _symbols(w):
        if x == "l":
            out.append("L")
        elif x == "s":
            out.extend(["S", "L"])
        else:
            raise InadmissibleWord(f"unknown symbol {x!r} in l/s word")
    return out
