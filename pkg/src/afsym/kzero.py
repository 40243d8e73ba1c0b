"""Bratteli diagrams, K0 of finite-dimensional stages, direct-limit
arithmetic and the scaled dimension groups of the built-in models.

Direct-limit elements are ``(stage, vector)`` pairs.  For the models with a
closed form every element is mapped to integer coordinates at a reference
stage (stage 1, or the dyadic value for the baker map), where positivity
and the scale are decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .catmap import doubled_model, projectors
from .errors import ShapeMismatch, SupportViolation
from .qfield import CatLatticeElem, DyadicRat, GoldenInt, QuadExt, quad_sign, quad_to_lattice
from .spectral import RatMatrix, char_poly, dominant_quadratic_root, mat_vec, matrix_power, perron_vector

__all__ = [
    "BratteliDiagram",
    "DimGroupElement",
    "FiniteDimensionGroup",
    "ScaledDimensionGroup",
    "MODELS",
    "stage_dims",
    "k0_of_finite",
    "k0_map",
    "dl_push",
    "dl_equal",
    "dl_add",
    "dl_neg",
    "k0_closed_form",
    "coordinates",
    "functional_value",
    "dl_positive",
    "dl_in_scale",
    "pi_embed",
    "pi_invert",
    "groupoid_block_product",
    "block_shape",
    "builtin_diagrams",
]

MODELS = ("penrose", "cat", "baker", "compact_unit")


@dataclass(frozen=True)
class BratteliDiagram:
    """Stage 0 has ``initial_dims``; matrix i maps stage i to stage i+1."""

    name: str
    initial_dims: tuple[int, ...]
    head: tuple[RatMatrix, ...]
    tail: RatMatrix

    def __post_init__(self) -> None:
        rank = len(self.initial_dims)
        for M in self.head + (self.tail,):
            if M.shape[1] != rank:
                raise ShapeMismatch(f"{self.name}: matrix {M.shape} after a stage of rank {rank}")
            rank = M.shape[0]
        if not self.tail.is_square:
            raise ShapeMismatch("tail matrix must be square")
        if any(x < 0 or x.denominator != 1 for M in self.head + (self.tail,) for r in M.rows for x in r):
            raise ValueError("multiplicities must be nonnegative integers")

    def matrix(self, i: int) -> RatMatrix:
        return self.head[i] if i < len(self.head) else self.tail

    def rank(self, n: int) -> int:
        return len(self.initial_dims) if n == 0 else self.matrix(n - 1).shape[0]

    @property
    def tail_start(self) -> int:
        """First stage from which only the tail matrix is applied."""
        return len(self.head)


@dataclass(frozen=True)
class DimGroupElement:
    stage: int
    vector: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        if self.stage < 0:
            raise ValueError("stage must be nonnegative")


def stage_dims(d: BratteliDiagram, n: int) -> tuple[int, ...]:
    v: tuple = d.initial_dims
    for i in range(n):
        v = mat_vec(d.matrix(i), v)
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class FiniteDimensionGroup:
    """(Z^k, N^k, box) for a direct sum of full matrix algebras."""

    dims: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.dims)

    def is_positive(self, v: Sequence[int]) -> bool:
        self._check(v)
        return all(x >= 0 for x in v)

    def in_scale(self, v: Sequence[int]) -> bool:
        self._check(v)
        return all(0 <= x <= n for x, n in zip(v, self.dims))

    @property
    def unit_class(self) -> tuple[int, ...]:
        return self.dims

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.rank:
            raise ShapeMismatch(f"vector of length {len(v)} in a group of rank {self.rank}")


def k0_of_finite(dims: Sequence[int]) -> FiniteDimensionGroup:
    dims = tuple(int(x) for x in dims)
    if not dims or any(x <= 0 for x in dims):
        raise ValueError("dimensions must be positive")
    return FiniteDimensionGroup(dims)


def k0_map(A: RatMatrix, x: Sequence[int]) -> tuple[int, ...]:
    if not isinstance(A, RatMatrix):
        A = RatMatrix.of(A)
    return tuple(int(v) for v in mat_vec(A, tuple(x)))


def dl_push(d: BratteliDiagram, x: DimGroupElement, stage: int) -> DimGroupElement:
    if stage < x.stage:
        raise ValueError("cannot push an element backwards")
    if len(x.vector) != d.rank(x.stage):
        raise ShapeMismatch(f"vector of length {len(x.vector)} at stage {x.stage} of rank {d.rank(x.stage)}")
    v = x.vector
    for i in range(x.stage, stage):
        v = k0_map(d.matrix(i), v)
    return DimGroupElement(stage, v)


def _common(d: BratteliDiagram, *xs: DimGroupElement) -> list[DimGroupElement]:
    s = max([d.tail_start] + [x.stage for x in xs])
    return [dl_push(d, x, s) for x in xs]


def dl_equal(d: BratteliDiagram, x: DimGroupElement, y: DimGroupElement) -> bool:
    """Classes agree iff the tail images coincide after at most rank-many steps."""
    x, y = _common(d, x, y)
    v, w = x.vector, y.vector
    for _ in range(len(v) + 1):
        if v == w:
            return True
        v, w = k0_map(d.tail, v), k0_map(d.tail, w)
    return v == w


def dl_add(d: BratteliDiagram, x: DimGroupElement, y: DimGroupElement) -> DimGroupElement:
    x, y = _common(d, x, y)
    return DimGroupElement(x.stage, tuple(a + b for a, b in zip(x.vector, y.vector)))


def dl_neg(x: DimGroupElement) -> DimGroupElement:
    return DimGroupElement(x.stage, tuple(-a for a in x.vector))


# built-in diagrams ---------------------------------------------------------

@lru_cache(maxsize=None)
def builtin_diagrams() -> dict[str, BratteliDiagram]:
    col = RatMatrix.of([[1], [1]])
    Td, A0 = doubled_model()
    return {
        "penrose": BratteliDiagram("penrose", (1,), (col,), RatMatrix.of([[1, 1], [1, 0]])),
        "cat": BratteliDiagram("cat", (1,) * 5, (A0,), Td.transition),
        "baker": BratteliDiagram("baker", (1, 1), (), RatMatrix.of([[1, 1], [1, 1]])),
        "compact_unit": BratteliDiagram("compact_unit", (1,), (col,), RatMatrix.of([[1, 0], [1, 1]])),
    }


def _model(name: str) -> str:
    name = name.replace("-", "_")
    if name not in MODELS:
        raise ValueError(f"unknown model {name!r}")
    return name


@dataclass(frozen=True)
class ScaledDimensionGroup:
    model: str
    rank: int
    reference_stage: int
    order_functional: tuple[QuadExt, ...] | None
    growth: QuadExt | None
    scale_bound: QuadExt | None
    unit_class: tuple
    embedding: str
    cone: str
    scale: str
    diagram: BratteliDiagram = field(repr=False)


@lru_cache(maxsize=None)
def _range_data():
    """P-tilde = P^L kron P^R and its inverse on the tail: (Z kron Z)^-1."""
    PL, PR, Z = projectors()
    P = PL.kron(PR)
    ZZ = Z.kron(Z)
    return P, ZZ, matrix_power(ZZ, -1)


def _rank_tail(model: str) -> RatMatrix:
    d = builtin_diagrams()[model]
    if model == "cat":
        return _range_data()[1]
    return d.tail


def coordinates(model: str, x: DimGroupElement):
    """Integer coordinates of the class of x at the reference stage.

    The baker group is Z[1/2]; its coordinate is the dyadic value of x with
    the unit sent to 1.
    """
    model = _model(model)
    d = builtin_diagrams()[model]
    if len(x.vector) != d.rank(x.stage):
        raise ShapeMismatch(f"vector of length {len(x.vector)} at stage {x.stage} of rank {d.rank(x.stage)}")
    if model == "baker":
        n = x.stage
        return DyadicRat(sum(x.vector), n + 1)
    if x.stage == 0:
        x = dl_push(d, x, 1)
    v = x.vector
    if model == "cat":
        P, _, ZZinv = _range_data()
        v = k0_map(P, v)
        inv = ZZinv
    else:
        inv = matrix_power(d.tail, -1)
    back = matrix_power(inv, x.stage - 1)
    c = mat_vec(back, v)
    if any(Fraction(t).denominator != 1 for t in c):
        raise AssertionError("tail matrix is not unimodular on its range")
    return tuple(int(t) for t in c)


@lru_cache(maxsize=None)
def k0_closed_form(model: str) -> ScaledDimensionGroup:
    model = _model(model)
    d = builtin_diagrams()[model]
    if model == "compact_unit":
        return ScaledDimensionGroup(
            model, 2, 1, None, None, None, coordinates(model, DimGroupElement(0, (1,))),
            "identity on Z^2 (stage-1 coordinates)",
            "{0} x N  union  N+ x Z",
            "{0} x N  union  {1} x (1 - N)",
            d,
        )
    M = _rank_tail(model)
    lam = dominant_quadratic_root(char_poly(M))
    norm = "last_one" if model == "penrose" else "first_one"
    # left eigenvector of the tail on its range
    f = perron_vector(M.T, lam, norm)
    unit_elem = DimGroupElement(0, d.initial_dims)
    if model == "baker":
        unit = tuple(d.initial_dims)
        bound = sum((a * b for a, b in zip(f, unit)), QuadExt(0))
        return ScaledDimensionGroup(
            model, 1, 0, f, lam, bound, unit,
            "dyadic rationals: (x1 + x2) / 2^(n+1) at stage n",
            "functional >= 0, i.e. dyadic value >= 0",
            "0 <= dyadic value <= 1",
            d,
        )
    unit = coordinates(model, unit_elem)
    bound = sum((a * b for a, b in zip(f, unit)), QuadExt(0))
    if model == "penrose":
        emb = "(x, y) -> (tau - 1) x + (2 - tau) y in Z + tau Z"
    else:
        emb = "[u, v; w, z] -> (2 f.(u,v,w,z) / (25 + 11 sqrt5), u, v) in (zeta Z + eta Z) x Z^2"
    return ScaledDimensionGroup(
        model, len(unit), 1, f, lam, bound, unit, emb,
        "0 <= f . x",
        "0 <= f . x <= f . unit",
        d,
    )


def functional_value(model: str, x: DimGroupElement) -> QuadExt:
    g = k0_closed_form(model)
    if g.order_functional is None:
        raise ValueError(f"{model} has no order functional")
    if g.model == "baker":
        return coordinates("baker", x).to_quad() * g.scale_bound
    c = coordinates(g.model, x)
    return sum((a * b for a, b in zip(g.order_functional, c)), QuadExt(0))


def dl_positive(model: str, x: DimGroupElement) -> bool:
    model = _model(model)
    if model == "compact_unit":
        a, b = coordinates(model, x)
        return (a == 0 and b >= 0) or a > 0
    return quad_sign(functional_value(model, x)) >= 0


def dl_in_scale(model: str, x: DimGroupElement) -> bool:
    model = _model(model)
    if model == "compact_unit":
        a, b = coordinates(model, x)
        return (a == 0 and b >= 0) or (a == 1 and b <= 1)
    g = k0_closed_form(model)
    v = functional_value(model, x)
    return quad_sign(v) >= 0 and quad_sign(g.scale_bound - v) >= 0


def pi_embed(model: str, x: DimGroupElement):
    model = _model(model)
    if model == "penrose":
        a, b = coordinates(model, x)
        return GoldenInt(2 * b - a, a - b)
    if model == "cat":
        g = k0_closed_form(model)
        u, v, _, _ = coordinates(model, x)
        first = 2 * functional_value(model, x) / (2 * g.scale_bound)
        return quad_to_lattice(first, "cat"), u, v
    if model == "baker":
        return coordinates(model, x)
    raise ValueError(f"no lattice embedding for {model}")


def pi_invert(model: str, point) -> tuple[int, ...]:
    """Reference-stage coordinates of the class with the given lattice image."""
    model = _model(model)
    if model == "penrose":
        if not isinstance(point, GoldenInt):
            point = quad_to_lattice(point, "golden")
        m, n = point.m, point.n
        return (m + 2 * n, m + n)
    if model == "cat":
        c, u, v = point
        if not isinstance(c, CatLatticeElem):
            c = quad_to_lattice(c, "cat")
        n, m = c.n, c.m
        return (u, v, 8 * n + 13 * m - u - v, 5 * n + 8 * m - u)
    raise ValueError(f"no inverse embedding for {model}")


def reference_element(model: str, coords: Sequence[int]) -> DimGroupElement:
    """An element whose reference coordinates are ``coords``.

    For the cat model the reference stage carries 25-vectors; a preimage
    under P-tilde is built from the pairs (A|A), (A|B00), (B10|A), (B10|B00).
    """
    model = _model(model)
    if model == "cat":
        u, v, w, z = coords
        vec = [0] * 25
        vec[0], vec[1], vec[15], vec[16] = u, v, w, z
        return DimGroupElement(1, tuple(vec))
    if model == "baker":
        raise ValueError("baker elements are not given by reference coordinates")
    return DimGroupElement(1, tuple(coords))


# finite groupoid algebra ------------------------------------------------------

def _class_map(classes: Sequence[Sequence[int]], n: int) -> list[int]:
    owner = [-1] * n
    for ci, cls in enumerate(classes):
        for m in cls:
            if not 0 <= m < n or owner[m] != -1:
                raise ValueError("classes must partition the index set")
            owner[m] = ci
    if -1 in owner:
        raise ValueError("classes must cover the index set")
    return owner


def groupoid_block_product(f, g, classes: Sequence[Sequence[int]]):
    """(f g)(m, n) = sum over k ~ m of f(m, k) g(k, n) for functions on R."""
    n = len(f)
    if len(g) != n or any(len(r) != n for r in f) or any(len(r) != n for r in g):
        raise ShapeMismatch("functions must be square arrays on the same set")
    owner = _class_map(classes, n)
    for name, h in (("f", f), ("g", g)):
        for i in range(n):
            for j in range(n):
                if owner[i] != owner[j] and h[i][j] != 0:
                    raise SupportViolation(f"{name}({i},{j}) is nonzero off the relation")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            if owner[i] == owner[j]:
                for k in classes[owner[i]]:
                    acc += f[i][k] * g[k][j]
            row.append(acc)
        out.append(row)
    return out


def block_shape(classes: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Sizes of the full matrix blocks: (3, 2) means M3 + M2."""
    return tuple(len(c) for c in classes)
