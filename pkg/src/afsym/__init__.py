"""Exact invariants of Penrose tilings, the cat map and the baker map, with
their AF algebras and scaled dimension groups."""
from __future__ import annotations

from .qfield import LAMBDA_S, LAMBDA_U, TAU, CatLatticeElem, DyadicRat, GoldenInt, QuadExt

__version__ = "0.1.0"

__all__ = ["QuadExt", "GoldenInt", "CatLatticeElem", "DyadicRat", "TAU", "LAMBDA_S", "LAMBDA_U"]
