"""Subshifts of finite type.

Convention used everywhere: ``transition[i][j] == 1`` means the step
``j -> i`` is allowed, so word counts come from powers applied to column
vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import EnumerationLimitExceeded, InadmissibleWord, ShapeMismatch
from .spectral import RatMatrix, matrix_power

__all__ = [
    "Sft",
    "parse_word",
    "format_word",
    "is_admissible",
    "count_words",
    "enumerate_words",
    "tensor_double",
    "is_primitive",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 10**6

Word = tuple  # tuple of alphabet indices


@dataclass(frozen=True)
class Sft:
    alphabet: tuple[str, ...]
    transition: RatMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if not isinstance(self.transition, RatMatrix):
            object.__setattr__(self, "transition", RatMatrix.of(self.transition))
        k = len(self.alphabet)
        if self.transition.shape != (k, k):
            raise ShapeMismatch(f"transition matrix {self.transition.shape} for {k} symbols")
        if any(x not in (0, 1) for r in self.transition.rows for x in r):
            raise ValueError("transition matrix must be 0/1")
        if len(set(self.alphabet)) != k:
            raise ValueError("duplicate symbols")

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def allowed(self, src: int, dst: int) -> bool:
        return self.transition.rows[dst][src] == 1

    def index(self, name: str) -> int:
        try:
            return self.alphabet.index(name)
        except ValueError:
            raise InadmissibleWord(f"unknown symbol {name!r}") from None


def parse_word(s: Sft, text: str | Sequence[str]) -> Word:
    names = [t.strip() for t in text.split(",")] if isinstance(text, str) else list(text)
    return tuple(s.index(n) for n in names if n != "")


def format_word(s: Sft, w: Iterable[int]) -> str:
    return ",".join(s.alphabet[i] for i in w)


def _check_range(s: Sft, w: Sequence[int]) -> None:
    for x in w:
        if not 0 <= x < s.size:
            raise InadmissibleWord(f"symbol index {x} out of range")


def is_admissible(s: Sft, w: Sequence[int]) -> bool:
    _check_range(s, w)
    return all(s.allowed(a, b) for a, b in zip(w, w[1:]))


def count_words(s: Sft, n: int, start: int | None = None, end: int | None = None) -> int:
    """Number of admissible words of length n, optionally pinned at either end."""
    if n < 1:
        raise ValueError("word length must be at least 1")
    P = matrix_power(s.transition, n - 1).to_int_lists()
    srcs = range(s.size) if start is None else [start]
    dsts = range(s.size) if end is None else [end]
    return sum(P[j][i] for i in srcs for j in dsts)


def enumerate_words(s: Sft, n: int, limit: int = ENUMERATION_LIMIT) -> list[Word]:
    """All admissible words of length n in lexicographic order."""
    if n < 1:
        raise ValueError("word length must be at least 1")
    if count_words(s, n) > limit:
        raise EnumerationLimitExceeded(f"more than {limit} words of length {n}")
    words: list[Word] = [(i,) for i in range(s.size)]
    for _ in range(n - 1):
        words = [w + (j,) for w in words for j in range(s.size) if s.allowed(w[-1], j)]
    return words


def tensor_double(s: Sft) -> Sft:
    """Pairs (i, k); transition[(i,k),(j,l)] = transition^T[i][j] * transition[k][l]."""
    T = s.transition
    alphabet = tuple(f"{a}|{b}" for a, b in product(s.alphabet, s.alphabet))
    return Sft(alphabet, T.T.kron(T))


def is_primitive(s: Sft) -> bool:
    n = s.size
    # Wielandt: a primitive matrix has a positive power at exponent (n-1)^2 + 1
    P = s.transition
    Q = P
    for _ in range(n * n):
        if all(x > 0 for r in Q.rows for x in r):
            return True
        Q = RatMatrix.of([[int(x > 0) for x in r] for r in (Q @ P).rows])
    return False


def full_shift(alphabet: Sequence[str]) -> Sft:
    k = len(alphabet)
    return Sft(tuple(alphabet), RatMatrix.of([[1] * k for _ in range(k)]))


def check_admissible(s: Sft, w: Sequence[int]) -> None:
    if not w:
        raise InadmissibleWord("empty word")
    if not is_admissible(s, w):
        raise InadmissibleWord(f"word {format_word(s, w)} violates the grammar")
