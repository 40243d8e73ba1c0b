"""Domain errors shared across modules.

The CLI maps every subclass of :class:`DomainError` to exit status 1 and
prints the class name on stderr.
"""
from __future__ import annotations


class DomainError(Exception):
    """Base class for mathematically meaningful failures."""


class NotInLattice(DomainError):
    pass


class DominantRootNotQuadratic(DomainError):
    pass


class NotAnEigenvalue(DomainError):
    pass


class EigenspaceNotOneDimensional(DomainError):
    pass


class InadmissibleWord(DomainError):
    pass


class DanglingSymbol(DomainError):
    pass


class EnumerationLimitExceeded(DomainError):
    pass


class UnclassifiableNeighborhood(DomainError):
    pass


class SupportViolation(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass
