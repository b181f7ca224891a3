"""Exception hierarchy for domain errors.

Every error raised for a violated mathematical precondition derives from
:class:`CantorMeasureError`, which itself derives from ``ValueError`` so that
generic callers may catch it without importing this module.
"""
from __future__ import annotations


class CantorMeasureError(ValueError):
    """Base class for all domain errors raised by this package."""


class NotASimplexPoint(CantorMeasureError):
    """Weight entries are negative or do not sum to one exactly."""


class DepthOverflow(CantorMeasureError):
    """A requested table of N**k entries exceeds the configured cap."""


class BadDigit(CantorMeasureError):
    """A base-N digit lies outside ``0..N-1``."""


class OutOfDomain(CantorMeasureError):
    """An evaluation point lies outside ``[0, 1]``."""


class MeshMismatch(CantorMeasureError):
    """Two CDF tables do not share the same sample grid."""


class NotOdd(CantorMeasureError):
    """An operation defined only for odd indices received an even one."""


class NotPalindromic(CantorMeasureError):
    """An operation requiring a palindromic weight vector received another."""


class BadTolerance(CantorMeasureError):
    """A tolerance is nonpositive or below what double precision supports."""


class ZeroNorm(CantorMeasureError):
    """An orthogonal polynomial has zero norm (finitely supported measure)."""


class InsufficientMoments(CantorMeasureError):
    """A moment sequence is too short for the requested computation."""


class Degenerate(CantorMeasureError):
    """The weight vector is a simplex vertex (Dirac measure)."""
