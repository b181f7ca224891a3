"""Monic orthogonal polynomials of a weighted Cantor measure.

The inner product of two polynomials against the measure expands into a
bilinear form over the exact moments, so Gram-Schmidt on the monomials can
be carried out entirely in rational arithmetic: orthogonality of the result
is exact, not approximate.  For symmetric (palindromic-weight) measures the
basis obeys the two-term recurrence

    m_{n+2}(x) = (x - 1/2) m_{n+1}(x) - (|m_{n+1}|^2 / |m_n|^2) m_n(x)

with ``m_0 = 1`` and ``m_1 = x - 1/2``, and alternates parity about
``x = 1/2``.  Polynomials are coefficient tuples in ascending degree order.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientMoments, NotPalindromic, ZeroNorm
from .measure import WeightVector
from .moments import MomentSequence, exact_moments
from .rational import as_fraction, format_float, format_rational, parse_rational

Polynomial = tuple[Fraction, ...]


def _as_poly(coeffs: Sequence) -> Polynomial:
    poly = tuple(as_fraction(c) for c in coeffs)
    return poly if poly else (Fraction(0),)


def _moment_values(moments: MomentSequence | Sequence) -> tuple[Fraction, ...]:
    if isinstance(moments, MomentSequence):
        return moments.values
    return tuple(as_fraction(v) for v in moments)


def inner_product(
    p: Sequence, q: Sequence, moments: MomentSequence | Sequence
) -> Fraction:
    """Exact inner product ``sum_{i,j} p_i q_j I_{i+j}`` against the moments."""
    pc, qc = _as_poly(p), _as_poly(q)
    values = _moment_values(moments)
    needed = len(pc) + len(qc) - 1
    if len(values) < needed:
        raise InsufficientMoments(
            f"need moments up to degree {needed - 1}, got {len(values) - 1}"
        )
    acc = Fraction(0)
    for i, pi in enumerate(pc):
        if pi == 0:
            continue
        for j, qj in enumerate(qc):
            if qj == 0:
                continue
            acc += pi * qj * values[i + j]
    return acc


def eval_poly(p: Sequence, x):
    """Horner evaluation; exact for rational ``x``, float for float ``x``."""
    coeffs = tuple(p)
    acc = coeffs[-1] if coeffs else 0
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class OrthoBasis:
    """Monic orthogonal polynomials ``p_0..p_d`` with exact squared norms."""

    polys: tuple[Polynomial, ...]
    norms_sq: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.polys) != len(self.norms_sq):
            raise ValueError("polys and norms_sq must have equal length")
        for n, poly in enumerate(self.polys):
            if len(poly) != n + 1 or poly[-1] != 1:
                raise ValueError(f"polys[{n}] is not monic of exact degree {n}")

    @property
    def degree(self) -> int:
        return len(self.polys) - 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "degree": self.degree,
                "polys": [[format_rational(c) for c in p] for p in self.polys],
                "norms_sq": [format_rational(v) for v in self.norms_sq],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "OrthoBasis":
        data = json.loads(text)
        return cls(
            polys=tuple(
                tuple(parse_rational(c) for c in poly) for poly in data["polys"]
            ),
            norms_sq=tuple(parse_rational(v) for v in data["norms_sq"]),
        )


def _resolve_moments(
    w: WeightVector, degree: int, moments: MomentSequence | None
) -> MomentSequence:
    if moments is None:
        return exact_moments(w, 2 * degree)
    if moments.kind != "raw":
        raise ValueError(f"raw moments expected, got kind={moments.kind!r}")
    if moments.weights != w:
        raise ValueError("moments were computed for a different weight vector")
    if len(moments) < 2 * degree + 1:
        raise InsufficientMoments(
            f"degree {degree} needs moments up to {2 * degree}, got {moments.m_max}"
        )
    return moments


def _mul_by_x_minus_half(p: Polynomial) -> Polynomial:
    half = Fraction(1, 2)
    shifted = (Fraction(0),) + p
    return tuple(
        shifted[i] - (p[i] * half if i < len(p) else Fraction(0))
        for i in range(len(p) + 1)
    )


def monic_basis_symmetric(
    w: WeightVector, degree: int, moments: MomentSequence | None = None
) -> OrthoBasis:
    """Monic orthogonal basis of a symmetric measure via the 2-term recurrence.

    Requires palindromic weights.  Raises :class:`ZeroNorm` as soon as some
    ``|m_n|^2`` vanishes for ``n <= degree``, which happens exactly when the
    measure is finitely supported (a Dirac mass cannot carry a degree-1
    orthogonal polynomial of positive norm).
    """
    if not w.is_palindromic:
        raise NotPalindromic(f"symmetric recurrence needs palindromic weights: {w}")
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    ms = _resolve_moments(w, degree, moments)
    polys: list[Polynomial] = [(Fraction(1),)]
    norms: list[Fraction] = [Fraction(1)]
    if degree >= 1:
        polys.append((Fraction(-1, 2), Fraction(1)))
        norms.append(inner_product(polys[1], polys[1], ms))
        if norms[1] == 0:
            raise ZeroNorm("zero norm at degree 1: measure is a point mass")
    for n in range(2, degree + 1):
        ratio = norms[n - 1] / norms[n - 2]
        lifted = _mul_by_x_minus_half(polys[n - 1])
        prev = polys[n - 2]
        poly = tuple(
            lifted[i] - (ratio * prev[i] if i < len(prev) else Fraction(0))
            for i in range(n + 1)
        )
        norm = inner_product(poly, poly, ms)
        if norm == 0:
            raise ZeroNorm(f"zero norm at degree {n}: support has fewer points")
        polys.append(poly)
        norms.append(norm)
    return OrthoBasis(polys=tuple(polys), norms_sq=tuple(norms))


def monic_basis_general(
    w: WeightVector, degree: int, moments: MomentSequence | None = None
) -> OrthoBasis:
    """Monic orthogonal basis for arbitrary weights via exact Gram-Schmidt.

    Subtracts from each monomial its projections onto the lower basis
    elements, all in rational arithmetic (no re-orthogonalization is needed
    since nothing is rounded).  Agrees exactly with the symmetric recurrence
    on palindromic weights.
    """
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    ms = _resolve_moments(w, degree, moments)
    polys: list[Polynomial] = []
    norms: list[Fraction] = []
    for n in range(degree + 1):
        monomial: Polynomial = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
        coeffs = list(monomial)
        for j in range(n):
            proj = inner_product(monomial, polys[j], ms) / norms[j]
            if proj == 0:
                continue
            for i, c in enumerate(polys[j]):
                coeffs[i] -= proj * c
        poly = tuple(coeffs)
        norm = inner_product(poly, poly, ms)
        if n > 0 and norm == 0:
            raise ZeroNorm(f"zero norm at degree {n}: support has fewer points")
        polys.append(poly)
        norms.append(norm)
    return OrthoBasis(polys=tuple(polys), norms_sq=tuple(norms))


def normalize(basis: OrthoBasis) -> list[list[float]]:
    """Float coefficients of the unit-norm polynomials ``p_n / |p_n|``."""
    out = []
    for poly, norm_sq in zip(basis.polys, basis.norms_sq):
        if norm_sq <= 0:
            raise ZeroNorm("cannot normalize a zero-norm polynomial")
        scale = 1.0 / math.sqrt(float(norm_sq))
        out.append([float(c) * scale for c in poly])
    return out


def grid_csv(basis: OrthoBasis, n_points: int = 201) -> str:
    """CSV of the normalized polynomials on a uniform grid of ``[0, 1]``.

    Header ``x,p0,...,pd``; one row per grid point.  This is the plot-data
    export for staircase-measure polynomial figures.
    """
    if n_points < 2:
        raise ValueError(f"need at least 2 grid points, got {n_points}")
    normalized = normalize(basis)
    header = "x," + ",".join(f"p{n}" for n in range(len(normalized)))
    lines = [header]
    for i in range(n_points):
        x = i / (n_points - 1)
        row = [format_float(x)]
        row += [format_float(eval_poly(p, x)) for p in normalized]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
