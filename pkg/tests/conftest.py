"""Shared strategies and helpers for the test suite.

Weight vectors are always built from integer parts normalized by their sum,
so every generated vector is an exact simplex point by construction.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, settings, strategies as st

from cantor_measures import WeightVector, weight_vector

settings.register_profile(
    "package",
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("package")


def parts_to_weights(parts: list[int]) -> WeightVector:
    total = sum(parts)
    return weight_vector(Fraction(p, total) for p in parts)


@st.composite
def weight_vectors_st(
    draw,
    n_min: int = 2,
    n_max: int = 5,
    interior: bool = False,
    palindromic: bool = False,
    zero_last: bool = False,
    max_part: int = 9,
):
    n = draw(st.integers(n_min, n_max))
    if palindromic:
        half = draw(
            st.lists(
                st.integers(0, max_part),
                min_size=(n + 1) // 2,
                max_size=(n + 1) // 2,
            )
        )
        parts = half + half[: n // 2][::-1]
    else:
        parts = draw(st.lists(st.integers(0, max_part), min_size=n, max_size=n))
    if zero_last:
        parts[-1] = 0
        if palindromic:
            parts[0] = 0
    total = sum(parts)
    assume(total > 0)
    if interior:
        assume(max(parts) < total)
    return parts_to_weights(parts)


def random_weight_vector(
    rng: random.Random,
    n: int,
    interior: bool = True,
    palindromic: bool = False,
    zero_last: bool = False,
    max_part: int = 9,
) -> WeightVector:
    """Deterministic pseudo-random simplex point for seeded sweeps."""
    while True:
        if palindromic:
            half = [rng.randint(0, max_part) for _ in range((n + 1) // 2)]
            parts = half + half[: n // 2][::-1]
        else:
            parts = [rng.randint(0, max_part) for _ in range(n)]
        if zero_last:
            parts[-1] = 0
            if palindromic:
                parts[0] = 0
        total = sum(parts)
        if total == 0:
            continue
        if interior and max(parts) == total:
            continue
        return parts_to_weights(parts)


@pytest.fixture(scope="session")
def ternary() -> WeightVector:
    return parts_to_weights([1, 0, 1])


@pytest.fixture(scope="session")
def lebesgue3() -> WeightVector:
    return parts_to_weights([1, 1, 1])
