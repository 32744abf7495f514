"""Arbitrarily small nonzero elements of Z[2^(1/n)].

The element ``u = 2^(1/n) - 1`` satisfies ``0 < u < 1``, so its powers are
nonzero and shrink geometrically while their coefficients grow.  For
``n = 2`` the powers ``(sqrt2 - 1)**k = a_k + b_k sqrt2`` are units with
``a_k**2 - 2 b_k**2 = (-1)**k``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .ring import Ordering, RingElem, RingParams, compare_abs

__all__ = ["MAX_K", "base_element", "small_element", "small_elements", "find_small"]

MAX_K = 10**6


def base_element(params: RingParams) -> RingElem:
    return params.gen() - 1


def small_element(params: RingParams, k: int) -> RingElem:
    """``(2^(1/n) - 1)**k``; ``k = 0`` gives the unit 1 by convention."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return base_element(params) ** k


def small_elements(params: RingParams, start: int = 1) -> Iterator[tuple[int, RingElem]]:
    """Yield ``(k, u**k)`` for ``k = start, start + 1, ...`` by repeated multiplication."""
    u = base_element(params)
    k, value = start, small_element(params, start)
    while True:
        yield k, value
        k += 1
        value = value * u


def find_small(params: RingParams, epsilon, max_k: int = MAX_K) -> tuple[int, RingElem]:
    """Least ``k >= 1`` with ``|u**k| < epsilon``, together with ``u**k``."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    for k, value in small_elements(params):
        if k > max_k:
            break
        if compare_abs(value, epsilon) is Ordering.LT:
            return k, value
    raise RuntimeError(f"no power of 2^(1/{params.degree})-1 below {epsilon} up to k={max_k}")
