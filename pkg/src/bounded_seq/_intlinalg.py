"""Small exact integer helpers shared by ``ring`` and ``snf``."""

from __future__ import annotations

from typing import Sequence


def iroot(a: int, n: int) -> int:
    """Largest integer ``r`` with ``r**n <= a`` (``a >= 0``)."""
    if a < 0:
        raise ValueError("iroot of a negative number")
    if a < 2:
        return a
    # Newton from above; bit length gives a guaranteed overestimate.
    r = 1 << -(-a.bit_length() // n)
    while True:
        s = ((n - 1) * r + a // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    while r ** n > a:
        r -= 1
    while (r + 1) ** n <= a:
        r += 1
    return r


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    size = len(m)
    if any(len(r) != size for r in m):
        raise ValueError("determinant needs a square matrix")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]
