"""Independent reference computations used to derive expected values.

None of these call into the code paths they check: polynomial reduction is
done by sympy, signs in Z[sqrt2] by squaring, real values by mpmath, and
ranks by fraction-free elimination.
"""

from fractions import Fraction

import mpmath
import sympy

T = sympy.Symbol("t")


def poly_mul(x, y, n):
    """Coefficients of x*y reduced modulo t**n - 2, via sympy."""
    px = sum(c * T**i for i, c in enumerate(x))
    py = sum(c * T**i for i, c in enumerate(y))
    r = sympy.Poly(sympy.rem(sympy.expand(px * py), T**n - 2, T), T)
    coeffs = [0] * n
    for (deg,), c in r.terms():
        coeffs[deg] = int(c)
    return tuple(coeffs)


def sign_zsqrt2(a, b):
    """Exact sign of a + b*sqrt(2) for integers a, b."""
    if a >= 0 and b >= 0:
        return 0 if a == b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    d = a * a - 2 * b * b
    s = 1 if d > 0 else -1
    return s if a > 0 else -s


def abs_lt_zsqrt2(a, b, bound):
    """|a + b sqrt2| < bound, bound a Fraction."""
    p, q = bound.numerator, bound.denominator
    return sign_zsqrt2(q * a - p, q * b) < 0 and sign_zsqrt2(q * a + p, q * b) > 0


def abs_gt_zsqrt2(a, b, bound):
    p, q = bound.numerator, bound.denominator
    return sign_zsqrt2(q * a - p, q * b) > 0 or sign_zsqrt2(q * a + p, q * b) < 0


def real_value(coeffs, dps=60):
    with mpmath.workdps(dps):
        r = mpmath.root(2, len(coeffs))
        return sum(mpmath.mpf(c) * r**i for i, c in enumerate(coeffs))


def ff_rank(rows):
    """Rank by fraction-free (Bareiss-style) elimination with row pivoting."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                m[i][j] = (m[i][j] * p - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = p
        rank += 1
    return rank


def sympy_det(rows):
    return int(sympy.Matrix(rows).det()) if rows else 1


def pell_powers(count):
    """(a_k, b_k) with a_k + b_k sqrt2 = (sqrt2 - 1)**k by the explicit recurrence."""
    out, a, b = [], 1, 0
    for _ in range(count):
        # (a + b sqrt2)(-1 + sqrt2) = (2b - a) + (a - b) sqrt2
        a, b = 2 * b - a, a - b
        out.append((a, b))
    return out


def epsilon_search_zsqrt2(matrix, eps, big_n, limit=500):
    """Brute-force epsilon-witness search for degree 2 with exact sign tests."""
    (m00, m01), (m10, m11) = matrix
    for k, (a, b) in enumerate(pell_powers(limit), start=1):
        ia, ib = m00 * a + m01 * b, m10 * a + m11 * b
        if abs_lt_zsqrt2(a, b, Fraction(eps)) and abs_gt_zsqrt2(ia, ib, Fraction(big_n)):
            return k, (a, b)
    return None
