"""
Arithmetic in Z[sqrt2] and small elements
=========================================

Elements are integer coefficient vectors in the basis 1, 2^(1/n), ...
Comparisons with rationals are exact.
"""

from fractions import Fraction

from bounded_seq.approx import find_small, small_element
from bounded_seq.ring import RingParams, compare_abs, norm, regular_rep, two_adic_valuation

R = RingParams(2)
x = R.elem(1, 1)  # 1 + sqrt2
y = R.elem(1, -1)  # 1 - sqrt2
print(f"({x}) * ({y}) = {x * y}")
print("norm(3 - 2 sqrt2) =", norm(R.elem(3, -2)))
print("multiplication by sqrt2:", regular_rep(R.gen()))

###############################################################################
# Powers of sqrt2 - 1 shrink to zero while their coefficients blow up.
# They are all units: a^2 - 2 b^2 = +-1.

for k in range(1, 9):
    u = small_element(R, k)
    a, b = u.coeffs
    print(f"k={k}: {str(u):>12}   a^2 - 2b^2 = {a * a - 2 * b * b:+d}")

k, u = find_small(R, Fraction(1, 1000))
print(f"first power below 1/1000: k={k}, {u}, compare_abs -> {compare_abs(u, Fraction(1, 1000)).name}")

###############################################################################
# The same works in Z[2^(1/3)].

C = RingParams(3)
k, u = find_small(C, Fraction(1, 4))
print(f"degree 3: k={k}, {u}")
print("2-adic valuation of 4 + 8 sqrt2:", two_adic_valuation(R.elem(4, 8)))
