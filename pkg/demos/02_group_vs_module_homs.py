"""
Group homomorphisms that are not module homomorphisms
=====================================================

A Z-linear map theta of Z[sqrt2] that does not commute with multiplication
by sqrt2 can send tiny elements to huge ones.  Chaining such choices along a
row-finite matrix turns a bounded sequence into an unbounded one.
"""

from fractions import Fraction

from bounded_seq.homcalc import (
    GroupHom,
    demo_instance,
    find_epsilon_witness,
    is_module_hom,
    multiplication_hom,
    row_sums,
    unboundedness_witness,
)
from bounded_seq.ring import RingParams

R = RingParams(2)

# theta(a + b sqrt2) = a: projection onto the rational part
theta = GroupHom(R, [[1, 0], [0, 0]])
print("projection is a module hom:", is_module_hom(theta))
print("multiplication by 3 + sqrt2 is a module hom:", is_module_hom(multiplication_hom(R.elem(3, 1))))

for big_n in (10, 1000, 10**6):
    k, x = find_epsilon_witness(theta, Fraction(1, 5), big_n)
    print(f"|x| < 1/5 and |theta(x)| > {big_n}: k={k}, x={x}, theta(x)={theta(x)}")

###############################################################################
# Ten stages, row sums forced past 1, 2, ..., 10 with every |x_k| < 1.

w = demo_instance(R, 10)
xs = unboundedness_witness(w)
for stage, x, s, t in zip(w.stages, xs, row_sums(w, xs), w.targets):
    print(f"stage {stage.row}: x = {str(x):>10}   row sum = {str(s):>12}   target {t}")
