"""
Smith normal form and the rank-parity obstruction
=================================================

A matrix over Z[sqrt2], written out over Z, always has even rank.  So the
cokernel of an injective module map has even free rank, while an
isomorphism A = A + Z would leave a quotient of odd rank 2k + 1.
"""

import random

from bounded_seq.ring import RingParams
from bounded_seq.snf import (
    IntMatrix,
    cokernel,
    obstruction_check,
    random_injective_module_matrix,
    shift_module_matrix,
    smith_normal_form,
    theorem_demo,
)

m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
s = smith_normal_form(m)
print("diagonal:", s.diagonal, " cokernel:", cokernel(m))

R = RingParams(2)
coker, ok = obstruction_check(shift_module_matrix(R, 3))
print("truncated shift a -> (0, a0, a1, ...): cokernel", coker, " parity ok:", ok)

rng = random.Random(0)
ranks = [obstruction_check(random_injective_module_matrix(R, 4, 2, rng))[0].free_rank for _ in range(20)]
print("free ranks of 20 random injective 4x2 module maps:", ranks)

###############################################################################
# The full report, as printed by ``bounded-seq theorem-demo``.

report = theorem_demo(2, 3, trials=50)
for check in report["checks"]:
    print(f"[{check['status'].upper()}] {check['name']}")
print(report["conclusion"])
print(report["note"])
