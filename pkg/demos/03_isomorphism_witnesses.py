"""
Explicit isomorphisms: A + Z^2 = A and B + B + B = B
====================================================

Witnesses are chains of invertible moves (shift, interleave, split, and
bookkeeping moves).  They act on finitely supported sequences exactly.
"""

import random

from bounded_seq.ring import RingParams
from bounded_seq.seqgroup import (
    FinSeq,
    apply_witness,
    build_witness,
    corner_witness,
    invert,
    random_element,
)

R = RingParams(2)


def show(e) -> str:
    # nested tuples of FinSeq and integer vectors
    if isinstance(e, FinSeq):
        return str(e)
    if isinstance(e, tuple) and len(e) == 2 and not all(isinstance(v, int) for v in e):
        return f"[{show(e[0])} | {show(e[1])}]"
    return str(tuple(e))


absorb = build_witness("absorb", R)
a = FinSeq.from_ints(R, [1, 2])
print(f"{absorb.source} -> {absorb.target}:", show(apply_witness(absorb, (a, (3, -4)))))

###############################################################################
# B = A + Z.  Three copies of B collapse to one.

w, report = corner_witness(1, R)
print(f"\n{report['source']} -> {report['target']} in {len(w.moves)} moves")
for line in report["summary"]:
    print("  ", line)
for step in report["moves"]:
    print(f"   {step['move']:<14} {step['source']} -> {step['target']}")

rng = random.Random(0)
e = random_element(w.source, R, rng, max_len=3, bound=9)
image = apply_witness(w, e)
print("\nelement:", show(e))
print("image:  ", show(image))
print("inverse recovers it:", apply_witness(invert(w), image) == e)
