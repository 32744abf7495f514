"""Exact algebra for the group of bounded sequences over Z[2^(1/n)].

Submodules:

* ``ring``      arithmetic in Z[2^(1/n)] and exact comparisons with rationals
* ``approx``    small nonzero elements, powers of 2^(1/n) - 1
* ``homcalc``   group vs module homomorphisms and witness constructions
* ``seqgroup``  finitely supported sequences and isomorphism witnesses
* ``snf``       Smith normal form, cokernels and the rank-parity obstruction
* ``cli``       the ``bounded-seq`` command
"""

from .approx import find_small, small_element
from .homcalc import (
    Functional,
    GroupHom,
    RowFiniteMatrix,
    WitnessInstance,
    WitnessStage,
    apply_hom,
    apply_row_finite,
    epsilon_witness,
    eval_functional,
    is_module_hom,
    unboundedness_witness,
)
from .ring import (
    INFINITE,
    Ordering,
    RingElem,
    RingParams,
    compare_abs,
    norm,
    regular_rep,
    two_adic_valuation,
)
from .seqgroup import (
    FinSeq,
    IsoWitness,
    apply_witness,
    build_witness,
    compose,
    corner_witness,
    interleave,
    deinterleave,
    invert,
    shift_embed,
    shift_extract,
    theta_los,
)
from .snf import (
    CokernelStructure,
    IntMatrix,
    ModuleMatrix,
    SNFResult,
    cokernel,
    obstruction_check,
    realize_over_Z,
    smith_normal_form,
    theorem_demo,
)

__version__ = "0.1.0"
