import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ff_rank, sympy_det
from bounded_seq.ring import RingParams, regular_rep
from bounded_seq.snf import (
    IntMatrix,
    ModuleMatrix,
    cokernel,
    group_shift_matrix,
    intmatrix_from_json,
    module_matrix_from_json,
    module_matrix_to_json,
    obstruction_check,
    random_injective_module_matrix,
    random_module_matrix,
    realize_over_Z,
    shift_module_matrix,
    smith_normal_form,
    theorem_demo,
)

P2 = RingParams(2)


def check_snf(m):
    s = smith_normal_form(m)
    assert s.U @ m @ s.V == s.D
    assert sympy_det(s.U.entries) in (1, -1)
    assert sympy_det(s.V.entries) in (1, -1)
    diag = s.diagonal
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j:
                assert s.D[i, j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    assert s.rank == ff_rank(m.entries)
    return s


def test_snf_examples():
    assert check_snf(IntMatrix.from_rows([[0, 2], [1, 0]])).diagonal == [1, 2]
    assert check_snf(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal == [2, 4]
    s = check_snf(IntMatrix.zeros(3, 3))
    assert s.diagonal == [0, 0, 0]
    assert cokernel(IntMatrix.zeros(3, 3)).free_rank == 3


def test_snf_deterministic():
    m = IntMatrix.from_rows([[6, 10, 15], [4, 8, 12]])
    assert smith_normal_form(m) == smith_normal_form(m)
    # gcd of entries is 1; gcd of 2x2 minors (8, 12, 0) is 4
    assert check_snf(m).diagonal == [1, 4]


@settings(max_examples=200)
@given(
    st.integers(1, 8).flatmap(
        lambda r: st.integers(1, 8).flatmap(
            lambda c: st.lists(st.lists(st.integers(-100, 100), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_snf_contract_property(rows):
    check_snf(IntMatrix.from_rows(rows))


def test_snf_low_rank():
    rng = random.Random(4)
    for _ in range(50):
        a = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(6)]
        b = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(2)]
        m = IntMatrix.from_rows(a) @ IntMatrix.from_rows(b)
        assert check_snf(m).rank <= 2


def test_cokernel_examples():
    c = cokernel(IntMatrix.from_rows(regular_rep(P2.gen())))
    assert (c.torsion, c.free_rank) == ((2,), 0)
    c = cokernel(IntMatrix.identity(4))
    assert (c.torsion, c.free_rank) == ((), 0)
    c = cokernel(IntMatrix.from_rows([[1, 0], [0, 1], [0, 0]]))
    assert (c.torsion, c.free_rank) == ((), 1)
    assert str(cokernel(IntMatrix.from_rows([[2, 0], [0, 6], [0, 0]]))) == "Z/2 + Z/6 + Z"


def test_empty_matrices():
    assert cokernel(IntMatrix(3, 0, ((), (), ()))).free_rank == 3
    assert cokernel(IntMatrix(0, 2, ())).free_rank == 0


def test_realize_examples():
    assert realize_over_Z(ModuleMatrix.from_rows(P2, [[P2.gen()]])) == IntMatrix.from_rows([[0, 2], [1, 0]])
    assert realize_over_Z(ModuleMatrix.identity(P2, 3)) == IntMatrix.identity(6)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_realize_multiplicative(n):
    rng = random.Random(n)
    p = RingParams(n)
    for _ in range(30):
        r, k, c = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        a, b = random_module_matrix(p, r, k, rng), random_module_matrix(p, k, c, rng)
        assert realize_over_Z(a @ b) == realize_over_Z(a) @ realize_over_Z(b)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_rank_divisible_by_degree(n):
    rng = random.Random(10 + n)
    p = RingParams(n)
    for _ in range(200):
        m = random_module_matrix(p, rng.randint(1, 3), rng.randint(1, 3), rng, bound=2)
        assert ff_rank(realize_over_Z(m).entries) % n == 0


@pytest.mark.parametrize("n", [2, 3])
def test_low_rank_module_matrix_still_divisible(n):
    # rank-one products over the ring: realized rank is exactly n
    rng = random.Random(n)
    p = RingParams(n)
    for _ in range(30):
        col = random_module_matrix(p, 3, 1, rng)
        row = random_module_matrix(p, 1, 3, rng)
        m = col @ row
        c, ok = obstruction_check(m)
        assert ok and c.rank in (0, n)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_shift_embedding(n, k):
    c, ok = obstruction_check(shift_module_matrix(RingParams(n), k))
    assert ok and c.free_rank == n and not c.torsion


def test_invertible_module_matrix():
    # [[1, sqrt2], [0, 1]] is invertible over the ring
    m = ModuleMatrix.from_rows(P2, [[P2.one(), P2.gen()], [P2.zero(), P2.one()]])
    c, ok = obstruction_check(m)
    assert ok and c.free_rank == 0 and not c.torsion


@pytest.mark.parametrize("n, k, extra", [(2, 1, 1), (2, 3, 1), (3, 1, 1), (3, 2, 2), (4, 2, 3)])
def test_group_shift_matrix_rank(n, k, extra):
    g = group_shift_matrix(RingParams(n), k, extra)
    c = cokernel(g)
    assert c.free_rank == n * k + extra and not c.torsion
    assert c.free_rank % n != 0


def test_theorem_demo_reports():
    r = theorem_demo(2, 3, trials=20)
    assert r["required_free_rank"] == 7
    assert all(c["status"] == "pass" for c in r["checks"])
    assert "NOT machine-verified" in r["note"]
    r = theorem_demo(3, 1, trials=20)
    assert r["required_free_rank"] == 4 and 4 % 3 != 0
    r = theorem_demo(2, 0, trials=5)
    assert r["checks"][0]["data"]["degenerate"] and r["required_free_rank"] == 1


def test_random_injective():
    rng = random.Random(0)
    m = random_injective_module_matrix(RingParams(3), 4, 2, rng)
    assert ff_rank(realize_over_Z(m).entries) == 6


def test_json():
    m = ModuleMatrix.from_rows(P2, [[P2.gen(), P2.one()]])
    assert module_matrix_from_json(module_matrix_to_json(m)) == m
    assert intmatrix_from_json({"matrix": [["1", 2]]}) == IntMatrix.from_rows([[1, 2]])
    with pytest.raises(ValueError, match=r"matrix\[1\]"):
        intmatrix_from_json({"matrix": [["1", "2"], ["a", "b"]]})
    with pytest.raises(ValueError, match=r"entries\[0\]\[0\]"):
        module_matrix_from_json({"degree": 2, "entries": [[["1"]]]})
