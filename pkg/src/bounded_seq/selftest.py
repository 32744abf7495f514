"""Randomized invariant suites, run by ``bounded-seq selftest``.

Each suite returns a check dict ``{"name", "status", "data"}``.  They use a
seeded ``random.Random`` so that repeated runs give identical reports.
"""

from __future__ import annotations

import random

from .approx import small_element
from .homcalc import GroupHom, find_epsilon_witness, is_module_hom, multiplication_hom
from .ring import Ordering, RingParams, compare_abs, norm, regular_rep
from .seqgroup import (
    apply_witness,
    build_witness,
    element_add,
    invert,
    random_element,
    random_finseq,
    theta_los,
    unit_vector,
)
from .snf import (
    IntMatrix,
    obstruction_check,
    random_injective_module_matrix,
    smith_normal_form,
)


def _check(name, failures, **data):
    return {"name": name, "status": "fail" if failures else "pass", "data": {"failures": failures, **data}}


def _rand_elem(params, rng, bound):
    return params.elem(*(rng.randint(-bound, bound) for _ in range(params.degree)))


def _matmul(a, b):
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in zip(*b)) for r in a)


def ring_suite(rng: random.Random, trials: int) -> dict:
    failures = 0
    for n in (2, 3, 4, 5):
        p = RingParams(n)
        for _ in range(trials):
            x, y = _rand_elem(p, rng, 1000), _rand_elem(p, rng, 1000)
            if norm(x * y) != norm(x) * norm(y):
                failures += 1
            if regular_rep(x * y) != _matmul(regular_rep(x), regular_rep(y)):
                failures += 1
    return _check("ring: norm multiplicative, regular_rep a ring map", failures, trials=trials)


def approx_suite(rng: random.Random, trials: int) -> dict:
    p = RingParams(2)
    failures = 0
    prev_b = 0
    for k in range(1, 60):
        a, b = small_element(p, k).coeffs
        if a * a - 2 * b * b not in (1, -1) or abs(b) <= prev_b:
            failures += 1
        prev_b = abs(b)
    for n in (2, 3, 4, 5):
        q = RingParams(n)
        for k in range(1, 30):
            if compare_abs(small_element(q, k), 1) is not Ordering.LT:
                failures += 1
    return _check("approx: Pell units, shrinking powers", failures)


def homcalc_suite(rng: random.Random, trials: int) -> dict:
    p = RingParams(2)
    failures = 0
    max_k = 0
    for _ in range(trials):
        x = _rand_elem(p, rng, 50)
        if not is_module_hom(multiplication_hom(x)):
            failures += 1
        h = GroupHom(p, tuple(tuple(rng.randint(-50, 50) for _ in range(2)) for _ in range(2)))
        if is_module_hom(h):
            if h != multiplication_hom(p.elem(*(row[0] for row in h.matrix))):
                failures += 1
            continue
        for big_n in (10, 10**3, 10**6):
            k, w = find_epsilon_witness(h, 1, big_n, max_k=200)
            max_k = max(max_k, k)
            if compare_abs(w, 1) is not Ordering.LT or compare_abs(h(w), big_n) is not Ordering.GT:
                failures += 1
    return _check("homcalc: module homs, epsilon witnesses", failures, max_k=max_k)


def seqgroup_suite(rng: random.Random, trials: int) -> dict:
    failures = 0
    for n in (2, 3):
        p = RingParams(n)
        kinds = [("shift", 1), ("interleave", 1), ("split", 1), ("absorb", 1), ("pair", 1)]
        kinds += [("corner", m) for m in (1, 2, 3)]
        for kind, m in kinds:
            w = build_witness(kind, p, m)
            inv = invert(w)
            for _ in range(max(1, trials // 10)):
                e1 = random_element(w.source, p, rng, 6, 1000)
                e2 = random_element(w.source, p, rng, 6, 1000)
                if apply_witness(inv, apply_witness(w, e1)) != e1:
                    failures += 1
                lhs = apply_witness(w, element_add(w.source, e1, e2))
                rhs = element_add(w.target, apply_witness(w, e1), apply_witness(w, e2))
                if lhs != rhs:
                    failures += 1
        for _ in range(max(1, trials // 10)):
            a = random_finseq(p, rng, 12, 1000)
            for k in range(9):
                t = theta_los(a, unit_vector(p, k))
                if any(t[i] != a[i] for i in range(k, len(a) + 1)):
                    failures += 1
    return _check("seqgroup: witness round trips, additivity, theta support", failures)


def snf_suite(rng: random.Random, trials: int) -> dict:
    failures = 0
    for _ in range(trials):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = IntMatrix.from_rows([[rng.randint(-100, 100) for _ in range(c)] for _ in range(r)])
        s = smith_normal_form(m)
        diag = s.diagonal
        ok = (
            s.U @ m @ s.V == s.D
            and s.U.det() in (1, -1)
            and s.V.det() in (1, -1)
            and all(d >= 0 for d in diag)
            and all(s.D[i, j] == 0 for i in range(r) for j in range(c) if i != j)
            and all((b == 0) if a == 0 else b % a == 0 for a, b in zip(diag, diag[1:]))
        )
        failures += not ok
    return _check("snf: U M V = D, unimodular, divisibility chain", failures, trials=trials)


def obstruction_suite(rng: random.Random, trials: int) -> dict:
    failures = 0
    for n in (2, 3, 4):
        p = RingParams(n)
        for _ in range(trials):
            cols = rng.randint(1, 3)
            rows = cols + rng.randint(1, 2)
            _, ok = obstruction_check(random_injective_module_matrix(p, rows, cols, rng))
            failures += not ok
    return _check("snf: module cokernel free rank divisible by degree", failures, trials=trials)


SUITES = {
    "ring": ring_suite,
    "approx": approx_suite,
    "homcalc": homcalc_suite,
    "seqgroup": seqgroup_suite,
    "snf": snf_suite,
    "obstruction": obstruction_suite,
}


def run_all(seed: int = 0, trials: int = 100) -> list[dict]:
    checks = []
    for name, suite in SUITES.items():
        rng = random.Random(f"{seed}:{name}")
        checks.append(suite(rng, trials))
    return checks
