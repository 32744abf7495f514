"""Additive homomorphisms of Z[2^(1/n)] and row-finite matrices of them.

A group homomorphism ``Z[2^(1/n)] -> Z[2^(1/n)]`` is an ``n x n`` integer
matrix acting on power-basis coefficients (column ``j`` is the image of
``2^(j/n)``).  It is a module homomorphism exactly when it commutes with
multiplication by ``2^(1/n)``.

The witness finders construct, for a non-module homomorphism, elements of
small absolute value with huge image, and the recursive choice of such
elements along a row-finite matrix which produces a bounded input with
unbounded output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .approx import MAX_K, small_elements
from .ring import (
    DegreeMismatch,
    Ordering,
    RingElem,
    RingParams,
    abs_upper_bound,
    compare_abs,
    matvec,
    parse_degree,
    parse_int_vector,
    parse_rational,
    regular_rep,
)
from .seqgroup import FinSeq

__all__ = [
    "GroupHom",
    "Functional",
    "RowFiniteMatrix",
    "WitnessStage",
    "WitnessInstance",
    "is_module_hom",
    "apply_hom",
    "multiplication_hom",
    "epsilon_witness",
    "find_epsilon_witness",
    "eval_functional",
    "unboundedness_witness",
    "apply_row_finite",
    "compose_row_finite",
    "hom_to_json",
    "hom_from_json",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupHom:
    params: RingParams
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.params.degree
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError(f"hom matrix must be {n}x{n}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, params: RingParams) -> GroupHom:
        n = params.degree
        return cls(params, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, params: RingParams) -> GroupHom:
        n = params.degree
        return cls(params, ((0,) * n,) * n)

    @classmethod
    def from_images(cls, images: Sequence[RingElem]) -> GroupHom:
        """Hom sending the ``j``-th basis element to ``images[j]``."""
        params = images[0].params
        n = params.degree
        return cls(params, tuple(tuple(images[j].coeffs[i] for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def __call__(self, x: RingElem) -> RingElem:
        return apply_hom(self, x)

    def __add__(self, other: GroupHom) -> GroupHom:
        return GroupHom(
            self.params,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)),
        )

    def __matmul__(self, other: GroupHom) -> GroupHom:
        """Composition: ``(self @ other)(x) == self(other(x))``."""
        if self.params != other.params:
            raise DegreeMismatch(f"degree {self.params.degree} vs {other.params.degree}")
        cols = list(zip(*other.matrix))
        return GroupHom(
            self.params,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.matrix),
        )


def multiplication_hom(x: RingElem) -> GroupHom:
    return GroupHom(x.params, regular_rep(x))


def is_module_hom(h: GroupHom) -> bool:
    """True iff ``h`` commutes with multiplication by ``2^(1/n)``."""
    r = multiplication_hom(h.params.gen())
    return (h @ r).matrix == (r @ h).matrix


def apply_hom(h: GroupHom, x: RingElem) -> RingElem:
    if h.params != x.params:
        raise DegreeMismatch(f"hom of degree {h.params.degree} applied to degree {x.degree}")
    return RingElem(x.params, matvec(h.matrix, x.coeffs))


def find_epsilon_witness(theta: GroupHom, epsilon, big_n, max_k: int = MAX_K) -> tuple[int, RingElem]:
    """Least ``k`` such that ``x = (2^(1/n) - 1)**k`` has ``|x| < epsilon`` and
    ``|theta(x)| > big_n``; returns ``(k, x)``.

    For degree 2 the search always ends: ``x = a + b sqrt2`` tends to zero
    while ``|b| -> oo``, and ``theta(x) = x theta(1) + b (theta(sqrt2) -
    sqrt2 theta(1))`` with a nonzero second factor.  For higher degree the
    search is best effort and bounded by ``max_k``.
    """
    epsilon, big_n = Fraction(epsilon), Fraction(big_n)
    if epsilon <= 0 or big_n <= 0:
        raise ValueError("epsilon and N must be positive")
    if is_module_hom(theta):
        raise ValueError("theta is a module homomorphism; no witness exists")
    for k, x in small_elements(theta.params):
        if k > max_k:
            break
        if compare_abs(x, epsilon) is not Ordering.LT:
            continue
        if compare_abs(apply_hom(theta, x), big_n) is Ordering.GT:
            return k, x
    raise RuntimeError(
        f"no epsilon witness up to k={max_k} (degree {theta.params.degree}, "
        f"epsilon={epsilon}, N={big_n}, theta={theta.matrix})"
    )


def epsilon_witness(theta: GroupHom, epsilon, big_n, max_k: int = MAX_K) -> RingElem:
    """An ``x`` with ``|x| < epsilon`` and ``|theta(x)| > big_n``."""
    return find_epsilon_witness(theta, epsilon, big_n, max_k)[1]


@dataclass(frozen=True)
class Functional:
    """``a -> sum_n phi_n(a_n)`` over finitely many indices."""

    entries: tuple[tuple[int, GroupHom], ...] = ()

    def __post_init__(self):
        idx = [i for i, _ in self.entries]
        if any(i < 0 for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError("functional indices must be nonnegative and strictly increasing")


def eval_functional(f: Functional, a: FinSeq) -> RingElem:
    total = a.params.zero()
    for index, hom in f.entries:
        total = total + apply_hom(hom, a[index])
    return total


class RowFiniteMatrix:
    """Finitely many nonzero blocks ``(m, n) -> GroupHom``.

    Row-finiteness is automatic for a finite map; zero blocks are dropped.
    """

    def __init__(self, params: RingParams, entries: Mapping[tuple[int, int], GroupHom]):
        self.params = params
        self.entries: dict[tuple[int, int], GroupHom] = {}
        for (m, n), h in entries.items():
            if m < 0 or n < 0:
                raise ValueError(f"negative index ({m}, {n})")
            if h.params != params:
                raise DegreeMismatch(f"block ({m}, {n}) has degree {h.params.degree}")
            if not h.is_zero():
                self.entries[(m, n)] = h

    @classmethod
    def diagonal(cls, params: RingParams, size: int, hom: GroupHom | None = None) -> RowFiniteMatrix:
        hom = hom or GroupHom.identity(params)
        return cls(params, {(i, i): hom for i in range(size)})

    def __getitem__(self, key: tuple[int, int]) -> GroupHom:
        return self.entries.get(key, GroupHom.zero(self.params))

    def row(self, m: int) -> dict[int, GroupHom]:
        return {n: h for (r, n), h in self.entries.items() if r == m}


def apply_row_finite(b: RowFiniteMatrix, a: FinSeq) -> FinSeq:
    if b.params != a.params:
        raise DegreeMismatch(f"degree {b.params.degree} vs {a.params.degree}")
    rows: dict[int, RingElem] = {}
    for (m, n), h in b.entries.items():
        if n < len(a):
            rows[m] = rows.get(m, a.params.zero()) + apply_hom(h, a[n])
    size = max(rows, default=-1) + 1
    return FinSeq(a.params, tuple(rows.get(m, a.params.zero()) for m in range(size)))


def compose_row_finite(b: RowFiniteMatrix, c: RowFiniteMatrix) -> RowFiniteMatrix:
    """Block product ``b c`` (apply ``c`` first)."""
    out: dict[tuple[int, int], GroupHom] = {}
    for (m, j), h in b.entries.items():
        for (j2, n), g in c.entries.items():
            if j == j2:
                key = (m, n)
                out[key] = out[key] + (h @ g) if key in out else h @ g
    return RowFiniteMatrix(b.params, out)


@dataclass(frozen=True)
class WitnessStage:
    """One stage of the recursive construction.

    ``priors[l]`` is the block in row ``row`` and column ``n_l`` of an
    earlier stage ``l``; missing entries are zero.  Blocks to the right of
    the diagonal are zero by construction and not stored.
    """

    row: int
    col: int
    diagonal: GroupHom
    priors: Mapping[int, GroupHom] = field(default_factory=dict)


@dataclass(frozen=True)
class WitnessInstance:
    params: RingParams
    stages: tuple[WitnessStage, ...]
    targets: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.stages) != len(self.targets):
            raise ValueError("need one target per stage")
        rows = [s.row for s in self.stages]
        cols = [s.col for s in self.stages]
        if any(a >= b for a, b in zip(rows, rows[1:])) or any(a >= b for a, b in zip(cols, cols[1:])):
            raise ValueError("stage rows and columns must be strictly increasing")
        targets = tuple(Fraction(t) for t in self.targets)
        if any(a >= b for a, b in zip(targets, targets[1:])):
            raise ValueError("targets must be strictly increasing")
        object.__setattr__(self, "targets", targets)
        for k, s in enumerate(self.stages):
            if any(l < 0 or l >= k for l in s.priors):
                raise ValueError(f"stage {k}: prior indices must lie in [0, {k})")
            if is_module_hom(s.diagonal):
                raise ValueError(f"stage {k}: diagonal block is a module homomorphism")

    def as_matrix(self) -> RowFiniteMatrix:
        entries = {}
        for k, s in enumerate(self.stages):
            entries[(s.row, s.col)] = s.diagonal
            for l, h in s.priors.items():
                entries[(s.row, self.stages[l].col)] = h
        return RowFiniteMatrix(self.params, entries)


def unboundedness_witness(w: WitnessInstance, max_k: int = MAX_K) -> list[RingElem]:
    """Choose ``x_k`` with ``|x_k| < 1`` and ``|sum_{l<=k} B[m_k, n_l](x_l)| > targets[k]``.

    Each stage clears its target plus a rational upper bound on the
    contribution of the earlier choices.
    """
    xs: list[RingElem] = []
    for k, (stage, target) in enumerate(zip(w.stages, w.targets)):
        prior = w.params.zero()
        for l, h in stage.priors.items():
            prior = prior + apply_hom(h, xs[l])
        bound = abs_upper_bound(prior)
        x = epsilon_witness(stage.diagonal, 1, target + bound, max_k)
        total = apply_hom(stage.diagonal, x) + prior
        if compare_abs(x, 1) is not Ordering.LT or compare_abs(total, target) is not Ordering.GT:
            raise AssertionError(f"stage {k}: witness failed post-verification")
        log.debug("stage %d: x=%s, row sum=%s", k, x, total)
        xs.append(x)
    return xs


def row_sums(w: WitnessInstance, xs: Sequence[RingElem]) -> list[RingElem]:
    """``sum_{l<=k} B[m_k, n_l](x_l)`` for each stage ``k``."""
    out = []
    for stage, x in zip(w.stages, xs):
        total = apply_hom(stage.diagonal, x)
        for l, h in stage.priors.items():
            total = total + apply_hom(h, xs[l])
        out.append(total)
    return out


# JSON ----------------------------------------------------------------------


def _matrix_from_json(values, field: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(values, list):
        raise ValueError(f"{field}: expected a list of rows")
    return tuple(tuple(parse_int_vector(r, f"{field}[{i}]")) for i, r in enumerate(values))


def hom_to_json(h: GroupHom) -> dict:
    return {"degree": h.params.degree, "matrix": [[str(v) for v in row] for row in h.matrix]}


def hom_from_json(obj, field: str = "theta") -> GroupHom:
    params = parse_degree(obj, field)
    if "matrix" not in obj:
        raise ValueError(f"{field}.matrix: missing")
    try:
        return GroupHom(params, _matrix_from_json(obj["matrix"], f"{field}.matrix"))
    except ValueError as exc:
        raise ValueError(f"{field}.matrix: {exc}") from exc


def _hom_in(params: RingParams, values, field: str) -> GroupHom:
    # stage blocks may be bare matrices or full hom objects
    if isinstance(values, dict):
        h = hom_from_json(values, field)
        if h.params != params:
            raise ValueError(f"{field}: degree {h.params.degree} does not match {params.degree}")
        return h
    try:
        return GroupHom(params, _matrix_from_json(values, field))
    except ValueError as exc:
        raise ValueError(f"{field}: {exc}") from exc


def instance_from_json(obj) -> WitnessInstance:
    """``{"degree", "stages": [{"row", "col", "diagonal", "priors": {l: matrix}}], "targets"}``."""
    params = parse_degree(obj)
    stages_in = obj.get("stages")
    if not isinstance(stages_in, list):
        raise ValueError("stages: expected a list")
    stages = []
    for k, s in enumerate(stages_in):
        if not isinstance(s, dict):
            raise ValueError(f"stages[{k}]: expected an object")
        for key in ("row", "col", "diagonal"):
            if key not in s:
                raise ValueError(f"stages[{k}].{key}: missing")
        priors = {
            int(l): _hom_in(params, h, f"stages[{k}].priors[{l}]")
            for l, h in (s.get("priors") or {}).items()
        }
        stages.append(
            WitnessStage(
                int(s["row"]),
                int(s["col"]),
                _hom_in(params, s["diagonal"], f"stages[{k}].diagonal"),
                priors,
            )
        )
    targets_in = obj.get("targets")
    if not isinstance(targets_in, list):
        raise ValueError("targets: expected a list of p/q strings")
    targets = tuple(parse_rational(t) for t in targets_in)
    return WitnessInstance(params, tuple(stages), targets)


def instance_to_json(w: WitnessInstance) -> dict:
    return {
        "degree": w.params.degree,
        "stages": [
            {
                "row": s.row,
                "col": s.col,
                "diagonal": [[str(v) for v in r] for r in s.diagonal.matrix],
                "priors": {str(l): [[str(v) for v in r] for r in h.matrix] for l, h in sorted(s.priors.items())},
            }
            for s in w.stages
        ],
        "targets": [f"{t.numerator}/{t.denominator}" for t in w.targets],
    }


def demo_instance(params: RingParams, stages: int) -> WitnessInstance:
    """A standard instance: diagonal ``theta(1) = 1, theta(r^j) = 0 (j>0)``,
    identity blocks for every earlier column, targets ``1, 2, ..., stages``.
    """
    n = params.degree
    diag = GroupHom(params, tuple(tuple(int(i == 0 and j == 0) for j in range(n)) for i in range(n)))
    ident = GroupHom.identity(params)
    return WitnessInstance(
        params,
        tuple(WitnessStage(k, k, diag, {l: ident for l in range(k)}) for k in range(stages)),
        tuple(Fraction(k + 1) for k in range(stages)),
    )
