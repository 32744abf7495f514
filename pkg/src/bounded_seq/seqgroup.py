"""Finitely supported sequences over Z[2^(1/n)] and explicit isomorphisms.

``FinSeq`` models the group ``A`` of bounded sequences by its subgroup of
finitely supported sequences.  Every map handled here (shift, interleave,
the partial-sum construction ``theta_los``) preserves finite support, so all
identities can be checked by exact equality.

Isomorphisms between formal direct sums are built from invertible moves.  A
``Shape`` is a binary tree over the atoms

* ``SEQ``     a copy of ``A``
* ``RING``    a copy of ``Z[2^(1/n)]``
* ``Free(r)`` a copy of ``Z**r``

and an element of a shape is the matching nested value: a ``FinSeq`` for
``SEQ``, a ``RingElem`` for ``RING``, a tuple of ``r`` ints for ``Free(r)``
and a pair ``(left, right)`` for a ``Sum``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

from .ring import (
    DegreeMismatch,
    RingElem,
    RingParams,
    coeffs_from_json,
    parse_degree,
)

__all__ = [
    "FinSeq",
    "shift_embed",
    "shift_extract",
    "interleave",
    "deinterleave",
    "theta_los",
    "unit_vector",
    "Shape",
    "Seq",
    "Ring",
    "Free",
    "Sum",
    "SEQ",
    "RING",
    "ShapeMismatch",
    "IsoWitness",
    "identity_witness",
    "compose",
    "invert",
    "apply_witness",
    "build_witness",
    "absorb_witness",
    "collect_witness",
    "pair_witness",
    "corner_witness",
    "b_power_shape",
    "check_element",
    "element_add",
    "element_neg",
    "element_zero",
    "random_element",
    "random_finseq",
    "finseq_to_json",
    "finseq_from_json",
]


@dataclass(frozen=True)
class FinSeq:
    """A finitely supported sequence; trailing zeros are trimmed on construction."""

    params: RingParams
    terms: tuple[RingElem, ...] = ()

    def __post_init__(self):
        terms = list(self.terms)
        for t in terms:
            if t.params != self.params:
                raise DegreeMismatch(f"term of degree {t.degree} in a degree {self.params.degree} sequence")
        while terms and terms[-1].is_zero():
            terms.pop()
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_coeffs(cls, params: RingParams, rows: Sequence[Sequence[int]]) -> FinSeq:
        return cls(params, tuple(params.elem(*r) for r in rows))

    @classmethod
    def from_ints(cls, params: RingParams, values: Sequence[int]) -> FinSeq:
        return cls(params, tuple(params.elem(v) for v in values))

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, k: int) -> RingElem:
        if k < 0:
            raise IndexError("sequence indices are nonnegative")
        return self.terms[k] if k < len(self.terms) else self.params.zero()

    def _same(self, other: FinSeq) -> None:
        if self.params != other.params:
            raise DegreeMismatch(f"degree {self.params.degree} vs {other.params.degree}")

    def __add__(self, other: FinSeq) -> FinSeq:
        if not isinstance(other, FinSeq):
            return NotImplemented
        self._same(other)
        size = max(len(self), len(other))
        return FinSeq(self.params, tuple(self[k] + other[k] for k in range(size)))

    def __neg__(self) -> FinSeq:
        return FinSeq(self.params, tuple(-t for t in self.terms))

    def __sub__(self, other: FinSeq) -> FinSeq:
        return self + (-other)

    def __str__(self) -> str:
        return "(" + ", ".join(str(t) for t in self.terms) + (", 0, ...)" if self.terms else "0, ...)")


def unit_vector(params: RingParams, k: int) -> FinSeq:
    """The sequence ``e_k``: 1 at index ``k``, zero elsewhere."""
    return FinSeq(params, (params.zero(),) * k + (params.one(),))


def shift_embed(b: RingElem, a: FinSeq) -> FinSeq:
    """``(a, b) -> (b, a0, a1, ...)``."""
    if b.params != a.params:
        raise DegreeMismatch(f"degree {b.degree} vs {a.params.degree}")
    return FinSeq(a.params, (b,) + a.terms)


def shift_extract(a: FinSeq) -> tuple[RingElem, FinSeq]:
    return a[0], FinSeq(a.params, a.terms[1:])


def interleave(a: FinSeq, b: FinSeq) -> FinSeq:
    """``(a, b) -> (a0, b0, a1, b1, ...)``."""
    a._same(b)
    size = max(len(a), len(b))
    out: list[RingElem] = []
    for k in range(size):
        out.append(a[k])
        out.append(b[k])
    return FinSeq(a.params, tuple(out))


def deinterleave(c: FinSeq) -> tuple[FinSeq, FinSeq]:
    return FinSeq(c.params, c.terms[0::2]), FinSeq(c.params, c.terms[1::2])


def theta_los(a: FinSeq, b: FinSeq) -> FinSeq:
    """Partial-sum weighting ``(b0 a0, (b0+b1) a1, (b0+b1+b2) a2, ...)``.

    ``b`` is finitely supported, so its partial sums are bounded and the
    result is again a finitely supported sequence (supported where ``a`` is).
    """
    a._same(b)
    s = a.params.zero()
    out = []
    for k in range(len(a)):
        s = s + b[k]
        out.append(s * a[k])
    return FinSeq(a.params, tuple(out))


# Shapes ------------------------------------------------------------------


class Shape:
    pass


@dataclass(frozen=True)
class Seq(Shape):
    def __str__(self):
        return "A"


@dataclass(frozen=True)
class Ring(Shape):
    def __str__(self):
        return "R"


@dataclass(frozen=True)
class Free(Shape):
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"free rank must be >= 1, got {self.rank}")

    def __str__(self):
        return "Z" if self.rank == 1 else f"Z^{self.rank}"


@dataclass(frozen=True)
class Sum(Shape):
    left: Shape
    right: Shape

    def __str__(self):
        return f"({self.left} + {self.right})"


SEQ = Seq()
RING = Ring()
B_SHAPE = Sum(SEQ, Free(1))


class ShapeMismatch(TypeError):
    """Raised when a witness or element does not fit the expected shape."""


def check_element(shape: Shape, e: Any, params: RingParams | None = None) -> None:
    """Raise ``ShapeMismatch`` unless ``e`` is an element of ``shape``."""
    if isinstance(shape, Seq):
        ok = isinstance(e, FinSeq) and (params is None or e.params == params)
    elif isinstance(shape, Ring):
        ok = isinstance(e, RingElem) and (params is None or e.params == params)
    elif isinstance(shape, Free):
        ok = isinstance(e, tuple) and len(e) == shape.rank and all(
            isinstance(v, int) for v in e
        )
    elif isinstance(shape, Sum):
        if not (isinstance(e, tuple) and len(e) == 2):
            raise ShapeMismatch(f"expected a pair for {shape}, got {e!r}")
        check_element(shape.left, e[0], params)
        check_element(shape.right, e[1], params)
        return
    else:
        raise ShapeMismatch(f"unknown shape {shape!r}")
    if not ok:
        raise ShapeMismatch(f"value {e!r} is not an element of {shape}")


def element_zero(shape: Shape, params: RingParams):
    if isinstance(shape, Seq):
        return FinSeq(params)
    if isinstance(shape, Ring):
        return params.zero()
    if isinstance(shape, Free):
        return (0,) * shape.rank
    return (element_zero(shape.left, params), element_zero(shape.right, params))


def element_add(shape: Shape, x, y):
    if isinstance(shape, (Seq, Ring)):
        return x + y
    if isinstance(shape, Free):
        return tuple(a + b for a, b in zip(x, y))
    return (element_add(shape.left, x[0], y[0]), element_add(shape.right, x[1], y[1]))


def element_neg(shape: Shape, x):
    if isinstance(shape, (Seq, Ring)):
        return -x
    if isinstance(shape, Free):
        return tuple(-a for a in x)
    return (element_neg(shape.left, x[0]), element_neg(shape.right, x[1]))


def random_finseq(params: RingParams, rng: random.Random, max_len: int = 16, bound: int = 10**6) -> FinSeq:
    size = rng.randint(0, max_len)
    return FinSeq.from_coeffs(
        params,
        [[rng.randint(-bound, bound) for _ in range(params.degree)] for _ in range(size)],
    )


def random_element(shape: Shape, params: RingParams, rng: random.Random, max_len: int = 16, bound: int = 10**6):
    if isinstance(shape, Seq):
        return random_finseq(params, rng, max_len, bound)
    if isinstance(shape, Ring):
        return params.elem(*(rng.randint(-bound, bound) for _ in range(params.degree)))
    if isinstance(shape, Free):
        return tuple(rng.randint(-bound, bound) for _ in range(shape.rank))
    return (
        random_element(shape.left, params, rng, max_len, bound),
        random_element(shape.right, params, rng, max_len, bound),
    )


# Moves -------------------------------------------------------------------


class Move:
    """A primitive invertible homomorphism between two shapes."""

    name = "move"
    rule = ""

    source: Shape
    target: Shape

    def apply(self, e):
        raise NotImplementedError

    def inverse(self) -> Move:
        raise NotImplementedError

    def describe(self) -> dict:
        return {
            "move": self.name,
            "source": str(self.source),
            "target": str(self.target),
            "rule": self.rule,
        }

    def __eq__(self, other):
        return type(self) is type(other) and vars(self) == vars(other)

    def __hash__(self):
        return hash((type(self).__name__, self.source, self.target))

    def __repr__(self):
        return f"{type(self).__name__}({self.source} -> {self.target})"


class Shift(Move):
    name = "SHIFT"
    rule = "A + Z[2^(1/n)] -> A, (a, b) |-> (b, a0, a1, ...)"

    def __init__(self):
        self.source, self.target = Sum(SEQ, RING), SEQ

    def apply(self, e):
        a, b = e
        return shift_embed(b, a)

    def inverse(self):
        return Unshift()


class Unshift(Move):
    name = "SHIFT^-1"
    rule = "A -> A + Z[2^(1/n)], (c0, c1, ...) |-> ((c1, c2, ...), c0)"

    def __init__(self):
        self.source, self.target = SEQ, Sum(SEQ, RING)

    def apply(self, e):
        b, a = shift_extract(e)
        return (a, b)

    def inverse(self):
        return Shift()


class Interleave(Move):
    name = "INTERLEAVE"
    rule = "A + A -> A, (a, b) |-> (a0, b0, a1, b1, ...)"

    def __init__(self):
        self.source, self.target = Sum(SEQ, SEQ), SEQ

    def apply(self, e):
        return interleave(*e)

    def inverse(self):
        return Deinterleave()


class Deinterleave(Move):
    name = "INTERLEAVE^-1"
    rule = "A -> A + A, c |-> ((c0, c2, ...), (c1, c3, ...))"

    def __init__(self):
        self.source, self.target = SEQ, Sum(SEQ, SEQ)

    def apply(self, e):
        return deinterleave(e)

    def inverse(self):
        return Interleave()


class Split(Move):
    name = "SPLIT"
    rule = "Z[2^(1/n)] -> Z^n, sum c_i 2^(i/n) |-> (c_0, ..., c_{n-1}) (power basis)"

    def __init__(self, params: RingParams):
        self.params = params
        self.source, self.target = RING, Free(params.degree)

    def apply(self, e):
        return e.coeffs

    def inverse(self):
        return Pack(self.params)


class Pack(Move):
    name = "SPLIT^-1"
    rule = "Z^n -> Z[2^(1/n)], (c_0, ..., c_{n-1}) |-> sum c_i 2^(i/n) (power basis)"

    def __init__(self, params: RingParams):
        self.params = params
        self.source, self.target = Free(params.degree), RING

    def apply(self, e):
        return RingElem(self.params, e)

    def inverse(self):
        return Split(self.params)


class Join(Move):
    name = "JOIN"
    rule = "Z^p + Z^q -> Z^(p+q), concatenation"

    def __init__(self, p: int, q: int):
        self.p, self.q = p, q
        self.source, self.target = Sum(Free(p), Free(q)), Free(p + q)

    def apply(self, e):
        return tuple(e[0]) + tuple(e[1])

    def inverse(self):
        return Unjoin(self.p, self.q)


class Unjoin(Move):
    name = "JOIN^-1"
    rule = "Z^(p+q) -> Z^p + Z^q, cut after p coordinates"

    def __init__(self, p: int, q: int):
        self.p, self.q = p, q
        self.source, self.target = Free(p + q), Sum(Free(p), Free(q))

    def apply(self, e):
        return (tuple(e[: self.p]), tuple(e[self.p :]))

    def inverse(self):
        return Join(self.p, self.q)


class Assoc(Move):
    name = "ASSOC"
    rule = "(X + Y) + Z -> X + (Y + Z)"

    def __init__(self, x: Shape, y: Shape, z: Shape):
        self.x, self.y, self.z = x, y, z
        self.source, self.target = Sum(Sum(x, y), z), Sum(x, Sum(y, z))

    def apply(self, e):
        (a, b), c = e
        return (a, (b, c))

    def inverse(self):
        return AssocInv(self.x, self.y, self.z)


class AssocInv(Move):
    name = "ASSOC^-1"
    rule = "X + (Y + Z) -> (X + Y) + Z"

    def __init__(self, x: Shape, y: Shape, z: Shape):
        self.x, self.y, self.z = x, y, z
        self.source, self.target = Sum(x, Sum(y, z)), Sum(Sum(x, y), z)

    def apply(self, e):
        a, (b, c) = e
        return ((a, b), c)

    def inverse(self):
        return Assoc(self.x, self.y, self.z)


class Swap(Move):
    name = "SWAP"
    rule = "X + Y -> Y + X"

    def __init__(self, x: Shape, y: Shape):
        self.x, self.y = x, y
        self.source, self.target = Sum(x, y), Sum(y, x)

    def apply(self, e):
        return (e[1], e[0])

    def inverse(self):
        return Swap(self.y, self.x)


class OnLeft(Move):
    """Apply a witness to the left summand, fixing the right one."""

    name = "LEFT"

    def __init__(self, inner: IsoWitness, right: Shape):
        self.inner, self.right = inner, right
        self.source = Sum(inner.source, right)
        self.target = Sum(inner.target, right)

    @property
    def rule(self):
        return f"apply [{'; '.join(m.name for m in self.inner.moves)}] on the left summand"

    def apply(self, e):
        return (apply_witness(self.inner, e[0]), e[1])

    def inverse(self):
        return OnLeft(invert(self.inner), self.right)

    def describe(self):
        d = super().describe()
        d["inner"] = [m.describe() for m in self.inner.moves]
        return d


class OnRight(Move):
    """Apply a witness to the right summand, fixing the left one."""

    name = "RIGHT"

    def __init__(self, left: Shape, inner: IsoWitness):
        self.left, self.inner = left, inner
        self.source = Sum(left, inner.source)
        self.target = Sum(left, inner.target)

    @property
    def rule(self):
        return f"apply [{'; '.join(m.name for m in self.inner.moves)}] on the right summand"

    def apply(self, e):
        return (e[0], apply_witness(self.inner, e[1]))

    def inverse(self):
        return OnRight(self.left, invert(self.inner))

    def describe(self):
        d = super().describe()
        d["inner"] = [m.describe() for m in self.inner.moves]
        return d


# Witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class IsoWitness:
    source: Shape
    target: Shape
    moves: tuple[Move, ...] = ()

    def __post_init__(self):
        current = self.source
        for i, m in enumerate(self.moves):
            if m.source != current:
                raise ShapeMismatch(f"move {i} ({m.name}) expects {m.source}, got {current}")
            current = m.target
        if current != self.target:
            raise ShapeMismatch(f"moves end at {current}, declared target {self.target}")

    @classmethod
    def of(cls, *moves: Move) -> IsoWitness:
        if not moves:
            raise ValueError("use identity_witness for an empty chain")
        return cls(moves[0].source, moves[-1].target, tuple(moves))

    def transcript(self) -> list[dict]:
        return [m.describe() for m in self.moves]


def identity_witness(shape: Shape) -> IsoWitness:
    return IsoWitness(shape, shape, ())


def compose(first: IsoWitness, second: IsoWitness) -> IsoWitness:
    """The witness that applies ``first`` and then ``second``."""
    if first.target != second.source:
        raise ShapeMismatch(f"cannot compose: {first.target} is not {second.source}")
    return IsoWitness(first.source, second.target, first.moves + second.moves)


def chain(*witnesses: IsoWitness) -> IsoWitness:
    out = witnesses[0]
    for w in witnesses[1:]:
        out = compose(out, w)
    return out


def invert(w: IsoWitness) -> IsoWitness:
    return IsoWitness(w.target, w.source, tuple(m.inverse() for m in reversed(w.moves)))


def apply_witness(w: IsoWitness, e):
    check_element(w.source, e)
    for m in w.moves:
        e = m.apply(e)
    return e


def _interchange(x: Shape, y: Shape, z: Shape, v: Shape) -> IsoWitness:
    """``(X + Y) + (Z + V) -> (X + Z) + (Y + V)``."""
    return IsoWitness.of(
        Assoc(x, y, Sum(z, v)),
        OnRight(x, IsoWitness.of(AssocInv(y, z, v))),
        OnRight(x, IsoWitness.of(OnLeft(IsoWitness.of(Swap(y, z)), v))),
        OnRight(x, IsoWitness.of(Assoc(z, y, v))),
        AssocInv(x, z, Sum(y, v)),
    )


def absorb_witness(params: RingParams) -> IsoWitness:
    """``A + Z^n -> A``: pack the free part into a ring element, then shift it in."""
    return IsoWitness.of(OnRight(SEQ, IsoWitness.of(Pack(params))), Shift())


def b_power_shape(j: int) -> Shape:
    """Right-nested direct sum of ``j`` copies of ``B = A + Z``."""
    if j < 1:
        raise ValueError("need at least one summand")
    shape: Shape = B_SHAPE
    for _ in range(j - 1):
        shape = Sum(B_SHAPE, shape)
    return shape


def collect_witness(j: int) -> IsoWitness:
    """``B^j -> A + Z^j``: interleave the sequence parts, concatenate the free parts."""
    if j == 1:
        return identity_witness(B_SHAPE)
    inner = collect_witness(j - 1)
    steps = []
    if inner.moves:
        steps.append(OnRight(B_SHAPE, inner))
    steps.extend(_interchange(SEQ, Free(1), SEQ, Free(j - 1)).moves)
    steps.append(OnLeft(IsoWitness.of(Interleave()), Sum(Free(1), Free(j - 1))))
    steps.append(OnRight(SEQ, IsoWitness.of(Join(1, j - 1))))
    return IsoWitness.of(*steps)


def _reduce_free(j: int, params: RingParams) -> IsoWitness:
    """``A + Z^j -> A + Z^(j-n)`` for ``j > n``, absorbing ``n`` free coordinates."""
    n = params.degree
    return IsoWitness.of(
        OnRight(SEQ, IsoWitness.of(Unjoin(n, j - n))),
        AssocInv(SEQ, Free(n), Free(j - n)),
        OnLeft(absorb_witness(params), Free(j - n)),
    )


def pair_witness(params: RingParams) -> IsoWitness:
    """``B^n -> A`` for degree ``n``; for ``n = 2`` this is ``B + B = A``."""
    return compose(collect_witness(params.degree), absorb_witness(params))


def corner_witness(n: int, params: RingParams) -> tuple[IsoWitness, dict]:
    """Witness ``B^(n*d + 1) -> B`` for degree ``d``, with a move-by-move report.

    With ``n = 1`` and ``d = 2`` this is ``B + B + B = B``; the report also
    carries the witness ``B^d -> A`` (``B + B = A`` when ``d = 2``).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    d = params.degree
    copies = n * d + 1
    parts = [collect_witness(copies)]
    for j in range(copies, 1, -d):
        parts.append(_reduce_free(j, params))
    w = chain(*parts)
    pair = pair_witness(params)
    report = {
        "degree": d,
        "n": n,
        "copies": copies,
        "source": str(w.source),
        "target": str(w.target),
        "basis_convention": "SPLIT uses the power basis 1, 2^(1/n), ..., 2^((n-1)/n)",
        "summary": [
            f"B^{copies} = A + Z^{copies} (interleave the A parts, concatenate the Z parts)",
            *[f"A + Z^{j} = A + Z^{j - d} (absorb Z^{d} = Z[2^(1/{d})] by a shift)" for j in range(copies, 1, -d)],
            f"B^{d} = A (collect, then absorb), so B^{d} is A and not B",
        ],
        "moves": w.transcript(),
        "pair_witness": {
            "source": str(pair.source),
            "target": str(pair.target),
            "moves": pair.transcript(),
        },
    }
    return w, report


def build_witness(kind: str, params: RingParams, n: int = 1) -> IsoWitness:
    """Named witnesses: shift, interleave, split, absorb, pair, corner."""
    if kind == "shift":
        return IsoWitness.of(Shift())
    if kind == "interleave":
        return IsoWitness.of(Interleave())
    if kind == "split":
        return IsoWitness.of(Split(params))
    if kind == "absorb":
        return absorb_witness(params)
    if kind == "pair":
        return pair_witness(params)
    if kind == "corner":
        return corner_witness(n, params)[0]
    raise ValueError(f"unknown witness kind {kind!r}")


WITNESS_KINDS = ("shift", "interleave", "split", "absorb", "pair", "corner")


# JSON ----------------------------------------------------------------------


def finseq_to_json(a: FinSeq) -> dict:
    return {"degree": a.params.degree, "terms": [[str(c) for c in t.coeffs] for t in a.terms]}


def finseq_from_json(obj) -> FinSeq:
    params = parse_degree(obj)
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise ValueError("terms: expected a list of coefficient lists")
    return FinSeq(params, tuple(coeffs_from_json(params, t, f"terms[{i}]") for i, t in enumerate(terms)))
