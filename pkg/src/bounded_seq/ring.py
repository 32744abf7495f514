"""Exact arithmetic in the ring Z[2^(1/n)].

Elements are stored in the power basis ``1, r, r**2, ..., r**(n-1)`` with
``r = 2**(1/n)``, so an element is a length-``n`` tuple of Python ints.
Multiplication reduces with ``r**n = 2``.

Comparisons with rationals go through the real embedding (``r`` the positive
real root) and are exact: equality is decided from the coefficients, and
strict inequalities by refining a dyadic interval enclosure of the element.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._intlinalg import bareiss_det, iroot

__all__ = [
    "DegreeMismatch",
    "RingParams",
    "RingElem",
    "Ordering",
    "INFINITE",
    "ring_add",
    "ring_neg",
    "ring_mul",
    "norm",
    "regular_rep",
    "compare_abs",
    "enclose",
    "abs_upper_bound",
    "two_adic_valuation",
    "parse_rational",
    "format_rational",
    "elem_to_json",
    "elem_from_json",
]

INFINITE = math.inf

_START_BITS = 64
_MAX_BITS = 1 << 24


class DegreeMismatch(ValueError):
    """Raised when operands live in rings of different degree."""


@dataclass(frozen=True)
class RingParams:
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 2:
            raise ValueError(f"degree must be an integer >= 2, got {self.degree!r}")

    def elem(self, *coeffs: int) -> RingElem:
        """Element from leading coefficients; missing ones are zero."""
        if len(coeffs) > self.degree:
            raise ValueError(f"too many coefficients for degree {self.degree}")
        return RingElem(self, tuple(coeffs) + (0,) * (self.degree - len(coeffs)))

    def zero(self) -> RingElem:
        return self.elem()

    def one(self) -> RingElem:
        return self.elem(1)

    def gen(self) -> RingElem:
        """The generator 2^(1/n)."""
        return self.elem(0, 1)

    def basis(self, i: int) -> RingElem:
        c = [0] * self.degree
        c[i] = 1
        return RingElem(self, tuple(c))


@dataclass(frozen=True)
class RingElem:
    params: RingParams
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.params.degree:
            raise ValueError(
                f"expected {self.params.degree} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return self.params.degree

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, int):
            other = self.params.elem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return ring_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return ring_neg(self)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.params.elem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return ring_add(self, ring_neg(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElem(self.params, tuple(other * c for c in self.coeffs))
        if not isinstance(other, RingElem):
            return NotImplemented
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RingElem:
        if k < 0:
            raise ValueError("negative powers are not ring elements in general")
        result, base = self.params.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self) -> str:
        n = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            radical = "√2" if n == 2 else (f"2^(1/{n})" if i == 1 else f"2^({i}/{n})")
            mag = "" if abs(c) == 1 else str(abs(c)) + ("" if n == 2 else "·")
            parts.append(("-" if c < 0 else "+") + mag + radical)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _check(x: RingElem, y: RingElem) -> None:
    if x.params != y.params:
        raise DegreeMismatch(f"degree {x.degree} vs degree {y.degree}")


def ring_add(x: RingElem, y: RingElem) -> RingElem:
    _check(x, y)
    return RingElem(x.params, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def ring_neg(x: RingElem) -> RingElem:
    return RingElem(x.params, tuple(-a for a in x.coeffs))


def ring_mul(x: RingElem, y: RingElem) -> RingElem:
    _check(x, y)
    n = x.degree
    out = [0] * n
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(y.coeffs):
            k = i + j
            if k >= n:
                out[k - n] += 2 * a * b
            else:
                out[k] += a * b
    return RingElem(x.params, tuple(out))


def regular_rep(x: RingElem) -> tuple[tuple[int, ...], ...]:
    """Matrix of multiplication by ``x`` in the power basis.

    Column ``j`` holds the coefficients of ``x * 2^(j/n)``; the result is a
    row-major tuple of rows.
    """
    n = x.degree
    cols = [ring_mul(x, x.params.basis(j)).coeffs for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def norm(x: RingElem) -> int:
    """Field norm, computed as the determinant of the regular representation."""
    return bareiss_det(regular_rep(x))


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


def _root_bounds(n: int, bits: int) -> tuple[int, int]:
    # lo / 2**bits < 2**(1/n) < hi / 2**bits, strict since the root is irrational
    lo = iroot(2 << (n * bits), n)
    return lo, lo + 1


def _enclose_scaled(x: RingElem, bits: int) -> tuple[int, int, int]:
    """Integers ``(lo, hi, shift)`` with ``lo/2**shift <= x <= hi/2**shift``."""
    n = x.degree
    rlo, rhi = _root_bounds(n, bits)
    shift = bits * (n - 1)
    lo = hi = 0
    for i, c in enumerate(x.coeffs):
        if c == 0:
            continue
        scale = bits * (n - 1 - i)
        p_lo = rlo ** i << scale
        p_hi = rhi ** i << scale
        if c > 0:
            lo += c * p_lo
            hi += c * p_hi
        else:
            lo += c * p_hi
            hi += c * p_lo
    return lo, hi, shift


def enclose(x: RingElem, bits: int = _START_BITS) -> tuple[Fraction, Fraction]:
    """Rational interval containing the real embedding of ``x``.

    Width shrinks roughly like ``2**-bits`` times the coefficient size.
    """
    lo, hi, shift = _enclose_scaled(x, bits)
    return Fraction(lo, 1 << shift), Fraction(hi, 1 << shift)


def compare_abs(x: RingElem, bound) -> Ordering:
    """Exact trichotomy of ``|x|`` (real embedding) against a rational bound."""
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError(f"bound must be nonnegative, got {bound}")
    if x.is_rational():
        a = abs(x.coeffs[0])
        if a < bound:
            return Ordering.LT
        return Ordering.EQ if a == bound else Ordering.GT
    # x is irrational here, so |x| != bound and refinement terminates
    p, q = bound.numerator, bound.denominator
    bits = _START_BITS
    while bits <= _MAX_BITS:
        lo, hi, shift = _enclose_scaled(x, bits)
        b = p << shift
        if hi * q < b and lo * q > -b:
            return Ordering.LT
        if lo * q > b or hi * q < -b:
            return Ordering.GT
        bits *= 2
    raise RuntimeError(f"interval refinement did not separate {x} from {bound}")


def abs_upper_bound(x: RingElem, bits: int = 32) -> Fraction:
    """A rational ``U >= |x|``, rounded outward from an interval enclosure."""
    if x.is_rational():
        return Fraction(abs(x.coeffs[0]))
    lo, hi = enclose(x, bits)
    return max(abs(lo), abs(hi))


def two_adic_valuation(x: RingElem):
    """Largest ``k`` with ``x`` divisible by ``2**k``; ``INFINITE`` for zero.

    Divisibility is by the rational integer 2, i.e. coefficientwise.
    """
    vals = [(c & -c).bit_length() - 1 for c in x.coeffs if c != 0]
    return min(vals) if vals else INFINITE


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an integer) exactly; floats are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational p/q: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_int(value, field: str) -> int:
    if isinstance(value, bool):
        raise ValueError(f"{field}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise ValueError(f"{field}: expected an integer or decimal string, got {value!r}")


def parse_int_vector(values, field: str) -> list[int]:
    if not isinstance(values, list):
        raise ValueError(f"{field}: expected a list, got {type(values).__name__}")
    return [_parse_int(v, f"{field}[{i}]") for i, v in enumerate(values)]


def parse_degree(obj, field: str = "degree") -> RingParams:
    if not isinstance(obj, dict) or "degree" not in obj:
        raise ValueError(f"{field}: missing 'degree'")
    return RingParams(_parse_int(obj["degree"], field))


def coeffs_from_json(params: RingParams, values, field: str) -> RingElem:
    coeffs = parse_int_vector(values, field)
    if len(coeffs) != params.degree:
        raise ValueError(
            f"{field}: expected {params.degree} coefficients, got {len(coeffs)}"
        )
    return RingElem(params, tuple(coeffs))


def elem_to_json(x: RingElem) -> dict:
    return {"degree": x.degree, "coeffs": [str(c) for c in x.coeffs]}


def elem_from_json(obj) -> RingElem:
    params = parse_degree(obj)
    if "coeffs" not in obj:
        raise ValueError("coeffs: missing")
    return coeffs_from_json(params, obj["coeffs"], "coeffs")


def from_ints(params: RingParams, coeffs: Iterable[int]) -> RingElem:
    return RingElem(params, tuple(coeffs))


def matvec(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in matrix)
