"""Exact rational scalars and dense univariate polynomial arithmetic.

Every analytic computation in this package runs over arbitrary-precision
rationals; nothing in this module ever touches floating point.  Scalars are
``fractions.Fraction`` (aliased ``Rational``), which already guarantees the
two invariants we need: values are kept in lowest terms and denominators are
positive.

A polynomial is a dense, immutable coefficient tuple in ascending powers:

    Poly((a0, a1, ..., an))  <=>  a0 + a1*x + ... + an*x^n

Trailing zero coefficients are trimmed on construction, so the zero
polynomial is the empty tuple and ``degree(p * q) == degree(p) + degree(q)``
holds exactly for nonzero operands.
"""

from __future__ import annotations

import decimal
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly",
    "rational_from_json",
    "rational_to_json",
    "decimal_str",
]


def rational_to_json(value: Scalar) -> dict:
    """Serialize a rational as a decimal-string numerator/denominator pair."""
    f = Fraction(value)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def decimal_str(value: Scalar, sig_digits: int = 17) -> str:
    """Decimal expansion of an exact rational, rounded to `sig_digits`.

    Exactness lives in the JSON serialization; this is for CSV/console output.
    """
    f = Fraction(value)
    with decimal.localcontext() as ctx:
        ctx.prec = sig_digits
        d = decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)
    return str(d)


class Poly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "Poly":
        """coeff * x^exponent"""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return cls((0,) * exponent + (coeff,))

    # -- basic queries ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, exponent: int) -> Fraction:
        if 0 <= exponent < len(self._coeffs):
            return self._coeffs[exponent]
        return Fraction(0)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self._coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly()
        return Poly(tuple(ci * c for ci in self._coeffs))

    def shift_power(self, a: Scalar, e: int) -> "Poly":
        """Return self(x) * (x - a)^e, fully expanded."""
        if e < 0:
            raise ValueError("power must be nonnegative")
        result = self
        factor = Poly((-Fraction(a), 1))
        # square-and-multiply on the (x - a) factor
        while e:
            if e & 1:
                result = result * factor
            e >>= 1
            if e:
                factor = factor * factor
        return result

    # -- calculus ---------------------------------------------------------------

    def diff(self) -> "Poly":
        """Exact formal derivative."""
        cs = self._coeffs
        return Poly(tuple(cs[i] * i for i in range(1, len(cs))))

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term."""
        cs = self._coeffs
        return Poly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(cs)))

    def integrate(self, lo: Scalar, hi: Scalar) -> Fraction:
        """Exact definite integral over [lo, hi]; requires lo <= hi."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("integration bounds must satisfy lo <= hi")
        anti = self.antiderivative()
        return anti(hi) - anti(lo)

    def __call__(self, x: Scalar) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self._coeffs):
            total = total * x + c
        return total

    def deflate(self, root: Scalar) -> "Poly":
        """Synthetic division by (x - root); requires root to be an exact root."""
        root = Fraction(root)
        cs = self._coeffs
        if not cs:
            raise ValueError("cannot deflate the zero polynomial")
        out = [Fraction(0)] * (len(cs) - 1)
        carry = Fraction(0)
        for i in range(len(cs) - 1, 0, -1):
            carry = cs[i] + carry * root
            out[i - 1] = carry
        if cs[0] + carry * root != 0:
            raise ValueError(f"{root} is not a root")
        return Poly(out)

    def root_multiplicity(self, root: Scalar) -> int:
        """Multiplicity of `root` as a zero of this polynomial (0 if not a root)."""
        root = Fraction(root)
        p = self
        order = 0
        while not p.is_zero() and p(root) == 0:
            p = p.deflate(root)
            order += 1
        return order

    # -- protocol support ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Poly(0)"
        parts = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self._coeffs) if c]
        return "Poly(" + " + ".join(parts) + ")"

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [rational_to_json(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "Poly":
        return cls(rational_from_json(obj) for obj in data)
