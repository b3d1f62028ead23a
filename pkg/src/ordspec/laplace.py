"""Largest-eigenvalue pipeline in the exponential-polynomial ring (m = n case).

The distribution of the largest eigenvalue is obtained in five exact steps:

1. build the m x m matrix of moment integrals
       psi_entry(j, l)(s) = integral_0^1 exp(-s*u) * u^(j+l) du,
   each a finite combination of terms c * s^(-p) * exp(-a*s);
2. expand its determinant by the permutation sum (the ring is closed under
   products, and canonical merging by (p, a) keeps term counts small);
3. invert the Laplace transform termwise,
       s^(-p) * exp(-a*s)  ->  (t - a)^(p-1)/(p-1)! * step(t - a);
4. substitute t = 1/x and multiply by the CDF prefactor times x^(m^2 - 1),
   which clears every negative power and yields one polynomial per shift;
5. differentiate the resulting piecewise-polynomial CDF.

The prefactor is fixed from first principles (see ``cdf_prefactor``) so that
the CDF equals 1 at x = 1; the module asserts this exactly, together with the
continuity of the CDF at every breakpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable

from .exactnum import Poly
from .steppoly import StepPolyDensity, StepTerm

__all__ = [
    "ExpPolyTerm",
    "ExpPolyFunction",
    "psi_entry",
    "det_psi",
    "inverse_laplace",
    "cdf_prefactor",
    "cdf_pieces",
    "largest_pdf",
    "cdf_monotone_check",
]


@dataclass(frozen=True)
class ExpPolyTerm:
    """coefficient * s^(-inv_s_power) * exp(-exp_shift * s)"""

    coefficient: Fraction
    inv_s_power: int
    exp_shift: int

    def __post_init__(self) -> None:
        if self.inv_s_power < 1:
            raise ValueError("inverse power of s must be >= 1")
        if self.exp_shift < 0:
            raise ValueError("exponential shift must be >= 0")


class ExpPolyFunction:
    """Canonical element of the ring spanned by s^(-p) * exp(-a*s) terms.

    Terms are merged by (inv_s_power, exp_shift), zero coefficients dropped,
    and kept sorted, so equal functions compare equal structurally.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[ExpPolyTerm] = ()):
        merged: dict[tuple[int, int], Fraction] = {}
        for t in terms:
            key = (t.inv_s_power, t.exp_shift)
            merged[key] = merged.get(key, Fraction(0)) + t.coefficient
        canon = tuple(
            ExpPolyTerm(coefficient=c, inv_s_power=p, exp_shift=a)
            for (p, a), c in sorted(merged.items())
            if c != 0
        )
        object.__setattr__(self, "_terms", canon)

    @property
    def terms(self) -> tuple[ExpPolyTerm, ...]:
        return self._terms

    def __add__(self, other: "ExpPolyFunction") -> "ExpPolyFunction":
        return ExpPolyFunction(self._terms + other._terms)

    def __neg__(self) -> "ExpPolyFunction":
        return ExpPolyFunction(
            ExpPolyTerm(-t.coefficient, t.inv_s_power, t.exp_shift) for t in self._terms
        )

    def __sub__(self, other: "ExpPolyFunction") -> "ExpPolyFunction":
        return self + (-other)

    def __mul__(self, other: "ExpPolyFunction") -> "ExpPolyFunction":
        out = []
        for a in self._terms:
            for b in other._terms:
                out.append(
                    ExpPolyTerm(
                        coefficient=a.coefficient * b.coefficient,
                        inv_s_power=a.inv_s_power + b.inv_s_power,
                        exp_shift=a.exp_shift + b.exp_shift,
                    )
                )
        return ExpPolyFunction(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpPolyFunction):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"ExpPolyFunction({list(self._terms)!r})"

    def eval_float(self, s: float) -> float:
        """Floating-point evaluation, for numerical cross-checks only."""
        return sum(
            float(t.coefficient) * s ** (-t.inv_s_power) * math.exp(-t.exp_shift * s)
            for t in self._terms
        )


def psi_entry(j: int, l: int) -> ExpPolyFunction:
    """Exact closed form of integral_0^1 exp(-s*u) u^(j+l) du.

    Repeated integration by parts gives, with N = j + l,

        N!/s^(N+1)  -  exp(-s) * sum_{r=0}^{N} (N!/r!) s^(r-N-1).
    """
    if j < 0 or l < 0:
        raise ValueError("indices must be nonnegative")
    n = j + l
    fact_n = math.factorial(n)
    terms = [ExpPolyTerm(Fraction(fact_n), n + 1, 0)]
    for r in range(n + 1):
        terms.append(
            ExpPolyTerm(-Fraction(fact_n, math.factorial(r)), n + 1 - r, 1)
        )
    return ExpPolyFunction(terms)


def _permutation_sign(sigma: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = sigma[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_psi(m: int) -> ExpPolyFunction:
    """Determinant of the m x m psi matrix via the signed permutation sum."""
    if m < 1:
        raise ValueError("dimension must be >= 1")
    entries = {(j, l): psi_entry(j, l) for j in range(m) for l in range(m)}
    total = ExpPolyFunction()
    for sigma in permutations(range(m)):
        prod = None
        for i in range(m):
            f = entries[(i, sigma[i])]
            prod = f if prod is None else prod * f
        assert prod is not None
        if _permutation_sign(sigma) < 0:
            prod = -prod
        total = total + prod
    return total


def inverse_laplace(f: ExpPolyFunction) -> list[tuple[int, Poly]]:
    """Termwise inverse transform, grouped by shift.

    s^(-p) exp(-a*s) maps to (t - a)^(p-1)/(p-1)! on t > a; the result is a
    list of (shift a, polynomial in t) pairs sorted by shift.  Terms with
    p < 1 cannot occur in a well-formed determinant and are rejected by the
    ExpPolyTerm type itself.
    """
    by_shift: dict[int, Poly] = {}
    for t in f.terms:
        piece = Poly.constant(Fraction(t.coefficient, math.factorial(t.inv_s_power - 1)))
        piece = piece.shift_power(t.exp_shift, t.inv_s_power - 1)
        by_shift[t.exp_shift] = by_shift.get(t.exp_shift, Poly()) + piece
    return sorted(by_shift.items())


def cdf_prefactor(m: int) -> Fraction:
    """Constant multiplying x^(m^2-1) * P(1/x) in the largest-eigenvalue CDF.

    Equal to m! times the normalization constant of the joint eigenvalue
    density at equal subsystem dimensions:

        m! * (m^2 - 1)! / prod_{r=1}^{m} (r-1)! r!

    This choice makes the CDF exactly 1 at x = 1, which is asserted
    downstream.
    """
    denom = 1
    for r in range(1, m + 1):
        denom *= math.factorial(r - 1) * math.factorial(r)
    return Fraction(math.factorial(m) * math.factorial(m * m - 1), denom)


def cdf_pieces(m: int) -> dict[int, Poly]:
    """Piecewise-polynomial CDF of the largest eigenvalue: shift -> g_a(x).

    The CDF is Q(x) = sum_a g_a(x) * step(1 - a*x).  Exact structural checks:
    the a = 0 piece is the constant 1 (so Q(1) = 1), each g_a vanishes at its
    own breakpoint 1/a (continuity of the CDF), and no negative powers of x
    survive the t = 1/x substitution.
    """
    if m < 2:
        raise ValueError("dimension must be >= 2")
    pieces = inverse_laplace(det_psi(m))
    pref = cdf_prefactor(m)
    msq = m * m
    out: dict[int, Poly] = {}
    for shift, poly_t in pieces:
        if poly_t.degree >= msq:
            raise AssertionError("negative powers of x survive the substitution")
        # x^(m^2-1) * poly_t(1/x): reverse the coefficients into degree m^2-1
        coeffs = [Fraction(0)] * msq
        for i, c in enumerate(poly_t.coeffs):
            coeffs[msq - 1 - i] = c * pref
        out[shift] = Poly(coeffs)
    if out[0].degree > 0:
        raise AssertionError("shift-0 CDF piece is not constant")
    if out[0](0) != 1:
        raise AssertionError(f"CDF does not reach 1 at x=1 (got {out[0](0)})")
    for a, g in out.items():
        if a >= 1 and g(Fraction(1, a)) != 0:
            raise AssertionError(f"CDF discontinuous at breakpoint 1/{a}")
    return out


def largest_pdf(m: int) -> StepPolyDensity:
    """Exact PDF of the largest of m eigenvalues (equal subsystem dimensions).

    Differentiates the piecewise CDF; the constant shift-0 piece drops out and
    each remaining shift a becomes the step index of step(1 - a*x).
    """
    pieces = cdf_pieces(m)
    derivatives = {a: g.diff() for a, g in pieces.items() if a >= 1}
    total = Poly()
    for p in derivatives.values():
        total = total + p
    if not total.is_zero():
        raise AssertionError("PDF pieces do not cancel below the support")
    terms = tuple(
        StepTerm(step_index=a, poly=derivatives[a]) for a in sorted(derivatives, reverse=True)
    )
    return StepPolyDensity(m=m, n=m, k=m, terms=terms)


def cdf_monotone_check(m: int, grid_step: Fraction = Fraction(1, 1000)) -> bool:
    """True iff Q(1/m) = 0, Q(1) = 1 exactly and Q is nondecreasing on the grid."""
    pieces = cdf_pieces(m)

    def q_at(x: Fraction) -> Fraction:
        return sum((g(x) for a, g in pieces.items() if a * x < 1), Fraction(0))

    lo = Fraction(1, m)
    if q_at(lo) != 0 or q_at(Fraction(1)) != 1:
        return False
    prev = Fraction(0)
    x = lo
    while x < 1:
        x = min(x + grid_step, Fraction(1))
        cur = q_at(x)
        if cur < prev:
            return False
        prev = cur
    return True
