"""Step-polynomial densities: sums of polynomials gated by unit step functions.

The probability density of the k-th smallest eigenvalue of the reduced
density matrix has the universal shape

    p(x) = sum_j  c_j * A_j(x) * step(1 - j*x),      j = m-k+1 .. m,

a polynomial combination that switches pieces at the rational breakpoints
x = 1/j.  ``StepPolyDensity`` stores each summand (sign and multiplier folded
into the polynomial) and provides exact evaluation, normalization checks,
Mellin-style integer moments, cumulant descriptors, and endpoint vanishing
orders, all in rational arithmetic.

Supports: the k-th smallest of m eigenvalues summing to one lives on
[0, 1/(m+1-k)] for k < m and on [1/m, 1] for k = m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exactnum import Poly, decimal_str, rational_from_json, rational_to_json

__all__ = [
    "StepTerm",
    "StepPolyDensity",
    "DescriptorSet",
    "density_to_json_dict",
    "density_from_json_dict",
    "curve_rows",
]


@dataclass(frozen=True)
class StepTerm:
    """One summand poly(x) * step(1 - step_index * x)."""

    step_index: int
    poly: Poly

    def __post_init__(self) -> None:
        if self.step_index < 1:
            raise ValueError("step_index must be >= 1")
        if self.poly.is_zero():
            raise ValueError("step term polynomial must be nonzero")


@dataclass(frozen=True)
class DescriptorSet:
    """Exact distribution descriptors derived from the first four cumulants."""

    mean: Fraction
    variance: Fraction
    skewness: Fraction          # kappa3^2 / kappa2^3
    excess_kurtosis: Fraction   # kappa4 / kappa2^2


@dataclass(frozen=True)
class StepPolyDensity:
    """Exact PDF of the k-th smallest of m ordered eigenvalues (n >= m).

    Terms are kept sorted by descending step index and must cover exactly
    the indices m-k+1 .. m.  Every factory in this package produces densities
    that integrate to one exactly; ``normalize_check`` recomputes that
    integral from scratch.
    """

    m: int
    n: int
    k: int
    terms: tuple[StepTerm, ...]

    def __post_init__(self) -> None:
        if not (2 <= self.m <= self.n):
            raise ValueError("require 2 <= m <= n")
        if not (1 <= self.k <= self.m):
            raise ValueError("require 1 <= k <= m")
        expected = list(range(self.m, self.m - self.k, -1))
        if [t.step_index for t in self.terms] != expected:
            raise ValueError(
                f"terms must carry step indices {expected} in descending order"
            )

    # -- structure -------------------------------------------------------------

    def support(self) -> tuple[Fraction, Fraction]:
        if self.k == self.m:
            return Fraction(1, self.m), Fraction(1)
        return Fraction(0), Fraction(1, self.m + 1 - self.k)

    def term(self, step_index: int) -> StepTerm:
        for t in self.terms:
            if t.step_index == step_index:
                return t
        raise KeyError(step_index)

    # -- pointwise evaluation ----------------------------------------------------

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Exact density value: sum of polynomials whose step is active (j*x < 1)."""
        x = Fraction(x)
        if not (0 <= x <= 1):
            raise ValueError("evaluation point must lie in [0, 1]")
        total = Fraction(0)
        for t in self.terms:
            if t.step_index * x < 1:
                total += t.poly(x)
        return total

    def evaluate_from_inside(self, x: Fraction | int) -> Fraction:
        """One-sided value at the upper support endpoint (steps with j*x <= 1 active).

        Coincides with ``evaluate`` except exactly at breakpoints, where the
        density's left limit is the honest value for plotting.
        """
        x = Fraction(x)
        total = Fraction(0)
        for t in self.terms:
            if t.step_index * x <= 1:
                total += t.poly(x)
        return total

    # -- integrals -----------------------------------------------------------------

    def normalize_check(self) -> Fraction:
        """Exact integral of the density over [0, 1], split at the breakpoints 1/j."""
        return self.moment(0)

    def moment(self, q: int) -> Fraction:
        """Exact q-th moment: integral of x^q * density over the support.

        Each step contributes on [0, 1/j]; below the lower support endpoint the
        active polynomials cancel identically, so integrating from zero is exact.
        """
        if q < 0:
            raise ValueError("moment order must be nonnegative")
        total = Fraction(0)
        xq = Poly.monomial(q)
        for t in self.terms:
            total += (t.poly * xq).integrate(0, Fraction(1, t.step_index))
        return total

    def descriptors(self) -> DescriptorSet:
        """Mean, variance, skewness and excess kurtosis from exact moments."""
        mu1 = self.moment(1)
        mu2 = self.moment(2)
        mu3 = self.moment(3)
        mu4 = self.moment(4)
        k1 = mu1
        k2 = mu2 - mu1 ** 2
        k3 = mu3 - 3 * mu2 * mu1 + 2 * mu1 ** 3
        k4 = mu4 - 4 * mu3 * mu1 - 3 * mu2 ** 2 + 12 * mu2 * mu1 ** 2 - 6 * mu1 ** 4
        if k2 == 0:
            raise ValueError("degenerate density: zero variance")
        return DescriptorSet(
            mean=k1,
            variance=k2,
            skewness=k3 ** 2 / k2 ** 3,
            excess_kurtosis=k4 / k2 ** 2,
        )

    # -- endpoint behaviour -----------------------------------------------------------

    def vanishing_order(self, endpoint: Fraction | int) -> int:
        """Multiplicity of the density's root at a support endpoint.

        The relevant polynomial is the sum of the pieces active just inside
        the support: steps with j*e < 1 when approaching from above the lower
        endpoint, j*e <= 1 when approaching from below the upper endpoint.
        Order 0 means the density does not vanish there.
        """
        e = Fraction(endpoint)
        lo, hi = self.support()
        if e == lo:
            active = [t.poly for t in self.terms if t.step_index * e < 1]
        elif e == hi:
            active = [t.poly for t in self.terms if t.step_index * e <= 1]
        else:
            raise ValueError(f"{e} is not an endpoint of the support [{lo}, {hi}]")
        combined = Poly()
        for p in active:
            combined = combined + p
        if combined.is_zero():
            raise ValueError("active polynomial combination vanishes identically")
        return combined.root_multiplicity(e)


# -- serialization -------------------------------------------------------------------


def density_to_json_dict(d: StepPolyDensity) -> dict:
    return {
        "m": d.m,
        "n": d.n,
        "k": d.k,
        "terms": [
            {
                "step_index": t.step_index,
                "coefficients": [rational_to_json(c) for c in t.poly.coeffs],
            }
            for t in d.terms
        ],
    }


def density_from_json_dict(obj: dict) -> StepPolyDensity:
    terms = tuple(
        StepTerm(
            step_index=int(t["step_index"]),
            poly=Poly(rational_from_json(c) for c in t["coefficients"]),
        )
        for t in obj["terms"]
    )
    return StepPolyDensity(m=int(obj["m"]), n=int(obj["n"]), k=int(obj["k"]), terms=terms)


def curve_rows(d: StepPolyDensity, resolution: int = 1000) -> Iterator[tuple[str, str]]:
    """(x, p(x)) rows over the support as decimal strings.

    `resolution` is points per unit of x.  Grid points are i/resolution;
    the exact support endpoints are always included, with the boundary value
    taken as the limit from inside the support.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    lo, hi = d.support()
    xs: list[Fraction] = [lo]
    i0 = (lo.numerator * resolution) // lo.denominator + 1
    x = Fraction(i0, resolution)
    while x < hi:
        xs.append(x)
        i0 += 1
        x = Fraction(i0, resolution)
    xs.append(hi)
    for x in xs:
        if x == hi:
            value = d.evaluate_from_inside(x)
        else:
            value = d.evaluate(x)
        yield decimal_str(x), decimal_str(value)
