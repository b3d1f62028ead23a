"""Exact PDFs of every ordered eigenvalue for arbitrary subsystem dimensions.

For a bipartite system with subsystem dimensions m <= n, the PDF of the k-th
smallest eigenvalue of the reduced density matrix is the signed binomial
combination

    p_k(x) = (1/N) * sum_{j=m-k+1}^{m} (-1)^(m-k+j+1) C(j-1, m-k)
                     * A_j(x) * step(1 - j*x),

with a single family of coefficient polynomials A_j shared by all k.  Each
A_j is assembled from a signed permutation sum over products of factorial-
weighted factors, followed by one differentiation:

    A_j(x) ~ d/dx [ x^(mn-1) * G_a(1/x - j) ],        a = m - j,

where G_a collects, over all permutations sigma of {0..m-1} and all size-a
index subsets K, the product over i of

    member i in K:      c_i! * y^(c_i)
    non-member i:       sum_{l=0}^{c_i} C(c_i, l) * l! * y^l,

with c_i = (n - m) + i + sigma_i, and every monomial of total degree d is
finally rescaled by 1/(m-1+d)! and shifted by y^(m-1).  Grouping the shared
falling-factorial weight by total degree turns the nested sums into integer
polynomial products, and one dynamic-programming pass over the member count
produces G_a for every subset size simultaneously.

Substituting y = 1/x - j and multiplying by x^(mn-1) clears all negative
powers (asserted), leaving exact rational polynomials of degree mn - 2.

The overall scale of the A_j family is fixed by normalizing the k = 1
density; the per-k normalization constants are then recomputed independently
and required to agree across k (they do, for every shipped dimension pair;
a mismatch raises rather than silently rescaling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .exactnum import Poly
from .steppoly import StepPolyDensity, StepTerm

__all__ = [
    "SystemDims",
    "SpectrumFamily",
    "NormalizationMismatch",
    "TraceMomentMismatch",
    "MomentCheckReport",
    "smallest_pdf",
    "smallest_moment",
    "coeff_poly",
    "order_statistic_pdf",
    "spectrum_family",
    "trace_moment",
    "family_moment_check",
    "purity_expectation",
]


class NormalizationMismatch(RuntimeError):
    """Per-k normalization constants of one family disagree."""


class TraceMomentMismatch(RuntimeError):
    """Sum of per-eigenvalue moments disagrees with the trace-power mean."""


@dataclass(frozen=True)
class SystemDims:
    """Subsystem dimensions, complex (beta = 2) ensemble."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (2 <= self.m <= self.n):
            raise ValueError("require 2 <= m <= n")

    @property
    def alpha(self) -> int:
        """Exponent of each eigenvalue in the joint density: n - m for beta = 2."""
        return self.n - self.m


@dataclass(frozen=True)
class SpectrumFamily:
    """All m ordered-eigenvalue densities for one dimension pair."""

    dims: SystemDims
    densities: tuple[StepPolyDensity, ...]

    def density(self, k: int) -> StepPolyDensity:
        if not (1 <= k <= self.dims.m):
            raise ValueError("order index out of range")
        return self.densities[k - 1]


# -- closed-form smallest eigenvalue (equal dimensions) ---------------------------


def smallest_pdf(m: int) -> StepPolyDensity:
    """PDF of the smallest eigenvalue at equal subsystem dimensions.

    Closed form m*(m^2-1)*(1 - m*x)^(m^2-2) on [0, 1/m]; kept independent of
    the general solver so the two routes cross-check each other.
    """
    if m < 2:
        raise ValueError("dimension must be >= 2")
    poly = Poly.constant(m * (m * m - 1)).shift_power(Fraction(1, m), m * m - 2)
    poly = poly.scale(Fraction(-m) ** (m * m - 2))
    return StepPolyDensity(m=m, n=m, k=1, terms=(StepTerm(m, poly),))


def smallest_moment(m: int, q: int) -> Fraction:
    """Exact q-th moment of the smallest eigenvalue at equal dimensions."""
    return Fraction(
        math.factorial(q) * math.factorial(m * m - 1),
        m ** q * math.factorial(m * m - 1 + q),
    )


# -- coefficient polynomial family -------------------------------------------------


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


def _imul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def _degree_weighted_sums(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """G_a as integer coefficient tuples in y, indexed by subset size a.

    One pass per permutation: a small DP over the member count multiplies in
    either the member factor c! * y^c or the non-member factor
    sum_l C(c,l) l! y^l at each index, which sums over all size-a subsets at
    once.  Signs follow the permutation parity.
    """
    factor_cache: dict[int, tuple[list[int], list[int]]] = {}
    for c in range(n - m, n + m - 1):
        nonmember = [math.comb(c, l) * math.factorial(l) for l in range(c + 1)]
        member = [0] * c + [math.factorial(c)]
        factor_cache[c] = (nonmember, member)

    acc: list[list[int]] = [[0] for _ in range(m + 1)]
    for sigma in permutations(range(m)):
        sign = _permutation_sign(sigma)
        dp: list[list[int]] = [[1]] + [[0] for _ in range(m)]
        for i in range(m):
            nonmember, member = factor_cache[n - m + i + sigma[i]]
            new: list[list[int]] = []
            for a in range(m + 1):
                t = _imul(dp[a], nonmember) if any(dp[a]) else [0]
                if a > 0 and any(dp[a - 1]):
                    grown = _imul(dp[a - 1], member)
                    if len(t) < len(grown):
                        t += [0] * (len(grown) - len(t))
                    for idx, v in enumerate(grown):
                        t[idx] += v
                new.append(t)
            dp = new
        for a in range(m + 1):
            cur = acc[a]
            add = dp[a]
            if len(cur) < len(add):
                cur += [0] * (len(add) - len(cur))
            for idx, v in enumerate(add):
                cur[idx] += sign * v
    return tuple(tuple(a) for a in acc)


def _assembly_constant(m: int, n: int) -> Fraction:
    """Scalar in front of the differentiated sum, fixed by the moment problem."""
    c = Fraction(-math.factorial(m * n - 1))
    for r in range(m):
        c *= Fraction(
            math.factorial(r + 1) * math.factorial(r) * math.factorial(n - m + r),
            math.factorial(n - 1 - r) * math.factorial(m - r) * math.factorial(n + r),
        )
    return c


@lru_cache(maxsize=None)
def _raw_coeff_polys(m: int, n: int) -> tuple[Poly, ...]:
    """Unscaled A_j for j = 1..m (index j-1)."""
    sums = _degree_weighted_sums(m, n)
    const = _assembly_constant(m, n)
    mn = m * n
    out = []
    for j in range(1, m + 1):
        weighted = sums[m - j]
        # x^(mn-1) * sum_d G[d] * y^(m-1+d) / (m-1+d)!  with  y = 1/x - j
        # each monomial becomes x^(mn-m-d) * (1 - j*x)^(m-1+d), degree mn-1.
        assembled = Poly()
        for d, cd in enumerate(weighted):
            if cd == 0:
                continue
            e = m - 1 + d
            shift = mn - m - d
            if shift < 0:
                raise AssertionError("negative power of x survives the substitution")
            piece = Poly.monomial(shift, Fraction(cd, math.factorial(e)))
            piece = piece.shift_power(Fraction(1, j), e).scale(Fraction(-j) ** e)
            assembled = assembled + piece
        out.append(assembled.diff().scale(const))
    return tuple(out)


@lru_cache(maxsize=None)
def _scaled_coeff_polys(m: int, n: int) -> tuple[Poly, ...]:
    """A_j rescaled so the k = 1 density A_m * step(1 - m*x) is normalized."""
    raw = _raw_coeff_polys(m, n)
    scale = raw[m - 1].integrate(0, Fraction(1, m))
    if scale == 0:
        raise AssertionError("degenerate coefficient family")
    return tuple(p.scale(1 / scale) for p in raw)


def coeff_poly(dims: SystemDims, j: int) -> Poly:
    """Coefficient polynomial of step(1 - j*x), in normalization-consistent scale."""
    if not (1 <= j <= dims.m):
        raise ValueError("step index out of range")
    return _scaled_coeff_polys(dims.m, dims.n)[j - 1]


def _signed_weight(m: int, k: int, j: int) -> Fraction:
    """Alternating binomial weight of A_j inside the k-th density."""
    return Fraction((-1) ** (m - k + j + 1) * math.comb(j - 1, m - k))


def _density_terms(dims: SystemDims, k: int) -> tuple[tuple[StepTerm, ...], Fraction]:
    """Terms of the k-th density before per-k normalization, plus their integral."""
    m = dims.m
    polys = _scaled_coeff_polys(m, dims.n)
    terms = []
    total = Fraction(0)
    for j in range(m, m - k, -1):
        poly = polys[j - 1].scale(_signed_weight(m, k, j))
        terms.append(StepTerm(step_index=j, poly=poly))
        total += poly.integrate(0, Fraction(1, j))
    return tuple(terms), total


def order_statistic_pdf(dims: SystemDims, k: int) -> StepPolyDensity:
    """Exact normalized PDF of the k-th smallest eigenvalue."""
    if not (1 <= k <= dims.m):
        raise ValueError("order index out of range")
    terms, total = _density_terms(dims, k)
    if total != 1:
        terms = tuple(StepTerm(t.step_index, t.poly.scale(1 / total)) for t in terms)
    return StepPolyDensity(m=dims.m, n=dims.n, k=k, terms=terms)


def spectrum_family(dims: SystemDims) -> SpectrumFamily:
    """All m densities for one dimension pair.

    The coefficient polynomials are already scaled so that k = 1 integrates
    to one; every other k must then integrate to one as well if the single
    shared normalization constant is legitimate.  A violation is reported as
    ``NormalizationMismatch`` instead of being papered over per k.
    """
    densities = []
    for k in range(1, dims.m + 1):
        terms, total = _density_terms(dims, k)
        if total != 1:
            raise NormalizationMismatch(
                f"density k={k} of dims ({dims.m},{dims.n}) integrates to {total}, "
                "expected the k=1 normalization to be shared"
            )
        densities.append(StepPolyDensity(m=dims.m, n=dims.n, k=k, terms=terms))
    return SpectrumFamily(dims=dims, densities=tuple(densities))


# -- trace-power means ----------------------------------------------------------------


def trace_moment(m: int, q: int) -> Fraction:
    """Exact ensemble mean of the q-th trace power at equal dimensions.

    Double sum of factorial ratios; summands where a reciprocal-factorial
    argument is negative vanish (the reciprocal of a gamma pole is zero).
    """
    if m < 2:
        raise ValueError("dimension must be >= 2")
    if q < 0:
        raise ValueError("power must be nonnegative")

    def recip_fact(z: int) -> Fraction:
        # 1/(z-1)! for z >= 1, zero at the poles z <= 0
        return Fraction(1, math.factorial(z - 1)) if z >= 1 else Fraction(0)

    total = Fraction(0)
    qfact_sq = math.factorial(q) ** 2
    for i in range(m):
        for p in range(m):
            r = recip_fact(1 + i - p) * recip_fact(1 + q + p - i)
            if r == 0:
                continue
            total += Fraction(math.factorial(p + q) * qfact_sq, math.factorial(p)) * r * r
    return total * Fraction(
        math.factorial(m * m - 1), math.factorial(m * m - 1 + q)
    )


def purity_expectation(dims: SystemDims) -> Fraction:
    """Exact ensemble mean of the sum of squared eigenvalues: (m+n)/(mn+1).

    Valid for all n >= m; cross-checked against ``trace_moment(m, 2)`` when
    m = n and against Monte Carlo estimates in the test suite.
    """
    return Fraction(dims.m + dims.n, dims.m * dims.n + 1)


@dataclass(frozen=True)
class MomentCheckReport:
    """Per-q comparison of the family moment sum with the trace-power mean."""

    m: int
    rows: tuple[tuple[int, Fraction, Fraction], ...]  # (q, family sum, trace mean)

    @property
    def ok(self) -> bool:
        return all(lhs == rhs for _, lhs, rhs in self.rows)


def family_moment_check(fam: SpectrumFamily, qmax: int) -> MomentCheckReport:
    """Assert sum_k moment(p_k, q) equals the trace-power mean for q = 1..qmax."""
    if fam.dims.m != fam.dims.n:
        raise ValueError("trace-moment check is defined for equal dimensions")
    rows = []
    for q in range(1, qmax + 1):
        family_sum = sum((d.moment(q) for d in fam.densities), Fraction(0))
        expected = trace_moment(fam.dims.m, q)
        rows.append((q, family_sum, expected))
        if family_sum != expected:
            raise TraceMomentMismatch(
                f"moment sum mismatch at q={q}: family gives {family_sum}, "
                f"trace mean is {expected}"
            )
    return MomentCheckReport(m=fam.dims.m, rows=tuple(rows))
