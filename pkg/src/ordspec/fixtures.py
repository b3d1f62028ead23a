"""Embedded corpus of published closed-form results, and the re-derivation check.

Each density fixture records the factored shape c * x^s * (1 - j*x)^e * tail(x)
of the polynomial attached to one step index of one ordered-eigenvalue PDF.
The check re-derives every family from scratch through the general solver and
compares coefficient-for-coefficient, then re-derives the descriptor table for
m = n = 3 and the mean tables for the larger dimension pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exactnum import Poly
from .ordstat import SystemDims, spectrum_family

__all__ = ["FixtureResult", "published_coeff_poly", "published_density", "check_all",
           "descriptor_table_m3", "mean_table", "PUBLISHED_MEANS", "DESCRIPTORS_M3"]


def _factored(mult: int, j: int, e: int, tail: Sequence[int], x_power: int = 0) -> Poly:
    """mult * x^x_power * (1 - j*x)^e * (tail[0] + tail[1] x + ...)"""
    base = Poly.monomial(x_power, mult)
    base = base.shift_power(Fraction(1, j), e).scale(Fraction(-j) ** e) if e else base
    return base * Poly(tail)


# -- coefficient polynomials of step(1 - j*x), keyed by (m, n) then j -----------------
# Spec tuple: (mult, factor_index, e, tail, x_power) encoding
# mult * x^x_power * (1 - factor_index*x)^e * tail(x).  The factor index equals
# the step index except in the two-dimensional family, whose two step
# polynomials are the same (1 - 2x)^2 expression.

_COEFF_SPECS: dict[
    tuple[int, int], dict[int, tuple[int, int, int, tuple[int, ...], int]]
] = {
    (2, 2): {
        2: (6, 2, 2, (1,), 0),
        1: (6, 2, 2, (1,), 0),
    },
    (3, 3): {
        3: (24, 3, 7, (1,), 0),
        2: (48, 2, 3, (1, -15, 87, -165, 156), 0),
        1: (24, 1, 3, (1, -18, 132, -354, 309), 0),
    },
    (4, 4): {
        4: (60, 4, 14, (1,), 0),
        3: (60, 3, 8, (3, -96, 1308, -6128, 29818, -70160, 67812), 0),
        2: (30, 2, 6, (6, -264, 5208, -45920, 229936, -859040, 2706592, -5570528,
                       5517256), 0),
        1: (60, 1, 8, (1, -48, 1044, -9904, 44934, -94128, 73116), 0),
    },
    (5, 5): {
        5: (120, 5, 23, (1,), 0),
        4: (240, 4, 15, (2, -110, 2690, -20600, 304595, -1558835, 4852905,
                         -10365975, 11082660), 0),
        3: (720, 3, 11, (1, -82, 3124, -55528, 656656, -6833200, 60965520,
                         -390601200, 1733312295, -5065359970, 10140970180,
                         -13794793180, 11635970460), 0),
        2: (240, 2, 11, (2, -186, 8118, -167464, 2021877, -18428355, 161532525,
                         -1281331755, 7805513430, -33503168380, 94797708060,
                         -158275026540, 119326518320), 0),
        1: (120, 1, 15, (1, -100, 4720, -104200, 1215160, -7812880, 27619440,
                         -49896300, 35838555), 0),
    },
    (6, 6): {
        6: (210, 6, 34, (1,), 0),
        5: (210, 5, 24, (5, -420, 16080, -160680, 6469230, -40658112, 261366628,
                         -1595391672, 5683720173, -11348219292, 11273058660), 0),
        4: (420, 4, 18, (5, -660, 41220, -1199200, 26188080, -541359744,
                         9132924768, -109228380096, 969229595664, -6384003186176,
                         35245566675264, -168039178157376, 674535601042864,
                         -2058660341189376, 4315240551175584, -5476040960131392,
                         3527358922055856), 0),
        3: (420, 3, 16, (5, -780, 58140, -2125680, 50119740, -1004003136,
                         19201278456, -311887564848, 3949780543830,
                         -38228455420056, 283595869865088, -1648254166845840,
                         7876735652844396, -32847798731822496,
                         122296710227124168, -385032778740807120,
                         925473909342876741, -1465716247992173916,
                         1154580059692232388), 0),
        2: (210, 2, 18, (5, -840, 67680, -2641760, 60875040, -1041040128,
                         17346863424, -289429058688, 4135247214912,
                         -46316923954048, 395768314525056, -2538512485868160,
                         11970268586045536, -40164721924654464,
                         90652008902870976, -123384033397219200,
                         76712186285087664), 0),
        1: (210, 1, 24, (1, -180, 15600, -657000, 15307350, -210235104,
                         1758025460, -8979492600, 27172972425, -44490525420,
                         30241971348), 0),
    },
    (4, 5): {
        4: (3420, 4, 14, (1, 5, -20, 4), 1),
        3: (3420, 3, 9, (3, -72, 552, 360, -19846, 145224, -430948, 580728,
                         -188941), 1),
        2: (3420, 2, 8, (3, -105, 1452, -8340, 8632, 174904, -1372976, 5366608,
                         -11247836, 10332628), 1),
        1: (3420, 1, 11, (1, -40, 661, -5256, 21231, -41520, 31111), 1),
    },
}

# signed multipliers of the coefficient polynomials inside each density, as published
_COMBINATIONS: dict[tuple[int, int], dict[int, dict[int, int]]] = {
    (2, 2): {1: {2: 1}, 2: {2: -1, 1: 1}},
    (3, 3): {1: {3: 1}, 2: {3: -2, 2: 1}, 3: {3: 1, 2: -1, 1: 1}},
    (4, 4): {1: {4: 1}, 2: {4: -3, 3: 1}, 3: {4: 3, 3: -2, 2: 1},
             4: {4: -1, 3: 1, 2: -1, 1: 1}},
    (5, 5): {1: {5: 1}, 2: {5: -4, 4: 1}, 3: {5: 6, 4: -3, 3: 1},
             4: {5: -4, 4: 3, 3: -2, 2: 1}, 5: {5: 1, 4: -1, 3: 1, 2: -1, 1: 1}},
    (6, 6): {1: {6: 1}, 2: {6: -5, 5: 1}, 3: {6: 10, 5: -4, 4: 1},
             4: {6: -10, 5: 6, 4: -3, 3: 1}, 5: {6: 5, 5: -4, 4: 3, 3: -2, 2: 1},
             6: {6: -1, 5: 1, 4: -1, 3: 1, 2: -1, 1: 1}},
    (4, 5): {1: {4: 1}, 2: {4: -3, 3: 1}, 3: {4: 3, 3: -2, 2: 1},
             4: {4: -1, 3: 1, 2: -1, 1: 1}},
}

FAMILIES: tuple[tuple[int, int], ...] = ((2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (4, 5))


def published_coeff_poly(m: int, n: int, j: int) -> Poly:
    mult, factor_index, e, tail, x_power = _COEFF_SPECS[(m, n)][j]
    return _factored(mult, factor_index, e, tail, x_power)


def published_density(m: int, n: int, k: int) -> dict[int, Poly]:
    """step index -> polynomial of the published k-th density."""
    return {
        j: published_coeff_poly(m, n, j).scale(c)
        for j, c in _COMBINATIONS[(m, n)][k].items()
    }


# -- published descriptor and mean tables ---------------------------------------------

DESCRIPTORS_M3: dict[int, dict[str, Fraction]] = {
    1: {
        "mean": Fraction(1, 27),
        "variance": Fraction(4, 3645),
        "skewness": Fraction(245, 121),
        "excess_kurtosis": Fraction(201, 88),
    },
    2: {
        "mean": Fraction(103, 432),
        "variance": Fraction(6499, 933120),
        "skewness": Fraction(241916407220, 33214290609379),
        "excess_kurtosis": Fraction(-248949138, 464607011),
    },
    3: {
        "mean": Fraction(313, 432),
        "variance": Fraction(8179, 933120),
        "skewness": Fraction(80059327220, 66204269040019),
        "excess_kurtosis": Fraction(-387186258, 735856451),
    },
}

PUBLISHED_MEANS: dict[tuple[int, int], tuple[Fraction, ...]] = {
    (4, 4): (
        Fraction(1, 64),
        Fraction(13727, 139968),
        Fraction(617057, 2239488),
        Fraction(1367807, 2239488),
    ),
    (4, 5): (
        Fraction(125, 4096),
        Fraction(3188009, 26873856),
        Fraction(7552985, 26873856),
        Fraction(15312737, 26873856),
    ),
    (5, 5): (
        Fraction(1, 125),
        Fraction(813587, 16384000),
        Fraction(1182578796887, 8707129344000),
        Fraction(2440637328617, 8707129344000),
        Fraction(4581882694877, 8707129344000),
    ),
    (6, 6): (
        Fraction(1, 216),
        Fraction(301301927, 10546875000),
        Fraction(873543307049548733, 11324620800000000000),
        Fraction(75602489231060183229976073, 487487792008396800000000000),
        Fraction(132969850997476498208010743, 487487792008396800000000000),
        Fraction(225128892964655720357665283, 487487792008396800000000000),
    ),
}


def descriptor_table_m3() -> dict[int, dict[str, Fraction]]:
    """Re-derive the m = n = 3 descriptor table from the general solver."""
    fam = spectrum_family(SystemDims(3, 3))
    out: dict[int, dict[str, Fraction]] = {}
    for k in (1, 2, 3):
        d = fam.density(k).descriptors()
        out[k] = {
            "mean": d.mean,
            "variance": d.variance,
            "skewness": d.skewness,
            "excess_kurtosis": d.excess_kurtosis,
        }
    return out


def mean_table(m: int, n: int) -> tuple[Fraction, ...]:
    fam = spectrum_family(SystemDims(m, n))
    return tuple(d.moment(1) for d in fam.densities)


# -- the corpus check ---------------------------------------------------------------------


@dataclass(frozen=True)
class FixtureResult:
    fixture_id: str
    ok: bool
    detail: str = ""


def _first_coeff_diff(got: Poly, expected: Poly) -> str:
    top = max(got.degree, expected.degree)
    for i in range(top + 1):
        a, b = got.coefficient(i), expected.coefficient(i)
        if a != b:
            return f"coefficient of x^{i}: derived {a}, published {b}"
    return "polynomials agree"


def check_all(
    descriptor_corpus: Mapping[int, Mapping[str, Fraction]] | None = None,
    mean_corpus: Mapping[tuple[int, int], Sequence[Fraction]] | None = None,
    progress: Callable[[FixtureResult], None] | None = None,
) -> list[FixtureResult]:
    """Re-derive every published fixture and compare exactly.

    The corpora are injectable so a deliberately perturbed table can be used
    as a negative control.
    """
    descriptor_corpus = descriptor_corpus or DESCRIPTORS_M3
    mean_corpus = mean_corpus or PUBLISHED_MEANS
    results: list[FixtureResult] = []

    def emit(res: FixtureResult) -> None:
        results.append(res)
        if progress is not None:
            progress(res)

    for m, n in FAMILIES:
        fam = spectrum_family(SystemDims(m, n))
        for k in range(1, m + 1):
            fid = f"m{m}n{n}.p{k}"
            expected = published_density(m, n, k)
            derived = {t.step_index: t.poly for t in fam.density(k).terms}
            if set(derived) != set(expected):
                emit(FixtureResult(fid, False,
                                   f"step indices {sorted(derived)} != {sorted(expected)}"))
                continue
            bad = ""
            for j in sorted(expected):
                if derived[j] != expected[j]:
                    bad = f"step {j}: " + _first_coeff_diff(derived[j], expected[j])
                    break
            emit(FixtureResult(fid, not bad, bad))

    derived_desc = descriptor_table_m3()
    for k in sorted(descriptor_corpus):
        for name, value in descriptor_corpus[k].items():
            fid = f"table1.k{k}.{_DESCRIPTOR_SHORT[name]}"
            got = derived_desc[k][name]
            ok = got == value
            emit(FixtureResult(fid, ok, "" if ok else f"derived {got}, published {value}"))

    for (m, n), means in sorted(mean_corpus.items()):
        derived_means = mean_table(m, n)
        for k, value in enumerate(means, start=1):
            fid = f"means.m{m}n{n}.k{k}"
            got = derived_means[k - 1]
            ok = got == value
            emit(FixtureResult(fid, ok, "" if ok else f"derived {got}, published {value}"))

    return results


_DESCRIPTOR_SHORT = {
    "mean": "kappa1",
    "variance": "kappa2",
    "skewness": "skew",
    "excess_kurtosis": "exkurt",
}
