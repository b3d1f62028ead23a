"""Exact scalar and polynomial arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordspec.exactnum import Poly, decimal_str, rational_from_json, rational_to_json
from ordspec.fixtures import published_coeff_poly

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 4)
small_polys = st.lists(rationals, max_size=6).map(Poly)


def convolve(p: Poly, q: Poly) -> Poly:
    """Independent reference product: direct convolution of coefficient lists."""
    if p.is_zero() or q.is_zero():
        return Poly()
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Poly(out)


def one_minus_jx(j: int) -> Poly:
    return Poly((1, -j))


class TestMul:
    def test_binomial_square(self):
        p = one_minus_jx(2)
        assert p * p == Poly((1, -4, 4))

    def test_zero_annihilator(self):
        p = Poly((3, Fraction(1, 2), -7))
        assert p * Poly() == Poly()
        assert Poly() * p == Poly()

    def test_seventh_power_against_convolution(self):
        # (1-3x)^7 by repeated squaring, then times the published remaining
        # factor; compared term-by-term against plain convolution
        base = Poly((1,)).shift_power(Fraction(1, 3), 7).scale(Fraction(-3) ** 7)
        expected = base
        direct = Poly((1,))
        for _ in range(7):
            direct = convolve(direct, one_minus_jx(3))
        assert expected == direct
        full = published_coeff_poly(3, 3, 3)  # 24 * (1-3x)^7
        assert full == direct.scale(24)
        assert full == convolve(direct, Poly((24,)))

    @given(small_polys, small_polys)
    def test_degree_additivity(self, p, q):
        if p.is_zero() or q.is_zero():
            assert (p * q).is_zero()
        else:
            assert (p * q).degree == p.degree + q.degree


class TestDiff:
    def test_power_rule(self):
        assert Poly((0, 0, 0, 1)).diff() == Poly((0, 0, 3))

    def test_constant(self):
        assert Poly((5,)).diff() == Poly()

    def test_m2_cdf_piece_derivative(self):
        # d/dx of the piece of the two-dimensional CDF active on [1/2, 1]:
        # 1 - 6x^2(1-x) - 2(1-x)^3 differentiates to 6(1-2x)^2
        piece = Poly((1,)) - Poly((0, 0, 6, -6)) - Poly((1,)).shift_power(1, 3).scale(-2)
        expected = (one_minus_jx(2) * one_minus_jx(2)).scale(6)
        assert piece.diff() == expected

    @given(small_polys)
    def test_diff_inverts_antiderivative(self, p):
        assert p.antiderivative().diff() == p


class TestIntegrate:
    def test_smallest_two_dim_density_normalized(self):
        p = (one_minus_jx(2) * one_minus_jx(2)).scale(6)
        assert p.integrate(0, Fraction(1, 2)) == 1

    def test_published_coefficient_integrals(self):
        assert published_coeff_poly(4, 4, 3).integrate(0, Fraction(1, 3)) == 4
        assert published_coeff_poly(4, 4, 4).integrate(0, Fraction(1, 4)) == 1
        assert published_coeff_poly(4, 4, 2).integrate(0, Fraction(1, 2)) == 6
        assert published_coeff_poly(4, 4, 1).integrate(0, 1) == 4

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            Poly((1,)).integrate(1, 0)

    @given(small_polys, rationals, rationals, rationals)
    def test_additive_over_adjacent_intervals(self, p, a, b, c):
        lo, mid, hi = sorted((a, b, c))
        assert p.integrate(lo, mid) + p.integrate(mid, hi) == p.integrate(lo, hi)


class TestShiftPower:
    def test_square(self):
        assert Poly((1,)).shift_power(1, 2) == Poly((1, -2, 1))

    def test_identity(self):
        p = Poly((2, 0, 5))
        assert p.shift_power(0, 0) == p

    def test_eighth_power_constant_coefficient(self):
        p = Poly((1,)).shift_power(Fraction(1, 3), 8)
        assert p.coefficient(0) == Fraction(1, 6561)


class TestRationalInvariants:
    @given(rationals, rationals)
    def test_add_sub_roundtrip(self, a, b):
        assert a + b - b == a

    @given(rationals, rationals)
    def test_mul_div_roundtrip(self, a, b):
        if b != 0:
            assert (a * b) / b == a

    def test_lowest_terms(self):
        f = Fraction(6, -8)
        assert f.numerator == -3 and f.denominator == 4

    def test_all_coefficients_are_fractions(self):
        p = published_coeff_poly(6, 6, 3)
        assert all(isinstance(c, Fraction) for c in p.coeffs)


class TestSerialization:
    def test_rational_json_roundtrip(self):
        f = Fraction(-123456789123456789, 987654321)
        assert rational_from_json(rational_to_json(f)) == f

    def test_poly_json_roundtrip(self):
        p = published_coeff_poly(4, 5, 2)
        assert Poly.from_json(p.to_json()) == p

    def test_decimal_str(self):
        assert decimal_str(Fraction(7, 8)) == "0.875"
        assert decimal_str(Fraction(1, 3)) == "0.33333333333333333"
        assert decimal_str(Fraction(0)) == "0"


class TestDeflate:
    def test_multiplicity(self):
        p = Poly((1,)).shift_power(Fraction(1, 2), 3) * Poly((1, 1))
        assert p.root_multiplicity(Fraction(1, 2)) == 3
        assert p.root_multiplicity(-1) == 1
        assert p.root_multiplicity(7) == 0
