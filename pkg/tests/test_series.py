from fractions import Fraction as F

import pytest

from satcurve.errors import InsufficientTruncation
from satcurve.mpoly import parse_polynomial
from satcurve.numfield import QQ, cyclotomic_field
from satcurve.series import INF, FractionSeries, PSeries, poly_on_series


def mono(e, c=1):
    return PSeries.monomial(QQ, QQ.from_fraction(c), F(e))


class TestArithmetic:
    def test_add_cancellation(self):
        s = mono(F(3, 2)) + mono(F(3, 2), -1)
        assert s.is_zero_to_prec() and s.is_exact()

    def test_mul_prec_propagation(self):
        a = PSeries(QQ, {F(0): QQ.one}, F(5))
        b = PSeries(QQ, {F(2): QQ.one}, F(4))
        prod = a * b
        # min(5 + 2, 4 + 0) = 4: b's unknown tail starts at 4
        assert prod.prec == F(4)
        assert prod.terms == {F(2): QQ.one}
        c = PSeries(QQ, {F(1): QQ.one}, F(4))
        assert (b * c).prec == F(5)  # min(4 + 1, 4 + 2)

    def test_inverse_of_truncated(self):
        one = QQ.one
        s = PSeries(QQ, {F(0): one, F(1): -one}, F(6))
        inv = s.inverse()
        assert [e for e, _ in inv.sorted_terms()] == [F(k) for k in range(6)]
        assert all(c == 1 for _, c in inv.sorted_terms())
        assert (s * inv - PSeries.constant(QQ, 1)).is_zero_to_prec()

    def test_inverse_needs_precision_for_exact(self):
        s = PSeries(QQ, {F(0): QQ.one, F(1): QQ.one}, INF)
        with pytest.raises(InsufficientTruncation):
            s.inverse()
        inv = s.inverse(prec=4)
        assert inv.prec == F(4)

    def test_inverse_of_monomial_is_exact(self):
        s = mono(F(5, 2), 4)
        inv = s.inverse()
        assert inv.is_exact()
        assert inv.terms == {F(-5, 2): QQ.from_fraction(F(1, 4))}

    def test_inverse_no_leading_term(self):
        s = PSeries(QQ, {}, F(3))
        with pytest.raises(InsufficientTruncation):
            s.inverse()


class TestTwist:
    def test_quarter_turn(self):
        F4, z = cyclotomic_field(4)
        zp = [F4.one, z, z * z, z * z * z]
        s = PSeries(F4, {F(3, 2): F4.one, F(7, 4): F4.one}, INF)
        t2 = s.twist(2, 4, zp)
        # exponent 3/2: (2*6) mod 4 = 0 -> fixed; exponent 7/4: (2*7) mod 4 = 2 -> times -1
        assert t2.coeff(F(3, 2)) == F4.one
        assert t2.coeff(F(7, 4)) == -F4.one
        assert (t2 - s).order() == F(7, 4)

    def test_off_grid_rejected(self):
        s = PSeries(QQ, {F(1, 3): QQ.one}, INF)
        with pytest.raises(ValueError):
            s.twist(1, 2, [QQ.one, QQ.from_fraction(-1)])


class TestSubstitution:
    def test_exact_branch_residual(self):
        f = parse_polynomial("y^2 - x^3", ("x", "y"))
        s = mono(F(3, 2))
        assert poly_on_series(f, s, QQ).is_zero_to_prec()

    def test_fraction_series_snapshot(self):
        s = PSeries(QQ, {F(3, 2): QQ.one}, F(4))
        fs = FractionSeries.from_pseries(s)
        assert fs.order() == F(3, 2)
        assert not fs.identically_zero_up_to_truncation
        assert fs.truncation_order == F(4)
