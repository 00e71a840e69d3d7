from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satcurve.errors import PolynomialSyntaxError, UnknownVariableError
from satcurve.mpoly import MPoly, parse_polynomial


def P(text):
    return parse_polynomial(text, ("x", "y"))


class TestParse:
    def test_cusp(self):
        assert P("y^2 - x^3").terms == {(0, 2): Fraction(1), (3, 0): Fraction(-1)}

    def test_zero(self):
        assert P("0").terms == {}

    def test_quartic_matches_reexpansion(self):
        # oracle: expand (y^2 - x^3)^2 - 4 x^5 y - x^7 with ring operations
        lhs = P("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7")
        rhs = (P("y^2 - x^3") ** 2) - P("4*x^5*y") - P("x^7")
        assert len(lhs.terms) == 5
        assert lhs == rhs

    def test_rational_literal(self):
        assert P("1/2*x").terms == {(1, 0): Fraction(1, 2)}

    def test_whitespace_insignificant(self):
        assert P(" y ^ 2-x^ 3 ") == P("y^2-x^3")

    def test_parentheses_and_products(self):
        assert P("(y - x)*(y + x)") == P("y^2 - x^2")

    def test_syntax_error_position(self):
        with pytest.raises(PolynomialSyntaxError) as ei:
            P("y^2 + @")
        assert ei.value.position == 6

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError) as ei:
            P("y^2 - z^3")
        assert ei.value.name == "z"

    def test_bad_exponent(self):
        with pytest.raises(PolynomialSyntaxError):
            P("y^x")

    def test_division_is_not_an_operator(self):
        with pytest.raises(PolynomialSyntaxError):
            P("y/x")


coeffs = st.integers(-4, 4).filter(lambda n: n != 0)
exps = st.tuples(st.integers(0, 4), st.integers(0, 4))


@st.composite
def mpolys(draw, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = draw(exps)
        terms[e] = Fraction(draw(coeffs))
    return MPoly(2, terms)


class TestRing:
    @given(mpolys())
    @settings(max_examples=60, deadline=None)
    def test_print_parse_roundtrip(self, p):
        assert parse_polynomial(p.to_string(("x", "y")), ("x", "y")) == p

    @given(mpolys(), mpolys(), mpolys())
    @settings(max_examples=40, deadline=None)
    def test_distributive(self, f, g, h):
        assert (f + g) * h == f * h + g * h

    @given(mpolys(), mpolys().filter(lambda p: not p.is_zero()))
    @settings(max_examples=40, deadline=None)
    def test_exact_division(self, f, g):
        assert (f * g).exact_div(g) == f

    def test_exact_division_failure(self):
        with pytest.raises(ValueError):
            P("y^2 - x").exact_div(P("y - 1"))

    @given(mpolys(), st.integers(-3, 3))
    @settings(max_examples=40, deadline=None)
    def test_shear_inverts(self, f, lam):
        sheared = f.shear(0, 1, Fraction(lam))
        assert sheared.shear(0, 1, Fraction(-lam)) == f

    def test_specialize(self):
        F = parse_polynomial("y^2 - x^2*(x - t)", ("x", "y", "t"))
        assert F.specialize(2, Fraction(0)) == P("y^2 - x^3")
        assert F.specialize(2, 1) == P("y^2 - x^3 + x^2")

    def test_eval_all(self):
        assert P("y^2 - x^3").eval_all((Fraction(2), Fraction(3))) == 1

    def test_lowest_form(self):
        assert P("x*y + y^3 + x^4").lowest_form() == P("x*y")
