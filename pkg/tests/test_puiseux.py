from fractions import Fraction as F

import mpmath
import pytest

from satcurve.algebra import make_y_regular, parse_curve
from satcurve.errors import (
    DenominatorVanishesOnBranch,
    InsufficientTruncation,
    NotAGerm,
    NotYRegular,
    PrecisionOverflow,
    RadiusTooLarge,
)
from satcurve.numfield import QQ, alg_equal
from satcurve.puiseux import (
    CurveContext,
    PuiseuxBranch,
    branch_multiplicity,
    characteristic_exponents,
    evaluate_branch,
    puiseux_expand,
    restrict_fraction,
    tangent_slope,
)
from satcurve.series import INF, poly_on_series

P = parse_curve

QUARTIC = "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"


class TestExpansion:
    def test_cusp(self):
        bs = puiseux_expand(P("y^2 - x^3"), 3)
        assert len(bs) == 1
        b = bs[0]
        assert b.ramification_index == 2
        assert b.terms == {F(3, 2): QQ.one}
        assert b.exact

    def test_two_lines(self):
        bs = puiseux_expand(P("y^2 - x*y"), 2)
        assert len(bs) == 2
        assert sorted(len(b.terms) for b in bs) == [0, 1]
        for b in bs:
            assert b.ramification_index == 1
            if b.terms:
                assert b.terms == {F(1): QQ.one}

    def test_quartic_exact_root(self):
        # oracle: f(x, x^(3/2) + x^(7/4)) = 0 identically, checked by exact
        # substitution in the Puiseux polynomial ring
        bs = puiseux_expand(P(QUARTIC), 2)
        assert len(bs) == 1
        b = bs[0]
        assert b.ramification_index == 4
        assert b.terms == {F(3, 2): QQ.one, F(7, 4): QQ.one}
        residual = poly_on_series(P(QUARTIC), b.series(), b.field)
        assert residual.is_zero_to_prec() and residual.is_exact()

    def test_conjugate_lines_unfold(self):
        bs = puiseux_expand(P("y^2 - 2*x^2"), 3)
        assert len(bs) == 2
        assert all(b.ramification_index == 1 for b in bs)
        s0, s1 = (b.coeff(F(1)) for b in bs)
        assert not alg_equal(s0, s1)  # the two square roots of 2
        assert (s0 * s0) == F(2) and (s1 * s1) == F(2)

    def test_conjugate_embedding_collapses_to_monodromy(self):
        bs = puiseux_expand(P("y^2 - 2*x^3"), 3)
        assert len(bs) == 1
        assert bs[0].ramification_index == 2
        c = bs[0].coeff(F(3, 2))
        assert (c * c) == F(2)

    def test_multiplicity_sum(self, reducible_corpus):
        for f in reducible_corpus:
            g, _ = make_y_regular(f)
            bs = puiseux_expand(g, 2)
            assert sum(b.ramification_index for b in bs) == g.degree_in(1)

    def test_truncated_residual_invariant(self):
        f = P("y^2 - x^3 - x^7")
        bs = puiseux_expand(f, 6)
        for b in bs:
            assert not b.exact
            assert b.truncation_order >= 6
            res = poly_on_series(f, b.series(), b.field)
            ob = res.order_bound()
            assert ob is INF or ob >= b.truncation_order

    def test_errors(self):
        with pytest.raises(NotAGerm):
            puiseux_expand(P("y^2 - x^3 + 1"), 2)
        with pytest.raises(NotAGerm):
            puiseux_expand(P("0"), 2)
        with pytest.raises(NotYRegular):
            puiseux_expand(P("x*y^2 - x^3"), 2)  # x divides f
        with pytest.raises(PrecisionOverflow):
            puiseux_expand(P("y^2"), 2)  # not reduced

    def test_branch_ids_deterministic(self):
        a = puiseux_expand(P("(y^2 - x^3)*(y - x)"), 8)
        b = puiseux_expand(P("(y^2 - x^3)*(y - x)"), 8)
        for x, y in zip(a, b):
            assert x.branch_id == y.branch_id
            assert x.terms == y.terms


class TestInvariants:
    def test_multiplicity(self):
        assert branch_multiplicity(puiseux_expand(P("y^2 - x^3"), 2)[0]) == 2
        assert branch_multiplicity(puiseux_expand(P("y - x^2"), 2)[0]) == 1
        assert branch_multiplicity(puiseux_expand(P(QUARTIC), 2)[0]) == 4

    def test_tangent_slope(self):
        assert tangent_slope(puiseux_expand(P("y^2 - x^3"), 2)[0]) == 0
        assert tangent_slope(puiseux_expand(P("y - 5*x"), 2)[0]) == 5
        # branch y = x + 2 x^(3/2) of (y - x)^2 - 4 x^3
        b = puiseux_expand(P("y^2 - 2*x*y + x^2 - 4*x^3"), 3)[0]
        assert b.terms == {F(1): QQ.one, F(3, 2): QQ.from_fraction(2)}
        assert tangent_slope(b) == 1

    def test_characteristic_exponents(self):
        cd = characteristic_exponents(puiseux_expand(P("y^2 - x^3"), 2)[0])
        assert (cd.multiplicity, cd.char_exponents, cd.ladder) == (
            2,
            (F(3, 2),),
            ((3, 2),),
        )
        cd = characteristic_exponents(puiseux_expand(P(QUARTIC), 2)[0])
        assert (cd.multiplicity, cd.char_exponents, cd.ladder) == (
            4,
            (F(3, 2), F(7, 4)),
            ((3, 2), (7, 2)),
        )
        cd = characteristic_exponents(puiseux_expand(P("y - x^2"), 3)[0])
        assert (cd.multiplicity, cd.char_exponents) == (1, ())

    def test_characteristic_insufficient_truncation(self):
        b = PuiseuxBranch(
            branch_id=0,
            ramification_index=4,
            field=QQ,
            terms={F(3, 2): QQ.one},
            truncation_order=F(8, 5),
            exact=False,
        )
        with pytest.raises(InsufficientTruncation):
            characteristic_exponents(b)

    def test_conjugation_closure(self):
        # twisting the quartic branch by any determination leaves the
        # characteristic data unchanged
        b = puiseux_expand(P(QUARTIC), 2)[0]
        from satcurve.puiseux import _twist_table, _twisted_terms

        n = b.ramification_index
        M, hom, zp = _twist_table(b.field, n)
        for k in range(n):
            twisted = PuiseuxBranch(
                branch_id=0,
                ramification_index=n,
                field=M,
                terms=_twisted_terms(b.terms, n, k, hom, zp),
                truncation_order=b.truncation_order,
                exact=b.exact,
            )
            assert characteristic_exponents(twisted) == characteristic_exponents(b)

    def test_x_scale_invariance(self):
        for c in (F(2), F(1, 3), F(-1)):
            scaled = P(QUARTIC).scale_var(0, c)
            cd = characteristic_exponents(puiseux_expand(scaled, 2)[0])
            assert cd.char_exponents == (F(3, 2), F(7, 4))


class TestRestriction:
    def test_spec_examples(self):
        ctx = CurveContext.get(P("y^2 - x^5"))
        b = ctx.branches[0]
        fs = restrict_fraction(P("y"), P("x"), b)
        assert fs.terms == [(F(3, 2), QQ.one)]
        fs = restrict_fraction(P("x"), P("1"), b)
        assert fs.terms == [(F(1), QQ.one)]
        fs = restrict_fraction(P("y^3"), P("x^5"), b)
        assert fs.terms == [(F(5, 2), QQ.one)]

    def test_determination_twist(self):
        ctx = CurveContext.get(P("y^2 - x^3"))
        fs = restrict_fraction(P("y"), P("1"), ctx.branches[0], determination=1)
        (e, c), = fs.terms
        assert e == F(3, 2) and c == F(-1)

    def test_denominator_vanishes(self):
        ctx = CurveContext.get(P("y^2 - x^3"))
        with pytest.raises(DenominatorVanishesOnBranch):
            restrict_fraction(P("x"), P("y^2 - x^3"), ctx.branches[0])

    def test_vanishing_on_one_branch_only(self):
        f = P("(y^2 - x^3)*(y - x)")
        ctx = CurveContext.get(f)
        line = [b for b in ctx.branches if b.terms.get(F(1)) is not None]
        cusp = [b for b in ctx.branches if b.terms.get(F(3, 2)) is not None]
        assert line and cusp
        q = P("y - x")
        assert ctx.vanishes_on_branch(q, line[0].branch_id)
        assert not ctx.vanishes_on_branch(q, cusp[0].branch_id)
        with pytest.raises(DenominatorVanishesOnBranch):
            restrict_fraction(P("x"), q, line[0])
        fs = restrict_fraction(P("x"), q, cusp[0])
        assert fs.order() == F(0)  # x / (x^{3/2} - x) ~ -1 + ...

    def test_escalation_on_truncated_branch(self):
        f = P("y^2 - x^3 - x^7")
        ctx = CurveContext.get(f)
        b = ctx.branches[0]
        # y^2 - x^3 restricts to x^7 exactly; checks the certified
        # escalation path returns the exact order
        fs = restrict_fraction(P("y^2 - x^3"), P("1"), b)
        assert fs.order() == F(7)


class TestEvaluate:
    def test_origin(self):
        b = puiseux_expand(P("y^2 - x^3"), 2)[0]
        x, y = evaluate_branch(b, 0, 0.0)
        assert x == 0 and y == 0

    def test_cusp_values(self):
        b = puiseux_expand(P("y^2 - x^3"), 2)[0]
        x, y = evaluate_branch(b, 0, 0.1)
        assert abs(complex(x) - 0.01) < 1e-15
        assert abs(complex(y) - 0.001) < 1e-15
        x, y = evaluate_branch(b, 1, 0.1)
        assert abs(complex(y) + 0.001) < 1e-15

    def test_radius_guard(self):
        b = puiseux_expand(P("y^2 - x^3"), 2)[0]
        with pytest.raises(RadiusTooLarge):
            evaluate_branch(b, 0, 0.9)


class TestContext:
    def test_ensure_order_keeps_ids(self):
        f = P("(y^2 - x^3)*(y - x)")
        ctx = CurveContext.get(f)
        before = [(b.branch_id, dict(b.terms)) for b in ctx.branches]
        ctx.ensure_order(ctx.order + 10)
        for (bid, terms), b in zip(before, ctx.branches):
            assert b.branch_id == bid
            for e, c in terms.items():
                assert b.terms[e] == c

    def test_restriction_order(self):
        ctx = CurveContext.get(P("y^2 - x^3"))
        assert ctx.restriction_order(P("y"), 0) == F(3, 2)
        assert ctx.restriction_order(P("x^2"), 0) == F(2)
        assert ctx.restriction_order(P("y^2 - x^3"), 0) is INF
