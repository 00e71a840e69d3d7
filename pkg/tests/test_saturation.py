import random
from fractions import Fraction as F
from math import gcd

import pytest

from satcurve.algebra import make_y_regular, parse_curve
from satcurve.errors import DenominatorVanishesOnBranch, EmptyIdealError
from satcurve.puiseux import CurveContext, puiseux_expand
from satcurve.saturation import (
    _delta_numerator_bound,
    contact_exponents,
    determination_classes,
    integral_closure_member,
    is_bounded_fraction,
    is_lipschitz_fraction,
    profile_shear_stability,
    prop_4_5_expected,
    saturation_profile,
)
from satcurve.series import INF

P = parse_curve

QUARTIC = "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"


class TestDeterminationClasses:
    def test_2_4(self):
        bs = CurveContext.get(P("(y^2 - x^3)*(y^4 - x^5)")).branches
        assert sorted(b.ramification_index for b in bs) == [2, 4]
        assert len(determination_classes(bs[0], bs[1])) == 2

    def test_1_1(self):
        bs = CurveContext.get(P("y^2 - x*y")).branches
        assert len(determination_classes(bs[0], bs[1])) == 1

    def test_6_4(self):
        # expanded directly at low order; class counts need only the branches
        bs = puiseux_expand(P("(y^6 - x^7)*(y^4 - x^5)"), 2)
        assert sorted(b.ramification_index for b in bs) == [4, 6]
        assert len(determination_classes(bs[0], bs[1])) == 2

    def test_gcd_law(self, reducible_corpus):
        for f in reducible_corpus:
            g, _ = make_y_regular(f)
            bs = puiseux_expand(g, 3)
            for i, a in enumerate(bs):
                for b in bs[i + 1 :]:
                    expected = gcd(a.ramification_index, b.ramification_index)
                    assert len(determination_classes(a, b)) == expected


class TestContactExponents:
    def test_parallel_parabolas(self):
        bs = CurveContext.get(P("y^2 - x^4")).branches
        types = contact_exponents(bs[0], bs[1])
        assert len(types) == 1
        assert types[0].exponent == F(2)

    def test_transverse_lines(self):
        bs = CurveContext.get(P("y^2 - x*y")).branches
        types = contact_exponents(bs[0], bs[1])
        assert [t.exponent for t in types] == [F(1)]

    def test_quartic_self_contacts(self):
        bs = CurveContext.get(P(QUARTIC)).branches
        types = contact_exponents(bs[0], bs[0])
        assert [(t.class_rep, t.exponent) for t in types] == [
            (1, F(3, 2)),
            (2, F(7, 4)),
            (3, F(3, 2)),
        ]

    def test_exponent_at_least_one(self, reducible_corpus):
        for f in reducible_corpus:
            g, _ = make_y_regular(f)
            prof = saturation_profile(g)
            for t in prof.types:
                assert t.exponent >= 1
                assert t.mu == t.exponent * t.m


class TestProfile:
    def test_cusp(self):
        assert saturation_profile(P("y^2 - x^3")).distinct_exponents == (F(3, 2),)

    def test_quartic(self):
        assert saturation_profile(P(QUARTIC)).distinct_exponents == (
            F(3, 2),
            F(7, 4),
        )

    def test_three_lines(self):
        prof = saturation_profile(P("y^3 - x^2*y"))
        assert prof.distinct_exponents == (F(1),)
        assert len(prof.types) == 3
        assert not any(t.self_contact for t in prof.types)

    def test_smooth_empty(self):
        assert saturation_profile(P("y - x^2")).types == ()

    def test_per_pair_counts(self):
        f = P("(y^2 - x^3)*(y^4 - x^5)")
        prof = saturation_profile(f)
        counts = prof.per_pair_class_count
        assert counts[(0, 1)] == 2  # gcd(2, 4)
        assert counts[(0, 0)] == 1  # n - 1 self classes of the n=2 branch
        assert counts[(1, 1)] == 3

    def test_irreducible_distinct_self_exponents_are_characteristic(
        self, irreducible_corpus
    ):
        from satcurve.puiseux import characteristic_exponents

        for f, exps in irreducible_corpus:
            g, _ = make_y_regular(f)
            prof = saturation_profile(g)
            assert list(prof.distinct_exponents) == exps
            ctx = CurveContext.get(g)
            cd = characteristic_exponents(ctx.branches[0])
            assert list(cd.char_exponents) == exps

    def test_scale_equivariance(self):
        for c in (F(2), F(1, 2), F(-3)):
            f = P(QUARTIC)
            scaled = f.scale_var(0, c).scale_var(1, c)
            scaled = scaled.scale(1 / scaled.coeff((0, scaled.degree_in(1))))
            assert (
                saturation_profile(scaled).distinct_exponents
                == saturation_profile(f).distinct_exponents
            )

    def test_tangency_vs_exponent_one(self):
        # equality exponent == 1 exactly for distinct tangents
        f = P("(y - x)*(y + x)*(y - x - x^2)")
        prof = saturation_profile(f)
        for t in prof.types:
            a, b = t.branch_pair
            assert t.exponent >= 1
        # the pair tangent to each other (y=x and y=x+x^2) has exponent 2
        assert sorted(t.exponent for t in prof.types) == [F(1), F(1), F(2)]


class TestProp45:
    def test_same_tangent_smooth_pair(self):
        bs = CurveContext.get(P("y^2 - x^4")).branches
        assert prop_4_5_expected(bs[0], bs[1]) == (1, 1)

    def test_transverse_lines(self):
        bs = CurveContext.get(P("y^2 - x*y")).branches
        assert prop_4_5_expected(bs[0], bs[1]) == (1, 1)

    def test_tangent_cusps(self):
        bs = CurveContext.get(P("(y^2 - x^3)*(y^2 - x^5)")).branches
        assert sorted(b.ramification_index for b in bs) == [2, 2]
        assert prop_4_5_expected(bs[0], bs[1]) == (2, 1)

    def test_transverse_cusps(self):
        # second cusp sheared to have tangent y = x: distinct tangents
        f = P("(y^2 - x^3)*((y - x)^2 - x^3)")
        bs = CurveContext.get(f).branches
        assert prop_4_5_expected(bs[0], bs[1]) == (1, 2)


class TestBounded:
    def test_spec_examples(self):
        rep = is_bounded_fraction(P("y"), P("x"), P("y^2 - x^5"))
        assert rep.bounded and rep.per_branch_order == [F(3, 2)]
        rep = is_bounded_fraction(P("1"), P("1"), P("y^2 - x^3"))
        assert rep.bounded and rep.per_branch_order == [F(0)]
        rep = is_bounded_fraction(P("y"), P("x^2"), P("y^2 - x^3"))
        assert not rep.bounded and rep.per_branch_order == [F(-1, 2)]

    def test_zero_numerator(self):
        rep = is_bounded_fraction(P("0"), P("x"), P("y^2 - x^3"))
        assert rep.bounded and rep.per_branch_order == [INF]

    def test_denominator_error(self):
        with pytest.raises(DenominatorVanishesOnBranch):
            is_bounded_fraction(P("x"), P("y^2 - x^3"), P("y^2 - x^3"))


class TestLipschitz:
    def test_bounded_not_lipschitz(self):
        rep = is_lipschitz_fraction(P("y"), P("x"), P("y^2 - x^5"))
        assert rep.verdict == "BoundedNotLipschitz"
        (chk,) = rep.per_type
        assert chk.nu == F(3, 2) and chk.contact.exponent == F(5, 2)

    def test_coordinate_is_lipschitz(self):
        rep = is_lipschitz_fraction(P("x"), P("1"), P("y^2 - x^5"))
        assert rep.verdict == "Lipschitz"
        assert all(c.nu == INF for c in rep.per_type)

    def test_quartic_example(self):
        rep = is_lipschitz_fraction(P("y^2"), P("x^2"), P(QUARTIC))
        assert rep.verdict == "BoundedNotLipschitz"
        k1 = [c for c in rep.per_type if c.contact.class_rep == 1][0]
        assert k1.nu == F(5, 4) and k1.contact.exponent == F(3, 2)

    def test_unbounded(self):
        rep = is_lipschitz_fraction(P("y"), P("x^2"), P("y^2 - x^3"))
        assert rep.verdict == "Unbounded"

    def test_undefined(self):
        rep = is_lipschitz_fraction(P("x"), P("y^2 - x^3"), P("y^2 - x^3"))
        assert rep.verdict == "Undefined"

    def test_nu_equal_mu_passes(self):
        rep = is_lipschitz_fraction(P("y"), P("1"), P("y^2 - x^3"))
        assert rep.verdict == "Lipschitz"
        (chk,) = rep.per_type
        assert chk.nu == chk.contact.exponent == F(3, 2)

    def test_cross_type_infinite_nu(self):
        # h = x is constant on fibers: every cross type sees Delta h = 0
        rep = is_lipschitz_fraction(P("x"), P("1"), P("y^3 - x^2*y"))
        assert rep.verdict == "Lipschitz"
        assert all(c.nu == INF for c in rep.per_type)

    def test_escalation_on_truncated_branches(self):
        # y^2 restricted to y^2 = x^3 + x^7 equals x^3 + x^7 exactly, but the
        # computed series is truncated; the certified bound must still
        # classify Delta(h) = 0 for the integer-exponent part
        f = P("y^2 - x^3 - x^7")
        rep = is_lipschitz_fraction(P("y^2"), P("1"), f)
        assert rep.verdict == "Lipschitz"
        (chk,) = rep.per_type
        assert chk.nu == INF

    def test_delta_bound_is_finite_and_positive(self):
        ctx = CurveContext.get(P("y^2 - x^3"))
        b = _delta_numerator_bound(ctx, P("y"), P("1"))
        assert b >= 3  # the true numerator difference order is 3/2 per pair


class TestIntegralClosure:
    def test_spec_examples(self):
        cusp = P("y^2 - x^3")
        assert integral_closure_member(P("y"), P("1"), [P("x")], cusp).member
        assert integral_closure_member(P("x"), P("1"), [P("x")], cusp).member
        rep = integral_closure_member(P("x"), P("1"), [P("y")], cusp)
        assert not rep.member
        assert rep.per_branch_margin == [F(-1, 2)]

    def test_monotone_in_generators(self):
        cusp = P("y^2 - x^3")
        base = integral_closure_member(P("y"), P("1"), [P("x^2")], cusp)
        bigger = integral_closure_member(P("y"), P("1"), [P("x^2"), P("x")], cusp)
        assert not base.member and bigger.member

    def test_empty_ideal(self):
        with pytest.raises(EmptyIdealError):
            integral_closure_member(P("y"), P("1"), [], P("y^2 - x^3"))
        with pytest.raises(EmptyIdealError):
            integral_closure_member(
                P("x"), P("1"), [P("y^2 - x^3")], P("y^2 - x^3")
            )

    def test_fraction_membership(self):
        # h = y^2/x on the cusp: ord 2 >= ord x = 1
        rep = integral_closure_member(P("y^2"), P("x"), [P("x")], P("y^2 - x^3"))
        assert rep.member and rep.per_branch_margin == [F(1)]


class TestAlgebraProperties:
    CURVES = ["y^2 - x^3", "y^2 - x^5", QUARTIC, "(y^2 - x^3)*(y - x)"]
    FRACTIONS = [
        ("x", "1"),
        ("y", "1"),
        ("x + y", "1"),
        ("y^2", "x"),
        ("x*y", "x"),
        ("y", "x"),
        ("y^2", "x^2"),
    ]

    def test_implication_lattice(self):
        rng = random.Random(7)
        lipschitz_seen = {}
        for _ in range(40):
            ftext = rng.choice(self.CURVES)
            ptext, qtext = rng.choice(self.FRACTIONS)
            f, p, q = P(ftext), P(ptext), P(qtext)
            rep = is_lipschitz_fraction(p, q, f)
            if rep.verdict == "Undefined":
                continue
            bounded = is_bounded_fraction(p, q, f).bounded
            if rep.verdict == "Lipschitz":
                assert bounded
                lipschitz_seen.setdefault(ftext, []).append((p, q))
            if not bounded:
                assert rep.verdict == "Unbounded"
            if q == P("1"):
                assert rep.verdict == "Lipschitz"
        assert lipschitz_seen

    def test_algebra_closure(self):
        f = P(QUARTIC)
        pairs = [(P("y"), P("1")), (P("y^2"), P("x")), (P("x^2 + y"), P("1"))]
        for p1, q1 in pairs:
            assert is_lipschitz_fraction(p1, q1, f).verdict == "Lipschitz"
        for i, (p1, q1) in enumerate(pairs):
            for p2, q2 in pairs[i:]:
                s_num = p1 * q2 + p2 * q1
                s_den = q1 * q2
                m_num = p1 * p2
                assert is_lipschitz_fraction(s_num, s_den, f).verdict == "Lipschitz"
                assert is_lipschitz_fraction(m_num, s_den, f).verdict == "Lipschitz"


class TestShearStability:
    def test_cusp(self):
        out = profile_shear_stability(P("y^2 - x^3"), trials=3, seed=11)
        assert out.stable
        assert out.base_exponents == (F(3, 2),)
        assert all(exps == (F(3, 2),) for _, exps in out.trials)

    def test_two_lines(self):
        out = profile_shear_stability(P("y^2 - x*y"), trials=3, seed=5)
        assert out.stable and out.base_exponents == (F(1),)

    def test_smooth(self):
        out = profile_shear_stability(P("y - x^2"), trials=3, seed=2)
        assert out.stable and out.base_exponents == ()
