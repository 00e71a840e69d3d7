"""Equisaturation of one-parameter deformations f(x, y; t).

The checker combines two exact signals: per-fiber saturation profiles
(compared as multisets of rationals, no tolerance) and the structure of
the reduced discriminant D(x, t) near the origin.  A profile mismatch is
a proof of non-equisaturation with a witness fiber.  Conversely the
certificate for a trivial ramification locus is ord_x G(x, 0) <= 1, where
G collects the irreducible factors of D through the origin: order one
forces a single analytic section x = c(t) by the implicit function
theorem, and order >= 2 means at least two tracked discriminant roots
collide at t = 0, which is incompatible with a product structure.
Anything the samples cannot settle is downgraded to Inconclusive, never
guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import factor_mpoly, make_y_regular, resultant_y, squarefree_part
from .errors import FiberNotReduced, NotAGerm
from .mpoly import MPoly
from .saturation import saturation_profile
from .upoly import ptrim, yun_squarefree


@dataclass
class FamilyCurve:
    """A trivariate germ, monic in y, singular section along the t-axis."""

    poly: MPoly  # variables (x, y, t)
    t_values: tuple  # sampled parameter values, must contain 0

    def __post_init__(self):
        if self.poly.nvars != 3:
            raise ValueError("family polynomial must be trivariate in (x, y, t)")
        self.t_values = tuple(Fraction(t) for t in self.t_values)
        if Fraction(0) not in self.t_values:
            raise ValueError("t samples must include 0")
        d = self.poly.degree_in(1)
        lc_terms = [e for e in self.poly.terms if e[1] == d]
        if lc_terms != [(0, d, 0)] or self.poly.coeff((0, d, 0)) != 1:
            raise ValueError("family polynomial must be monic in y")
        for t in self.t_values:
            if self.poly.eval_all((Fraction(0), Fraction(0), t)) != 0:
                raise NotAGerm(f"fiber at t={t} does not pass through the origin")

    def fiber(self, t) -> MPoly:
        return self.poly.specialize(2, Fraction(t))


@dataclass
class FiberRecord:
    t: Fraction
    distinct_exponents: tuple
    exponent_multiset: tuple
    root_multiplicity_pattern: tuple


@dataclass
class EquisatReport:
    discriminant: MPoly  # raw Res_y(F, dF/dy) in (x, t)
    reduced_discriminant: MPoly
    per_t: list  # [FiberRecord]
    verdict: str  # Equisaturated | NotEquisaturated | Inconclusive
    witness_t: object  # Fraction or None
    origin_section_order: int  # ord_x G(x, 0); 0 when no factor passes the origin


def family_discriminant(F: FamilyCurve) -> MPoly:
    """Squarefree part of Res_y(F, dF/dy), a bivariate polynomial in (x, t)."""
    raw = resultant_y(F.poly, F.poly.derivative(1))
    return squarefree_part(raw)


def _origin_factors(d_red: MPoly) -> MPoly:
    g = MPoly.const(2, 1)
    for fac, _ in factor_mpoly(d_red):
        if fac.eval_all((Fraction(0), Fraction(0))) == 0:
            g = g * fac
    return g


def _root_pattern(univ: MPoly) -> tuple:
    """Multiset of complex-root multiplicities of a univariate MPoly."""
    if univ.degree_in(0) <= 0:
        return ()
    coeffs = [Fraction(0)] * (univ.degree_in(0) + 1)
    for e, c in univ.terms.items():
        coeffs[e[0]] = c
    pattern = []
    for fac, mult in yun_squarefree(ptrim(coeffs), Fraction(0)):
        pattern.extend([mult] * (len(fac) - 1))
    return tuple(sorted(pattern))


def equisaturation_check(F: FamilyCurve) -> EquisatReport:
    raw = resultant_y(F.poly, F.poly.derivative(1))
    ts = tuple(sorted(F.t_values))
    # per-fiber profiles; reducedness is a precondition on every sample
    records = {}
    for t in ts:
        fiber = F.fiber(t)
        if fiber.is_zero():
            raise FiberNotReduced(t)
        for _, mult in factor_mpoly(fiber):
            if mult > 1:
                raise FiberNotReduced(t)
        g, _ = make_y_regular(fiber, 0)
        prof = saturation_profile(g)
        records[t] = (prof.distinct_exponents, prof.exponent_multiset())
    d_red = squarefree_part(raw)
    G = _origin_factors(d_red)
    per_t = []
    for t in ts:
        pattern = _root_pattern(G.specialize(1, t))
        per_t.append(
            FiberRecord(
                t=t,
                distinct_exponents=records[t][0],
                exponent_multiset=records[t][1],
                root_multiplicity_pattern=pattern,
            )
        )
    base = records[Fraction(0)][1]
    witness = None
    for t in ts:
        if records[t][1] != base:
            witness = t
            break
    if G.total_degree() == 0:
        k = 0
    else:
        g0 = G.specialize(1, Fraction(0))
        k = g0.order_in(0)
    if witness is not None:
        verdict = "NotEquisaturated"
    elif k >= 2:
        # at least two tracked discriminant roots meet at t = 0
        verdict = "NotEquisaturated"
        witness = Fraction(0)
    else:
        base_pattern = per_t[ts.index(Fraction(0))].root_multiplicity_pattern
        doubts = any(
            r.root_multiplicity_pattern != base_pattern
            or any(m > 1 for m in r.root_multiplicity_pattern)
            for r in per_t
        )
        verdict = "Inconclusive" if doubts else "Equisaturated"
    return EquisatReport(
        discriminant=raw,
        reduced_discriminant=d_red,
        per_t=per_t,
        verdict=verdict,
        witness_t=witness,
        origin_section_order=int(k),
    )
