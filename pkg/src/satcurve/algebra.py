"""Input normalization and polynomial-level invariants of a curve germ.

Covers the front half of the pipeline: parsing (re-exported from mpoly),
squarefree reduction, the shear that makes {x=0} transverse to the germ
(so the projection direction is outside the tangent cone), Newton polygons
and the Sylvester resultant in y.  The discriminant order computed here is
the global truncation certificate: every pairwise branch contact exponent
is bounded by ord_x Res_y(f, df/dy).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .errors import NotAGerm, NotYRegular
from .mpoly import MPoly, parse_polynomial, sylvester_resultant

Rat = Fraction
BiPoly = MPoly

_SYMS = sympy.symbols("x y t u v w")


def parse_curve(text: str) -> MPoly:
    return parse_polynomial(text, ("x", "y"))


def parse_family(text: str) -> MPoly:
    return parse_polynomial(text, ("x", "y", "t"))


# ---------------------------------------------------------------------------
# sympy bridge (bivariate/trivariate gcd and factorization only)
# ---------------------------------------------------------------------------


def _to_sympy(p: MPoly):
    syms = _SYMS[: p.nvars]
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            if k:
                term *= s**k
        expr += term
    return expr, syms


def _from_sympy(expr, syms, nvars: int) -> MPoly:
    poly = sympy.Poly(expr, *syms, domain="QQ")
    terms = {}
    for e, c in poly.terms():
        terms[tuple(int(k) for k in e)] = Fraction(int(c.p), int(c.q))
    return MPoly(nvars, terms)


def factor_mpoly(p: MPoly) -> list:
    """Irreducible factors over Q with multiplicities (content dropped)."""
    expr, syms = _to_sympy(p)
    _, factors = sympy.factor_list(expr, *syms)
    out = []
    for fac, mult in factors:
        out.append((_normalize(_from_sympy(fac, syms, p.nvars)), int(mult)))
    out.sort(key=lambda fm: fm[0].key())
    return out


def gcd_mpoly(p: MPoly, q: MPoly) -> MPoly:
    ep, syms = _to_sympy(p)
    eq, _ = _to_sympy(q)
    g = sympy.gcd(sympy.Poly(ep, *syms, domain="QQ"), sympy.Poly(eq, *syms, domain="QQ"))
    return _normalize(_from_sympy(g.as_expr(), syms, p.nvars))


def _normalize(p: MPoly) -> MPoly:
    """Scale so the canonical leading coefficient is 1."""
    if p.is_zero():
        return p
    lead = p.terms[max(p.terms)]
    return p.scale(1 / lead)


def squarefree_part(f: MPoly) -> MPoly:
    """Product of the distinct irreducible factors of f (monic-normalized)."""
    if f.is_zero():
        raise NotAGerm("the zero polynomial has no squarefree part")
    out = MPoly.const(f.nvars, 1)
    for fac, _ in factor_mpoly(f):
        out = out * fac
    return _normalize(out)


def is_reduced(f: MPoly) -> bool:
    return not f.is_zero() and all(m == 1 for _, m in factor_mpoly(f))


# ---------------------------------------------------------------------------
# Germ normalization
# ---------------------------------------------------------------------------


def multiplicity(f: MPoly) -> int:
    """Order of the lowest-degree form at the origin."""
    if f.is_zero():
        raise NotAGerm("zero polynomial")
    return min(sum(e) for e in f.terms)


def _shear_candidates(seed: int):
    def seq():
        yield Fraction(0)
        k = 1
        while True:
            yield Fraction(k)
            yield Fraction(-k)
            k += 1

    it = seq()
    for _ in range(seed):
        next(it)
    return it


def shear_is_admissible(f: MPoly, lam: Fraction) -> bool:
    """Does x -> x + lam*y leave the germ y-regular with constant y-leading coefficient?"""
    g = f.shear(0, 1, lam)
    mu = multiplicity(f)
    if g.coeff((0, mu)) == 0:
        return False  # tangent cone of g still contains {x=0}
    dy = g.degree_in(1)
    lc_terms = [e for e in g.terms if e[1] == dy]
    return lc_terms == [(0, dy)]


def make_y_regular(f: MPoly, seed: int = 0):
    """Shear to (x + lam*y, y) so no branch is tangent to {x=0}; monic in y.

    Tries the deterministic sequence lam = 0, 1, -1, 2, -2, ... starting at
    offset `seed`; both admissibility conditions exclude only finitely many
    values, so the walk terminates for any nonzero germ.
    """
    if f.is_zero():
        raise NotAGerm("zero polynomial is not a germ")
    if f.coeff((0, 0)) != 0:
        raise NotAGerm("f(0,0) != 0")
    cap = 2 * f.total_degree() + 8
    cands = _shear_candidates(seed)
    for _ in range(cap):
        lam = next(cands)
        if shear_is_admissible(f, lam):
            g = f.shear(0, 1, lam)
            lead = g.coeff((0, g.degree_in(1)))
            return g.scale(1 / lead), lam
    raise NotYRegular("no admissible shear found (is f reduced?)")


# ---------------------------------------------------------------------------
# Newton polygon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonEdge:
    slope: Fraction  # gamma = q/p: branches on this edge have order gamma in x
    top: tuple  # lattice endpoint with the larger y-exponent
    bottom: tuple
    p: int
    q: int
    height: int  # number of roots (with multiplicity) of this order
    poly: tuple  # edge polynomial Psi(w), Fraction coefficients, constant first


@dataclass(frozen=True)
class NewtonPolygon:
    edges: tuple


def _lower_hull(points):
    pts = sorted(set(points))
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def germ_edges(support):
    """Down-right edges of the lower hull: (p, q, height, top, bottom)."""
    hull = _lower_hull(support)
    out = []
    for a, b in zip(hull, hull[1:]):
        if b[1] < a[1]:  # strictly falling: positive branch order
            di = b[0] - a[0]
            dj = a[1] - b[1]
            g = gcd(di, dj)
            out.append((dj // g, di // g, g, a, b))
    return out


def newton_polygon(f: MPoly) -> NewtonPolygon:
    if f.is_zero():
        raise NotAGerm("zero polynomial has no Newton polygon")
    edges = []
    for p, q, h, top, bottom in germ_edges(f.support()):
        coeffs = []
        for k in range(h + 1):
            pt = (bottom[0] - k * q, bottom[1] + k * p)
            coeffs.append(f.coeff(pt))
        edges.append(
            NewtonEdge(
                slope=Fraction(q, p),
                top=top,
                bottom=bottom,
                p=p,
                q=q,
                height=h,
                poly=tuple(coeffs),
            )
        )
    edges.sort(key=lambda e: e.slope)
    return NewtonPolygon(edges=tuple(edges))


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------


def resultant_y(f: MPoly, g: MPoly) -> MPoly:
    """Sylvester resultant eliminating y (variable index 1).

    For curves (x, y) the result is univariate in x; for families (x, y, t)
    it is bivariate in (x, t).  The y slot is dropped from the arity.
    """
    r = sylvester_resultant(f.coeffs_in(1), g.coeffs_in(1), f.nvars)
    terms = {e[:1] + e[2:]: c for e, c in r.terms.items()}
    return MPoly(f.nvars - 1, terms)


def discriminant_order(f: MPoly) -> int:
    """d0 = ord_x Res_y(f, df/dy); bounds every pairwise contact exponent."""
    r = resultant_y(f, f.derivative(1))
    if r.is_zero():
        raise NotAGerm("discriminant vanishes identically: f is not reduced")
    return r.order_in(0)
