"""Contact types, saturation profiles, and the three membership oracles.

A contact type pairs two branch determinations modulo simultaneous
monodromy; its exponent mu/m is the x-order of the difference of the two
y-series on the common 1/m grid.  A fraction h is Lipschitz exactly when,
for every type, the difference of the two determinations of h vanishes at
least to the order of the type: nu(tau) >= mu(tau).  Boundedness is the
valuative criterion branch by branch, and membership in the integral
closure of an ideal compares h's valuations against the generators'.

Escalation discipline: a missing term below a certified bound is a proof
of vanishing, so every infinity reported here is exact, never a guess.
The bound for "Delta h vanishes identically" comes from a secondary
resultant: the product of the numerator differences over all root pairs.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .algebra import make_y_regular, shear_is_admissible, squarefree_part
from .errors import (
    DenominatorVanishesOnBranch,
    EmptyIdealError,
    InsufficientTruncation,
    NotYRegular,
    PrecisionOverflow,
)
from .mpoly import MPoly
from .numfield import alg_equal, compositum
from .puiseux import (
    CurveContext,
    PuiseuxBranch,
    _twist_table,
    _twisted_terms,
    tangent_slope,
)
from .series import INF, PSeries

_ESCALATION_SLACK = Fraction(2)


# ---------------------------------------------------------------------------
# Data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactType:
    branch_pair: tuple  # (alpha, alpha') with alpha <= alpha'
    class_rep: int  # determination offset k of the second branch
    m: int  # lcm of the two ramification indices
    mu: int  # contact order on the 1/m grid
    exponent: Fraction  # mu / m
    self_contact: bool


@dataclass(frozen=True)
class DeterminationClass:
    branch_pair: tuple
    offset: int  # representative pair (det 0 on the first, det k on the second)


@dataclass
class SaturationProfile:
    curve_hash: str
    types: tuple
    distinct_exponents: tuple
    per_pair_class_count: dict

    def exponent_multiset(self) -> tuple:
        return tuple(sorted(t.exponent for t in self.types))


@dataclass
class TypeCheck:
    contact: ContactType
    nu: object  # Fraction, or INF when Delta h vanishes identically
    passed: bool


@dataclass
class BoundednessReport:
    per_branch_order: list  # Fraction or INF per branch id
    bounded: bool


@dataclass
class LipschitzReport:
    fraction: tuple  # (p, q)
    verdict: str  # Lipschitz | BoundedNotLipschitz | Unbounded | Undefined
    per_type: list  # [TypeCheck]
    boundedness: list  # per-branch orders (None where undefined)


@dataclass
class IdealMembership:
    member: bool
    per_branch_margin: list  # ord(h) - min_i ord(g_i), INF-aware
    generator_orders: list  # per branch: list of generator orders


def curve_hash(f: MPoly) -> str:
    text = f.to_string(("x", "y", "t")[: f.nvars])
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Contact types
# ---------------------------------------------------------------------------


def determination_classes(a: PuiseuxBranch, b: PuiseuxBranch) -> list:
    """The gcd(n_a, n_b) classes of determination pairs modulo monodromy."""
    if a.branch_id == b.branch_id:
        raise ValueError("use contact_exponents for self-contacts")
    g = gcd(a.ramification_index, b.ramification_index)
    pair = (min(a.branch_id, b.branch_id), max(a.branch_id, b.branch_id))
    return [DeterminationClass(branch_pair=pair, offset=k) for k in range(g)]


def _self_types(a: PuiseuxBranch) -> list:
    n = a.ramification_index
    out = []
    for k in range(1, n):
        exps = [
            e
            for e in a.terms
            if (k * (e * n).numerator) % n != 0
        ]
        if not exps:
            raise InsufficientTruncation(
                f"self-contact order for offset {k} not visible at this truncation"
            )
        e0 = min(exps)
        mu = e0 * n
        out.append(
            ContactType(
                branch_pair=(a.branch_id, a.branch_id),
                class_rep=k,
                m=n,
                mu=mu.numerator,
                exponent=e0,
                self_contact=True,
            )
        )
    return out


def _cross_types(a: PuiseuxBranch, b: PuiseuxBranch) -> list:
    na, nb = a.ramification_index, b.ramification_index
    m = lcm(na, nb)
    g = gcd(na, nb)
    # common field containing both coefficient fields and the m-th roots of unity
    C, hA, hB = compositum(a.field, b.field)
    M, hC, zp = _twist_table(C, m)

    def into_M(branch, hom):
        return {e: hC(hom(c)) for e, c in branch.terms.items()}

    ta = into_M(a, hA)
    tb = into_M(b, hB)
    prec = min(a.truncation_order, b.truncation_order)
    Sa = PSeries(M, ta, prec)
    out = []
    for k in range(g):
        tbk = _twisted_terms(tb, m, k, lambda c: c, zp)
        delta = PSeries(M, tbk, prec) - Sa
        e0 = delta.order()
        if e0 is None:
            raise InsufficientTruncation(
                "cross-contact order not visible below the discriminant bound"
            )
        mu = e0 * m
        if mu.denominator != 1:
            raise PrecisionOverflow("contact order off the 1/m grid")
        pair = (min(a.branch_id, b.branch_id), max(a.branch_id, b.branch_id))
        out.append(
            ContactType(
                branch_pair=pair,
                class_rep=k,
                m=m,
                mu=mu.numerator,
                exponent=e0,
                self_contact=False,
            )
        )
    return out


def contact_exponents(a: PuiseuxBranch, b: PuiseuxBranch) -> list:
    """One ContactType per determination class of the (possibly equal) pair."""
    if a.branch_id == b.branch_id:
        return _self_types(a)
    return _cross_types(a, b)


def saturation_profile(f: MPoly) -> SaturationProfile:
    """All nontrivial contact types of the reduced y-regular germ f."""
    ctx = CurveContext.get(f)
    cached = ctx._split_cache.get("profile")
    if cached is not None:
        return cached
    branches = ctx.branches
    types = []
    counts = {}
    for a in branches:
        if a.ramification_index > 1:
            st = _self_types(a)
            types.extend(st)
            counts[(a.branch_id, a.branch_id)] = a.ramification_index - 1
    for i, a in enumerate(branches):
        for b in branches[i + 1 :]:
            ct = _cross_types(a, b)
            types.extend(ct)
            counts[(a.branch_id, b.branch_id)] = len(ct)
    types.sort(key=lambda t: (t.branch_pair, t.class_rep))
    distinct = tuple(sorted({t.exponent for t in types}))
    prof = SaturationProfile(
        curve_hash=curve_hash(f),
        types=tuple(types),
        distinct_exponents=distinct,
        per_pair_class_count=counts,
    )
    ctx._split_cache["profile"] = prof
    return prof


def prop_4_5_expected(a: PuiseuxBranch, b: PuiseuxBranch) -> tuple:
    """(number of types, covering degree) for a branch pair by tangent position."""
    g = gcd(a.ramification_index, b.ramification_index)
    if a.branch_id != b.branch_id and len(determination_classes(a, b)) != g:
        raise PrecisionOverflow("class count disagrees with gcd")
    same = alg_equal(tangent_slope(a), tangent_slope(b))
    return (g, 1) if same else (1, g)


# ---------------------------------------------------------------------------
# Membership oracles
# ---------------------------------------------------------------------------


def is_bounded_fraction(p: MPoly, q: MPoly, f: MPoly) -> BoundednessReport:
    """Valuative membership in the normalization: h bounded iff ord >= 0 on every branch."""
    ctx = CurveContext.get(f)
    orders = []
    for b in ctx.branches:
        if ctx.vanishes_on_branch(q, b.branch_id):
            raise DenominatorVanishesOnBranch(b.branch_id)
        op = ctx.restriction_order(p, b.branch_id)
        if op == INF:
            orders.append(INF)
            continue
        oq = ctx.restriction_order(q, b.branch_id)
        orders.append(op - oq)
    return BoundednessReport(
        per_branch_order=orders, bounded=all(o == INF or o >= 0 for o in orders)
    )


def _delta_numerator_bound(ctx: CurveContext, p: MPoly, q: MPoly) -> Fraction:
    """Certified bound: if W = p(x,u)q(x,v) - p(x,v)q(x,u) does not vanish on a
    pair of determinations of f, its x-order is at most this value.

    W restricted to any pair of roots of f is a root of the resultant
    D(x, w) = Res_v(Res_u(w - W, f(x,u)), f(x,v)).  Every such restriction
    has nonnegative order, so a nonzero one is bounded by the x-order of
    D's trailing w-coefficient, hence by deg_x D.  The Sylvester degree
    bound for deg_x D needs only the input degrees, so no resultant is
    actually expanded.
    """
    key = ("deltabound", p.key(), q.key())
    hit = ctx._split_cache.get(key)
    if hit is not None:
        return hit
    e_f = max(ctx.f.degree_in(0), 0)
    d_f = max(ctx.f.degree_in(1), 1)
    d_P = max(p.degree_in(1), q.degree_in(1), 0)
    e_P = max(p.degree_in(0), 0) + max(q.degree_in(0), 0)
    deg_x_R1 = d_P * e_f + d_f * e_P
    deg_v_R1 = d_f * d_P
    bound = Fraction(deg_v_R1 * e_f + d_f * deg_x_R1)
    ctx._split_cache[key] = bound
    return bound


def _fraction_with_prec(ctx, p, q, bid, prec):
    return ctx.fraction_on_branch(p, q, bid, prec=prec)


def _self_nu(ctx, p, q, t: ContactType):
    """nu for a self type: first exponent of h's restriction the twist moves."""
    bid = t.branch_pair[0]
    n = t.m
    k = t.class_rep
    H = ctx.fraction_on_branch(p, q, bid)
    for attempt in range(2):
        for e in sorted(H.terms):
            if (k * (e * n).numerator) % n != 0:
                return e
        if H.is_exact():
            return INF
        if attempt == 0:
            oq = ctx.restriction_order(q, bid)
            bound = _delta_numerator_bound(ctx, p, q) - 2 * oq
            if H.prec > bound:
                return INF
            H = ctx.fraction_on_branch(p, q, bid, prec=bound + _ESCALATION_SLACK)
    return INF


def _cross_nu(ctx, p, q, t: ContactType):
    a = ctx.branches[t.branch_pair[0]]
    b = ctx.branches[t.branch_pair[1]]
    m = t.m
    k = t.class_rep

    def build(prec=None):
        Ha = ctx.fraction_on_branch(p, q, a.branch_id, prec=prec)
        Hb = ctx.fraction_on_branch(p, q, b.branch_id, prec=prec)
        C, hA, hB = compositum(Ha.field, Hb.field)
        M, hC, zp = _twist_table(C, m)
        ta = {e: hC(hA(c)) for e, c in Ha.terms.items()}
        tb = {e: hC(hB(c)) for e, c in Hb.terms.items()}
        tbk = _twisted_terms(tb, m, k, lambda c: c, zp)
        prec_eff = min(Ha.prec, Hb.prec)
        return PSeries(M, tbk, prec_eff) - PSeries(M, ta, prec_eff)

    delta = build()
    o = delta.order()
    if o is not None:
        return o
    if delta.is_exact():
        return INF
    oqa = ctx.restriction_order(q, a.branch_id)
    oqb = ctx.restriction_order(q, b.branch_id)
    bound = _delta_numerator_bound(ctx, p, q) - oqa - oqb
    if delta.prec > bound:
        return INF
    delta = build(prec=bound + _ESCALATION_SLACK)
    o = delta.order()
    return INF if o is None else o


def is_lipschitz_fraction(p: MPoly, q: MPoly, f: MPoly) -> LipschitzReport:
    """Decide membership in the Lipschitz saturation by the per-type order test."""
    ctx = CurveContext.get(f)
    undefined = [
        b.branch_id for b in ctx.branches if ctx.vanishes_on_branch(q, b.branch_id)
    ]
    if undefined:
        bounds = [
            None if b.branch_id in undefined else _h_order(ctx, p, q, b.branch_id)
            for b in ctx.branches
        ]
        return LipschitzReport(
            fraction=(p, q), verdict="Undefined", per_type=[], boundedness=bounds
        )
    orders = [_h_order(ctx, p, q, b.branch_id) for b in ctx.branches]
    profile = saturation_profile(f)
    checks = []
    for t in profile.types:
        nu = _self_nu(ctx, p, q, t) if t.self_contact else _cross_nu(ctx, p, q, t)
        checks.append(TypeCheck(contact=t, nu=nu, passed=nu == INF or nu >= t.exponent))
    bounded = all(o == INF or o >= 0 for o in orders)
    if not bounded:
        verdict = "Unbounded"
    elif all(c.passed for c in checks):
        verdict = "Lipschitz"
    else:
        verdict = "BoundedNotLipschitz"
    return LipschitzReport(
        fraction=(p, q), verdict=verdict, per_type=checks, boundedness=orders
    )


def _h_order(ctx, p, q, bid):
    op = ctx.restriction_order(p, bid)
    if op == INF:
        return INF
    return op - ctx.restriction_order(q, bid)


def integral_closure_member(
    p: MPoly, q: MPoly, generators: list, f: MPoly
) -> IdealMembership:
    """Valuative test: h in the integral closure of (g_1, ..., g_r) iff
    ord(h) >= min_i ord(g_i) on every branch."""
    if not generators:
        raise EmptyIdealError("no generators given")
    ctx = CurveContext.get(f)
    margins = []
    gen_orders = []
    member = True
    for b in ctx.branches:
        bid = b.branch_id
        if ctx.vanishes_on_branch(q, bid):
            raise DenominatorVanishesOnBranch(bid)
        gords = [ctx.restriction_order(g, bid) for g in generators]
        gen_orders.append(gords)
        gmin = min(gords)
        if gmin == INF:
            raise EmptyIdealError(
                f"all generators vanish identically on branch {bid}"
            )
        oh = _h_order(ctx, p, q, bid)
        if oh == INF:
            margins.append(INF)
            continue
        margins.append(oh - gmin)
        if oh < gmin:
            member = False
    return IdealMembership(
        member=member, per_branch_margin=margins, generator_orders=gen_orders
    )


# ---------------------------------------------------------------------------
# Shear stability
# ---------------------------------------------------------------------------


@dataclass
class ShearStability:
    stable: bool
    base_exponents: tuple
    trials: list  # [(lambda, distinct_exponents)]


def profile_shear_stability(f: MPoly, trials: int, seed: int) -> ShearStability:
    """Recompute the profile under random non-tangent shears; exact comparison.

    Inadmissible shear values (tangent-cone directions, vanishing leading
    coefficient) are skipped, never sampled into the trial set.
    """
    base_g, _ = make_y_regular(f, 0)
    base = saturation_profile(base_g).distinct_exponents
    rng = random.Random(seed)
    out = []
    stable = True
    attempts = 0
    while len(out) < trials:
        attempts += 1
        if attempts > 40 * max(trials, 1):
            raise PrecisionOverflow("could not sample enough admissible shears")
        lam = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        if rng.random() < 0.5:
            lam = -lam
        if not shear_is_admissible(f, lam):
            continue
        g = f.shear(0, 1, lam)
        g = g.scale(1 / g.coeff((0, g.degree_in(1))))
        exps = saturation_profile(g).distinct_exponents
        out.append((lam, exps))
        if exps != base:
            stable = False
    return ShearStability(stable=stable, base_exponents=base, trials=out)
