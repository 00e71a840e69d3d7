"""Newton-Puiseux expansion with certified adaptive truncation.

The engine walks the classical Newton polygon tree over a growing
coefficient tower: each edge contributes x^(q/p), each edge-polynomial
root may enlarge the field, and once the working root is simple the rest
of the series comes from quadratically convergent Newton lifting.  One
path is expanded per conjugacy class; the class is then unfolded over the
Q-embeddings of its coefficient field and regrouped modulo monodromy, so
the reported branches biject with the geometric branches of the germ and
sum of ramification indices equals the germ multiplicity.

Truncation is certified globally: expanding past d0 = ord_x Res_y(f, f_y)
separates every pair of determinations and closes every characteristic
gcd chain, because d0 is the sum of all pairwise contact orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, floor, gcd

import mpmath

from .algebra import discriminant_order, gcd_mpoly, germ_edges, resultant_y
from .errors import (
    DenominatorVanishesOnBranch,
    InsufficientTruncation,
    NotAGerm,
    NotYRegular,
    PrecisionOverflow,
    RadiusTooLarge,
)
from .mpoly import MPoly
from .numfield import (
    QQ,
    AlgNum,
    FieldHom,
    NumberField,
    alg_equal,
    compositum,
    cyclotomic_field,
    extend_field,
    factor_in_field,
)
from .series import INF, FractionSeries, PSeries, poly_on_series

_MAX_TREE_DEPTH = 400

DEFAULT_VALIDITY_RADIUS = 0.5


# ---------------------------------------------------------------------------
# K-coefficient bivariate polynomials (internal, dict (i, j) -> AlgNum)
# ---------------------------------------------------------------------------


def _lift_bipoly(f: MPoly, K: NumberField) -> dict:
    return {e: K.from_fraction(c) for e, c in f.terms.items()}


def _kp_map(F: dict, hom: FieldHom) -> dict:
    return {e: hom(c) for e, c in F.items()}


def _kp_has_y0_terms(F: dict) -> bool:
    return any(e[1] == 0 for e in F)


def _kp_divide_y(F: dict) -> dict:
    return {(i, j - 1): c for (i, j), c in F.items()}


def _kp_edge_substitute(F: dict, K: NumberField, p: int, q: int, c0: AlgNum) -> dict:
    """F(x^p, x^q * (c0 + y)) / x^D with D the edge valuation (exact)."""
    D = min(p * i + q * j for (i, j) in F)
    out: dict = {}
    c0_pows = [K.one]
    maxj = max(j for (_, j) in F)
    for _ in range(maxj):
        c0_pows.append(c0_pows[-1] * c0)
    for (i, j), c in F.items():
        base = p * i + q * j - D
        for k in range(j + 1):
            key = (base, k)
            v = c * comb(j, k) * c0_pows[j - k]
            s = out.get(key)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def _kpoly_on_series(F: dict, s: PSeries, K: NumberField) -> PSeries:
    dy = max((e[1] for e in F), default=0)
    cols = [dict() for _ in range(dy + 1)]
    for (i, j), c in F.items():
        cols[j][Fraction(i)] = c
    acc = PSeries.zero(K)
    for j in range(dy, -1, -1):
        acc = acc * s + PSeries(K, cols[j], INF)
    return acc


# ---------------------------------------------------------------------------
# The expansion tree
# ---------------------------------------------------------------------------


@dataclass
class _RawBranch:
    field: NumberField
    emb: FieldHom  # from the field the recursion was entered with
    n: int
    terms: dict  # Fraction -> AlgNum, exponents in the current x
    leaf: tuple | None  # (F_leaf dict over `field`, alpha: Fraction, nu: int)


def _expand_raw(F: dict, K: NumberField, depth: int) -> list:
    if depth > _MAX_TREE_DEPTH:
        raise PrecisionOverflow("Newton-Puiseux recursion exceeded the depth cap")
    results = []
    if not _kp_has_y0_terms(F):
        # y divides F exactly once for a reduced germ: the zero series is a root.
        results.append(_RawBranch(K, FieldHom.identity(K), 1, {}, None))
        F = _kp_divide_y(F)
        if not _kp_has_y0_terms(F):
            raise PrecisionOverflow("y^2 divides the germ: input is not reduced")
    support = list(F)
    for p, q, h, _top, bottom in germ_edges(support):
        psi = []
        for k in range(h + 1):
            pt = (bottom[0] - k * q, bottom[1] + k * p)
            psi.append(F.get(pt, K.zero))
        for G, r in factor_in_field(K, psi):
            L1, hom1, w0 = extend_field(K, G)
            if p == 1:
                L2, hom12, c0 = L1, hom1, w0
            else:
                # adjoin a p-th root of w0; the first factor in canonical
                # order keeps rational roots rational.
                rad = [L1.zero] * (p + 1)
                rad[0] = -w0
                rad[p] = L1.one
                H = factor_in_field(L1, rad)[0][0]
                L2, hom2, c0 = extend_field(L1, H)
                hom12 = hom1.then(hom2)
            F2 = _kp_edge_substitute(_kp_map(F, hom12), L2, p, q, c0)
            gamma = Fraction(q, p)
            if r == 1:
                results.append(
                    _RawBranch(L2, hom12, p, {gamma: c0}, (F2, gamma, p))
                )
            else:
                for sub in _expand_raw(F2, L2, depth + 1):
                    c0m = sub.emb(c0)
                    terms = {gamma: c0m}
                    for e, c in sub.terms.items():
                        terms[(q + e) / p] = c
                    leaf = None
                    if sub.leaf is not None:
                        Fl, alpha, nu = sub.leaf
                        leaf = (Fl, (q + alpha) / p, p * nu)
                    results.append(
                        _RawBranch(sub.field, hom12.then(sub.emb), p * sub.n, terms, leaf)
                    )
    return results


def _newton_tail(F: dict, K: NumberField, order: int) -> tuple:
    """Unique root series t (t(0)=0) of a y-regular order-1 germ, to x^order.

    Returns (tail PSeries with prec order+1, exact flag).
    """
    if not _kp_has_y0_terms(F):
        return PSeries.zero(K, INF), True
    Fy = {}
    for (i, j), c in F.items():
        if j:
            Fy[(i, j - 1)] = c * j
    target = order + 1
    t = PSeries.zero(K, prec=Fraction(1))
    cur = 1
    while cur < target:
        cur = min(2 * cur, target)
        tw = PSeries(K, t.terms, Fraction(cur))
        val = _kpoly_on_series(F, tw, K).truncate(Fraction(cur))
        dv = _kpoly_on_series(Fy, tw, K)
        t = (tw - val * dv.inverse(prec=Fraction(cur))).truncate(Fraction(cur))
    exact = False
    t_exact = PSeries(K, t.terms, INF)
    if _kpoly_on_series(F, t_exact, K).is_zero_to_prec():
        exact = True
        t = t_exact
    else:
        t = PSeries(K, t.terms, Fraction(target))
    return t, exact


# ---------------------------------------------------------------------------
# Branches
# ---------------------------------------------------------------------------


@dataclass
class PuiseuxBranch:
    """One irreducible local branch, series in x^(1/ramification_index).

    `terms` hold exact coefficients for every exponent strictly below
    `truncation_order`; `exact` means the series terminates and the stored
    terms are the whole expansion (truncation_order is INF then).
    """

    branch_id: int
    ramification_index: int
    field: NumberField
    terms: dict
    truncation_order: object  # Fraction, or INF when exact
    exact: bool
    _curve: object = dc_field(default=None, repr=False, compare=False)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def coeff(self, e) -> AlgNum:
        return self.terms.get(Fraction(e), self.field.zero)

    def series(self) -> PSeries:
        return PSeries(self.field, self.terms, self.truncation_order)

    def order(self):
        return min(self.terms) if self.terms else INF

    def __repr__(self):
        body = ", ".join(f"x^{e}" for e, _ in self.sorted_terms()[:4])
        return (
            f"PuiseuxBranch(id={self.branch_id}, n={self.ramification_index}, "
            f"terms~[{body}], trunc={self.truncation_order})"
        )


@dataclass(frozen=True)
class CharacteristicData:
    multiplicity: int
    char_exponents: tuple  # increasing Fractions
    ladder: tuple  # ((m_i, n_i), ...) with beta_i = m_i / (n_1...n_i)


def _branch_sort_key(n: int, terms: dict):
    exps = tuple(sorted(terms))
    coeffkeys = []
    for e in exps:
        c = terms[e]
        if c.is_rational():
            coeffkeys.append((0, (), 0, c.c))
        else:
            coeffkeys.append((1, c.field.min_poly, c.field.root_index, c.c))
    return (n, exps, tuple(coeffkeys))


def _assemble(raw: _RawBranch, order: Fraction) -> tuple:
    """(terms, truncation_order, exact) with every exponent <= order covered."""
    terms = dict(raw.terms)
    if raw.leaf is None:
        return terms, INF, True
    Fl, alpha, nu = raw.leaf
    kneed = max(1, floor((order - alpha) * nu) + 1)
    tail, exact = _newton_tail(Fl, raw.field, kneed)
    for k, c in tail.terms.items():
        terms[alpha + k / nu] = c
    if exact:
        return terms, INF, True
    return terms, alpha + Fraction(kneed + 1, nu), False


def _twist_table(field: NumberField, n: int):
    """(M, hom field->M, zeta powers in M) for the n-th roots of unity."""
    if n <= 2:
        zp = [field.one]
        if n == 2:
            zp.append(field.from_fraction(-1))
        return field, FieldHom.identity(field), zp
    Fc, zeta = cyclotomic_field(n)
    M, hF, hC = compositum(field, Fc)
    z = hC(zeta)
    zp = [M.one]
    for _ in range(n - 1):
        zp.append(zp[-1] * z)
    return M, hF, zp


def _twisted_terms(terms: dict, n: int, k: int, hom, zp) -> dict:
    out = {}
    for e, c in terms.items():
        en = e * n
        j = (k * en.numerator) % n
        out[e] = hom(c) * zp[j]
    return out


def _unfold_embeddings(fieldL: NumberField, n: int, terms: dict, trunc, exact) -> list:
    """All geometric branches of one conjugacy class, modulo monodromy."""
    d = fieldL.degree
    if d == 1:
        return [(fieldL, terms)]
    reps = []  # (field_r, terms_r, twist variants for orbit tests)
    for r in range(d):
        Lr = NumberField.get(fieldL.min_poly, r)
        terms_r = {e: AlgNum(Lr, c.c) for e, c in terms.items()}
        in_orbit = False
        for _, _, variants in reps:
            if set(terms_r) != set(variants[0]):
                continue
            for var in variants:
                if all(alg_equal(terms_r[e], var[e]) for e in terms_r):
                    in_orbit = True
                    break
            if in_orbit:
                break
        if in_orbit:
            continue
        M, hom, zp = _twist_table(Lr, n)
        variants = [_twisted_terms(terms_r, n, k, hom, zp) for k in range(n)]
        reps.append((Lr, terms_r, variants))
    return [(fr, tr) for fr, tr, _ in reps]


def puiseux_expand(f: MPoly, order) -> list:
    """All Puiseux branches of the reduced y-regular germ f at the origin.

    Every branch carries exact terms for each exponent <= order (more when
    the series terminates).  Branch ids follow a canonical deterministic
    ordering.
    """
    if f.is_zero() or f.coeff((0, 0)) != 0:
        raise NotAGerm("curve must vanish at the origin")
    if all(e[0] > 0 for e in f.terms):
        raise NotYRegular("x divides f: {x=0} is a component")
    mu = min(j for (i, j) in f.terms if i == 0)
    if mu == 0:
        raise NotAGerm("f(0,0) != 0")
    order = Fraction(order)
    raws = _expand_raw(_lift_bipoly(f, QQ), QQ, 0)
    branches = []
    for raw in raws:
        terms, trunc, exact = _assemble(raw, order)
        for fld, tr in _unfold_embeddings(raw.field, raw.n, terms, trunc, exact):
            branches.append((raw.n, fld, tr, trunc, exact))
    total = sum(b[0] for b in branches)
    if total != mu:
        raise PrecisionOverflow(
            f"branch multiplicities sum to {total}, expected germ multiplicity {mu}"
        )
    branches.sort(key=lambda b: _branch_sort_key(b[0], b[2]))
    out = []
    for bid, (n, fld, terms, trunc, exact) in enumerate(branches):
        out.append(
            PuiseuxBranch(
                branch_id=bid,
                ramification_index=n,
                field=fld,
                terms=terms,
                truncation_order=trunc,
                exact=exact,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Per-branch invariants
# ---------------------------------------------------------------------------


def branch_multiplicity(b: PuiseuxBranch) -> int:
    return b.ramification_index


def tangent_slope(b: PuiseuxBranch) -> AlgNum:
    """Limit slope dy/dx at the origin (an exact algebraic number)."""
    if b.terms and min(b.terms) < 1:
        raise NotYRegular("branch has a vertical tangent; shear the curve first")
    return b.coeff(Fraction(1))


def characteristic_exponents(b: PuiseuxBranch) -> CharacteristicData:
    """The exponents where the ramification gcd chain drops, with the ladder."""
    n = b.ramification_index
    g = n
    betas = []
    ladder = []
    prev_prod = 1
    for e in sorted(b.terms):
        if g == 1:
            break
        en = e * n
        g2 = gcd(g, en.numerator)
        if g2 < g:
            g = g2
            betas.append(e)
            prod = n // g  # n_1 * ... * n_i
            ladder.append((int(e * prod), prod // prev_prod))
            prev_prod = prod
    if g != 1:
        if b.exact:
            raise PrecisionOverflow("ramification index inconsistent with exponents")
        raise InsufficientTruncation(
            "gcd chain not closed at this truncation; expand further"
        )
    return CharacteristicData(
        multiplicity=n, char_exponents=tuple(betas), ladder=tuple(ladder)
    )


def evaluate_branch(
    b: PuiseuxBranch,
    determination: int,
    s: complex,
    precision: int = 128,
    validity_radius: float = DEFAULT_VALIDITY_RADIUS,
):
    """Numeric point (x, y) = (s^n, sum c_e (zeta^k s)^(e*n)) at `precision` bits."""
    if abs(s) > validity_radius:
        raise RadiusTooLarge(f"|s|={abs(s)} exceeds validity radius {validity_radius}")
    n = b.ramification_index
    with mpmath.workprec(precision + 30):
        zs = mpmath.expjpi(mpmath.mpf(2 * (determination % n)) / n) * mpmath.mpc(s)
        x = mpmath.mpc(s) ** n
        y = mpmath.mpc(0)
        for e, c in b.terms.items():
            en = e * n
            y += algnum_to_mpc(c, precision + 30) * zs ** int(en)
        return x, y


def algnum_to_mpc(a: AlgNum, prec_bits: int):
    """mpmath complex value of an exact algebraic number."""
    if a.is_rational():
        v = a.c[0]
        return mpmath.mpf(v.numerator) / v.denominator
    re, im = a.field.gen_approx(Fraction(1, 2 ** (prec_bits + 10)))
    g = mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator,
                   mpmath.mpf(im.numerator) / im.denominator)
    acc = mpmath.mpc(0)
    for coeff in reversed(a.c):
        acc = acc * g + mpmath.mpf(coeff.numerator) / coeff.denominator
    return acc


# ---------------------------------------------------------------------------
# Curve context: cached expansions with certified escalation
# ---------------------------------------------------------------------------

_CTX_REGISTRY: dict = {}


class CurveContext:
    """Everything derived from one prepared (reduced, y-regular) curve.

    Owns the branch list, the discriminant bound d0, and certified
    restriction machinery.  Branch identities are pinned by the first
    expansion; escalating the order rematches by prefix so ids are stable.
    """

    def __init__(self, f: MPoly):
        self.f = f
        self.d0 = discriminant_order(f)
        self.base_order = Fraction(self.d0 + 1)
        self._order = self.base_order
        self._branches = puiseux_expand(f, self.base_order)
        for b in self._branches:
            b._curve = self
        self._split_cache: dict = {}
        self._vanish_cache: dict = {}

    @staticmethod
    def get(f: MPoly) -> "CurveContext":
        ctx = _CTX_REGISTRY.get(f.key())
        if ctx is None:
            ctx = CurveContext(f)
            _CTX_REGISTRY[f.key()] = ctx
        return ctx

    @property
    def branches(self) -> list:
        return self._branches

    @property
    def order(self) -> Fraction:
        return self._order

    def degree_y(self) -> int:
        return sum(b.ramification_index for b in self._branches)

    def ensure_order(self, order):
        order = Fraction(order)
        if order <= self._order:
            return
        fresh = puiseux_expand(self.f, order)
        used = [False] * len(fresh)
        rematched = []
        for old in self._branches:
            match_idx = None
            for i, nb in enumerate(fresh):
                if used[i] or nb.ramification_index != old.ramification_index:
                    continue
                cutoff = old.truncation_order
                prefix = {e: c for e, c in nb.terms.items() if e < cutoff}
                if set(prefix) != set(old.terms):
                    continue
                if all(alg_equal(prefix[e], old.terms[e]) for e in prefix):
                    match_idx = i
                    break
            if match_idx is None:
                raise PrecisionOverflow("branch rematch failed after re-expansion")
            used[match_idx] = True
            nb = fresh[match_idx]
            nb.branch_id = old.branch_id
            nb._curve = self
            rematched.append(nb)
        rematched.sort(key=lambda b: b.branch_id)
        self._branches = rematched
        self._order = order

    # -- certified restriction machinery ------------------------------------

    def _split(self, poly: MPoly):
        """gcd split of f against poly: (g, cofactor, membership_bound)."""
        key = poly.key()
        hit = self._split_cache.get(key)
        if hit is not None:
            return hit
        g = gcd_mpoly(self.f, poly)
        if g.total_degree() <= 0:
            result = (None, None, None)
        else:
            h2 = self.f.exact_div(g)
            r = resultant_y(g, h2)
            result = (g, h2, Fraction(r.order_in(0)))
        self._split_cache[key] = result
        return result

    def vanishes_on_branch(self, poly: MPoly, branch_id: int) -> bool:
        """Exact decision: does poly restrict to zero on the branch?"""
        if poly.is_zero():
            return True
        key = (poly.key(), branch_id)
        hit = self._vanish_cache.get(key)
        if hit is not None:
            return hit
        b = self._branches[branch_id]
        if b.exact:
            s = poly_on_series(poly, b.series(), b.field)
            result = s.is_zero_to_prec()
        else:
            g, _h2, bound = self._split(poly)
            if g is None:
                result = False
            else:
                self.ensure_order(bound + 1)
                b = self._branches[branch_id]
                s = poly_on_series(g, b.series(), b.field)
                ob = s.order_bound()
                result = ob == INF or ob > bound
        self._vanish_cache[key] = result
        return result

    def restriction_order(self, poly: MPoly, branch_id: int):
        """ord_x of poly restricted to the branch; INF when it vanishes."""
        if self.vanishes_on_branch(poly, branch_id):
            return INF
        b = self._branches[branch_id]
        s = poly_on_series(poly, b.series(), b.field)
        o = s.order()
        if o is not None:
            return o
        # certified escalation: the order is bounded by the resultant order
        # of poly against the part of f not sharing a component with it.
        g, h2, _ = self._split(poly)
        base = self.f if g is None else h2
        bound = Fraction(resultant_y(base, poly).order_in(0))
        self.ensure_order(bound + 1)
        b = self._branches[branch_id]
        s = poly_on_series(poly, b.series(), b.field)
        o = s.order()
        if o is None:
            raise PrecisionOverflow("restriction order not found below its bound")
        return o

    def poly_on_branch(self, poly: MPoly, branch_id: int, min_prec=None) -> PSeries:
        if min_prec is not None:
            self.ensure_order(min_prec)
        b = self._branches[branch_id]
        return poly_on_series(poly, b.series(), b.field)

    def fraction_on_branch(self, p: MPoly, q: MPoly, branch_id: int, prec=None) -> PSeries:
        """Restriction of p/q on the untwisted determination of the branch.

        The result carries exact terms below `prec` (default: the context's
        current expansion order); branch expansions escalate as needed.
        """
        if self.vanishes_on_branch(q, branch_id):
            raise DenominatorVanishesOnBranch(branch_id)
        if self.vanishes_on_branch(p, branch_id):
            b = self._branches[branch_id]
            return PSeries.zero(b.field, INF)
        oq = self.restriction_order(q, branch_id)
        op = self.restriction_order(p, branch_id)
        if prec is None:
            # cover the leading term and roughly d0 beyond it
            prec = max(self._order - 2 * oq + min(oq, op), op - oq + 1)
        prec = Fraction(prec)
        # U/V keeps exact terms below P - 2*oq + min(oq, op) for inputs at P
        needed = prec + 2 * oq - min(oq, op)
        needed = max(needed, oq + 1, op + 1)
        b = self._branches[branch_id]
        if not b.exact:
            self.ensure_order(needed)
            b = self._branches[branch_id]
        s = b.series().truncate(needed)
        U = poly_on_series(p, s, b.field)
        V = poly_on_series(q, s, b.field)
        return (U * V.inverse()).truncate(prec)


def restrict_fraction(p: MPoly, q: MPoly, b: PuiseuxBranch, determination: int = 0) -> FractionSeries:
    """Series of p/q along one determination of a branch.

    The branch must come from a CurveContext-backed expansion (any branch
    produced by the public pipeline is), so denominator vanishing is decided
    exactly rather than guessed from the truncation.
    """
    ctx = b._curve
    if ctx is None:
        raise ValueError("branch is not attached to a curve context")
    H = ctx.fraction_on_branch(p, q, b.branch_id)
    k = determination % b.ramification_index
    if k:
        n = b.ramification_index
        M, hom, zp = _twist_table(H.field, n)
        H = PSeries(M, _twisted_terms(H.terms, n, k, hom, zp), H.prec)
    return FractionSeries.from_pseries(H)
