"""Exact algebraic-number arithmetic over dynamically grown number fields.

Every irrational coefficient in a Puiseux expansion lives in some
NumberField Q(theta): theta is pinned down by a monic irreducible minimal
polynomial over Q together with a certified isolating rectangle (one
distinguished complex root).  Elements are Q-polynomial vectors in theta,
so equality and zero tests are exact.  Growing the tower (adjoining an
edge-polynomial root, a p-th root, or a root of unity) goes through
resultant composition, factorization over Q, and isolating-box refinement:
the primitive-element loop below.

Univariate factorization over Q is delegated to sympy; factorization over
an extension uses Trager's norm descent on top of it.  Root isolation and
refinement ride on sympy's CRootOf, which hands out exact rational
rectangles.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy import CRootOf
from sympy import Poly as SymPoly
from sympy import Rational as SymRational
from sympy import Symbol

from .errors import PrecisionOverflow
from .intervals import Box, eval_poly_box
from .mpoly import MPoly, sylvester_resultant
from .upoly import (
    padd,
    pdeg,
    pdivmod,
    peval,
    pgcd,
    pmonic,
    pmul,
    pshift,
    ptrim,
    yun_squarefree,
)

_T = Symbol("_satcurve_t")

_REFINE_CAP = 512


# ---------------------------------------------------------------------------
# Rational <-> sympy glue
# ---------------------------------------------------------------------------


def _to_sympoly(coeffs) -> SymPoly:
    return SymPoly(
        [SymRational(c.numerator, c.denominator) for c in reversed(coeffs)],
        _T,
        domain="QQ",
    )


def _from_sympoly(poly) -> tuple:
    cs = poly.all_coeffs()
    return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(cs))


def factor_rational_poly(coeffs) -> list:
    """Monic irreducible factors over Q with multiplicities, canonically sorted."""
    _, factors = _to_sympoly(list(coeffs)).factor_list()
    out = []
    for fac, mult in factors:
        fc = list(_from_sympoly(fac))
        lead = fc[-1]
        out.append((tuple(c / lead for c in fc), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def _sym_interval_to_box(iv, is_real: bool) -> Box:
    if is_real:
        a = Fraction(iv.a.numerator, iv.a.denominator)
        b = Fraction(iv.b.numerator, iv.b.denominator)
        return Box(a, b, Fraction(0), Fraction(0))
    return Box(
        Fraction(iv.ax.numerator, iv.ax.denominator),
        Fraction(iv.bx.numerator, iv.bx.denominator),
        Fraction(iv.ay.numerator, iv.ay.denominator),
        Fraction(iv.by.numerator, iv.by.denominator),
    )


class _RootHandle:
    """Refinable certified box around one root of an exact Q-polynomial.

    CRootOf may hand back a rescaled root (c * CRootOf(g, j) after
    coefficient preprocessing); the scale is tracked exactly so boxes and
    rational approximations always describe the requested root.
    """

    def __init__(self, min_poly: tuple, index: int):
        expr = CRootOf(_to_sympoly(min_poly).as_expr(), index, radicals=False)
        coeff, root = expr.as_coeff_Mul()
        if not isinstance(root, sympy.polys.rootoftools.ComplexRootOf):
            raise PrecisionOverflow(f"unexpected root normal form: {expr}")
        self.scale = Fraction(int(coeff.p), int(coeff.q))
        self.root = root
        self._iv = self.root._get_interval()
        self.is_real = bool(self.root.is_real)

    def box(self) -> Box:
        raw = _sym_interval_to_box(self._iv, self.is_real)
        if self.scale == 1:
            return raw
        return raw.scale(self.scale)

    def refine(self):
        self._iv = self._iv.refine()

    def approx(self, tol: Fraction):
        """Rational (re, im) within tol of the root's complex value."""
        inner = tol / abs(self.scale)
        t = SymRational(inner.numerator, inner.denominator)
        val = self.root.eval_rational(dx=t, dy=t)
        re, im = val.as_real_imag()
        return (
            self.scale * Fraction(int(re.p), int(re.q)),
            self.scale * Fraction(int(im.p), int(im.q)),
        )


# ---------------------------------------------------------------------------
# Number fields and their elements
# ---------------------------------------------------------------------------

_FIELD_CACHE: dict = {}


class NumberField:
    """Q(theta) for theta the `root_index`-th root (CRootOf order) of min_poly."""

    __slots__ = (
        "min_poly",
        "degree",
        "root_index",
        "_handle",
        "_red",
        "zero",
        "one",
        "_gen",
        "_approx",
    )

    def __init__(self, min_poly: tuple, root_index: int):
        self.min_poly = min_poly
        self.degree = len(min_poly) - 1
        self.root_index = root_index
        if self.degree > 1:
            self._handle = _RootHandle(min_poly, root_index)
        else:
            self._handle = None
        # reduction table: T^(degree+i) mod min_poly for i = 0..degree-2
        d = self.degree
        red = []
        cur = [-c for c in min_poly[:-1]]  # T^d
        red.append(tuple(cur))
        for _ in range(d - 2):
            cur = [Fraction(0)] + cur
            if len(cur) > d:
                top = cur.pop()
                cur = [a + top * b for a, b in zip(cur, red[0])]
            red.append(tuple(cur))
        self._red = red
        self.zero = AlgNum(self, (Fraction(0),) * d)
        self.one = AlgNum(self, ((Fraction(1),) + (Fraction(0),) * (d - 1)))
        if d > 1:
            gen = [Fraction(0)] * d
            gen[1] = Fraction(1)
            self._gen = AlgNum(self, tuple(gen))
        else:
            self._gen = self.zero
        self._approx = None

    @staticmethod
    def get(min_poly, root_index: int) -> "NumberField":
        min_poly = tuple(Fraction(c) for c in min_poly)
        key = (min_poly, root_index)
        fld = _FIELD_CACHE.get(key)
        if fld is None:
            fld = NumberField(min_poly, root_index)
            _FIELD_CACHE[key] = fld
        return fld

    def is_rationals(self) -> bool:
        return self.degree == 1

    def gen(self) -> "AlgNum":
        return self._gen

    def from_fraction(self, q) -> "AlgNum":
        q = Fraction(q)
        return AlgNum(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def elem(self, coeffs) -> "AlgNum":
        coeffs = list(Fraction(c) for c in coeffs)
        if len(coeffs) > self.degree:
            coeffs = self._reduce(coeffs)
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return AlgNum(self, tuple(coeffs))

    def _reduce(self, coeffs: list) -> list:
        d = self.degree
        if len(coeffs) > 2 * d - 1 or (d == 1 and len(coeffs) > 1):
            _, rem = pdivmod(ptrim(list(coeffs)), list(self.min_poly), Fraction(0))
            coeffs = rem
        out = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for i, c in enumerate(coeffs[d:]):
            if c == 0:
                continue
            for j, r in enumerate(self._red[i]):
                out[j] += c * r
        return out

    # -- numerics ----------------------------------------------------------

    def gen_box(self) -> Box:
        if self.degree == 1:
            return Box.point(Fraction(0))
        return self._handle.box()

    def refine_gen(self):
        if self._handle is not None:
            self._handle.refine()

    def elem_box(self, a: "AlgNum", max_width: Fraction) -> Box:
        """Certified rectangle around the complex value of `a`."""
        if self.degree == 1:
            return Box.point(a.c[0])
        coeffs = list(a.c)
        for _ in range(_REFINE_CAP):
            b = eval_poly_box(coeffs, self.gen_box())
            if b.width() <= max_width:
                return b
            self.refine_gen()
        raise PrecisionOverflow("isolating-box refinement did not converge")

    def gen_approx(self, tol: Fraction):
        """Rational (re, im) within tol of the generator's complex value."""
        if self.degree == 1:
            return Fraction(0), Fraction(0)
        if self._approx is not None and self._approx[0] <= tol:
            return self._approx[1]
        out = self._handle.approx(tol)
        self._approx = (tol, out)
        return out

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        return f"NumberField(deg={self.degree}, idx={self.root_index})"


class AlgNum:
    """An exact algebraic number: a Q-vector in the powers of its field generator."""

    __slots__ = ("field", "c", "_mp")

    def __init__(self, field: NumberField, c: tuple):
        self.field = field
        self.c = c
        self._mp = None

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.c)

    def is_rational(self) -> bool:
        return all(v == 0 for v in self.c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational value")
        return self.c[0]

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgNum):
            if other.field is self.field:
                return other
            if other.is_rational():
                return self.field.from_fraction(other.c[0])
            if self.is_rational():
                # handled by caller symmetrically
                raise _FieldMismatch(self, other)
            raise _FieldMismatch(self, other)
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNum(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return AlgNum(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgNum(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.degree == 1:
            return AlgNum(f, (self.c[0] * o.c[0],))
        prod = [Fraction(0)] * (2 * f.degree - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                if b:
                    prod[i + j] += a * b
        return AlgNum(f, tuple(f._reduce(prod)))

    __rmul__ = __mul__

    def inv(self) -> "AlgNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero algebraic number")
        f = self.field
        if f.degree == 1:
            return AlgNum(f, (1 / self.c[0],))
        # extended Euclid over Q: u * self + v * min_poly = 1
        a = ptrim(list(self.c))
        b = list(f.min_poly)
        s0, s1 = [Fraction(1)], []
        while b:
            q, r = pdivmod(a, b, Fraction(0))
            a, b = b, r
            s0, s1 = s1, padd(s0, [-c for c in pmul(q, s1, Fraction(0))])
        lead = a[-1]  # gcd is a nonzero constant since min_poly is irreducible
        u = [c / lead for c in s0]
        return f.elem(u)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- equality ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            if other.field is self.field:
                return self.c == other.c
            if self.is_rational() and other.is_rational():
                return self.c[0] == other.c[0]
            if self.is_rational() != other.is_rational():
                return False
            raise _FieldMismatch(self, other)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((id(self.field), self.c))

    # -- derived exact data ----------------------------------------------------

    def min_poly(self) -> tuple:
        """Monic irreducible minimal polynomial over Q of this value."""
        if self._mp is None:
            self._mp = _algnum_min_poly(self)
        return self._mp

    def isolating_box(self) -> Box:
        """A rectangle containing this value and no other root of min_poly()."""
        mp = self.min_poly()
        if len(mp) == 2:
            return Box.point(-mp[0])
        idx = identify_root_index(mp, lambda w: self.field.elem_box(self, w))
        return _RootHandle(mp, idx).box()

    def __repr__(self):
        if self.is_rational():
            return f"AlgNum({self.c[0]})"
        return f"AlgNum({list(self.c)} in {self.field!r})"


QQ = NumberField.get((Fraction(0), Fraction(1)), 0)


class _FieldMismatch(TypeError):
    def __init__(self, a, b):
        super().__init__(
            f"cannot mix elements of {a.field!r} and {b.field!r} without an embedding"
        )


class FieldHom:
    """Field embedding src -> dst determined by the image of the generator."""

    __slots__ = ("src", "dst", "powers")

    def __init__(self, src: NumberField, dst: NumberField, gen_image: AlgNum):
        self.src = src
        self.dst = dst
        powers = [dst.one]
        for _ in range(src.degree - 1):
            powers.append(powers[-1] * gen_image)
        self.powers = powers

    @staticmethod
    def identity(K: NumberField) -> "FieldHom":
        return FieldHom(K, K, K.gen())

    def __call__(self, a: AlgNum) -> AlgNum:
        if a.field is not self.src:
            if a.is_rational():
                return self.dst.from_fraction(a.c[0])
            raise ValueError("element not in the source field")
        acc = self.dst.zero
        for coeff, pw in zip(a.c, self.powers):
            if coeff:
                acc = acc + pw * coeff
        return acc

    def then(self, second: "FieldHom") -> "FieldHom":
        if self.dst is not second.src:
            raise ValueError("homomorphisms do not compose")
        return FieldHom(self.src, second.dst, second(self.powers[1] if self.src.degree > 1 else self.dst.zero))


# ---------------------------------------------------------------------------
# Root identification
# ---------------------------------------------------------------------------


def identify_root_index(poly: tuple, value_box_fn) -> int:
    """Index (CRootOf order) of the root of `poly` equal to the given value.

    `value_box_fn(width)` must return a certified Box around a value that is
    exactly a root of `poly`.  Decidable: boxes of distinct roots separate
    under refinement, and the true root is never excluded.
    """
    deg = len(poly) - 1
    handles = [_RootHandle(poly, i) for i in range(deg)]
    width = Fraction(1, 4)
    for _ in range(_REFINE_CAP):
        vb = value_box_fn(width)
        alive = [i for i, h in enumerate(handles) if not h.box().disjoint(vb)]
        if len(alive) == 1:
            return alive[0]
        for i in alive:
            handles[i].refine()
        width /= 16
    raise PrecisionOverflow("root identification did not converge")


def alg_equal(a: AlgNum, b: AlgNum) -> bool:
    """Exact equality of two algebraic numbers from possibly different fields."""
    if a.field is b.field:
        return a.c == b.c
    if a.is_rational() or b.is_rational():
        return a.is_rational() and b.is_rational() and a.c[0] == b.c[0]
    mpa = a.min_poly()
    if mpa != b.min_poly():
        return False
    ia = identify_root_index(mpa, lambda w: a.field.elem_box(a, w))
    ib = identify_root_index(mpa, lambda w: b.field.elem_box(b, w))
    return ia == ib


def algnum_sort_key(a: AlgNum):
    """Deterministic total-order key; equal values get equal keys."""
    if a.is_rational():
        return (0, (), (a.c[0], Fraction(0)))
    mp = a.min_poly()
    idx = identify_root_index(mp, lambda w: a.field.elem_box(a, w))
    return (1, (len(mp),) + mp, (Fraction(idx), Fraction(0)))


def _algnum_min_poly(a: AlgNum) -> tuple:
    K = a.field
    if a.is_rational():
        return (-a.c[0], Fraction(1))
    # C(T) = Res_z(min_poly(z), T - a(z)) vanishes at every conjugate of a.
    mz = MPoly(2, {(i, 0): c for i, c in enumerate(K.min_poly) if c != 0})
    az = MPoly(2, {(i, 0): -c for i, c in enumerate(a.c) if c != 0})
    tz = az + MPoly.variable(2, 1)
    C = sylvester_resultant(mz.coeffs_in(0), tz.coeffs_in(0), 2)
    cpoly = [Fraction(0)] * (C.degree_in(1) + 1)
    for e, c in C.terms.items():
        cpoly[e[1]] = c
    factors = [f for f, _ in factor_rational_poly(ptrim(cpoly))]
    if len(factors) == 1:
        return factors[0]
    # pick the factor vanishing at a by certified interval exclusion
    width = Fraction(1, 16)
    for _ in range(_REFINE_CAP):
        vb = K.elem_box(a, width)
        alive = [f for f in factors if eval_poly_box(list(f), vb).contains_zero()]
        if len(alive) == 1:
            return alive[0]
        width /= 16
    raise PrecisionOverflow("minimal-polynomial identification did not converge")


# ---------------------------------------------------------------------------
# Factorization over an extension (Trager's norm descent)
# ---------------------------------------------------------------------------


def factor_in_field(K: NumberField, p: list) -> list:
    """Monic irreducible factors over K with multiplicities; p: list[AlgNum]."""
    p = pmonic(ptrim(list(p)))
    if pdeg(p) <= 0:
        raise ValueError("cannot factor a constant")
    out = []
    for sqf, mult in yun_squarefree(p, K.zero):
        for fac in _factor_squarefree(K, sqf):
            out.append((fac, mult))
    out.sort(key=lambda fm: len(fm[0]))
    return out


def _factor_squarefree(K: NumberField, p: list) -> list:
    if pdeg(p) == 1:
        return [p]
    if K.is_rationals():
        rp = [c.as_fraction() for c in p]
        out = []
        for fac, mult in factor_rational_poly(rp):
            assert mult == 1
            out.append([K.from_fraction(c) for c in fac])
        return out
    d = pdeg(p)
    for s in _shift_sequence():
        norm = _norm_poly(K, p, s)
        g = pgcd(norm, [c * i for i, c in enumerate(norm)][1:], Fraction(0))
        if pdeg(ptrim(g)) > 0:
            continue  # norm not squarefree; bad shift
        qfactors = factor_rational_poly(tuple(norm))
        if len(qfactors) == 1:
            return [p]
        out = []
        theta_s = K.gen() * Fraction(s)
        total = 0
        for fac, _ in qfactors:
            lifted = [K.from_fraction(c) for c in fac]
            shifted = pshift(lifted, theta_s, K.zero, K.one)
            g = pgcd(p, shifted, K.zero)
            if pdeg(g) > 0:
                out.append(pmonic(g))
                total += pdeg(g)
        if total != d:
            raise PrecisionOverflow("norm descent lost factors")
        return out
    raise PrecisionOverflow("no squarefree norm shift found")


def _shift_sequence():
    yield 0
    k = 1
    while k <= 64:
        yield k
        yield -k
        k += 1


def _norm_poly(K: NumberField, p: list, s: int) -> list:
    """Res_z(min_poly(z), p^(z)(T - s z)) as a Fraction list in T."""
    mz = MPoly(2, {(i, 0): c for i, c in enumerate(K.min_poly) if c != 0})
    lin = MPoly(2, {(0, 1): Fraction(1), (1, 0): Fraction(-s)})  # T - s z
    acc = MPoly.zero(2)
    for j in range(pdeg(p), -1, -1):
        cj = MPoly(2, {(i, 0): c for i, c in enumerate(p[j].c) if c != 0})
        acc = acc * lin + cj
    res = sylvester_resultant(mz.coeffs_in(0), acc.coeffs_in(0), 2)
    out = [Fraction(0)] * (res.degree_in(1) + 1)
    for e, c in res.terms.items():
        out[e[1]] = c
    return pmonic(ptrim(out))


# ---------------------------------------------------------------------------
# Field extension and compositum
# ---------------------------------------------------------------------------


def extend_field(K: NumberField, G: list, target=None):
    """Adjoin a root of the irreducible G in K[T].

    Returns (L, hom K->L, c0) with c0 a root of G.  When `target` is given
    as (min_poly tuple, root_index), the chosen root must equal that exact
    value (used to build coherent composita); otherwise the canonical root
    (smallest viable CRootOf index) is chosen.
    """
    if pdeg(G) == 1:
        c0 = -G[0] / G[1]
        if target is not None and not _matches_target(c0, target):
            raise PrecisionOverflow("linear factor does not match the target root")
        return K, FieldHom.identity(K), c0
    if K.is_rationals():
        mp = tuple(c.as_fraction() for c in pmonic(G))
        indices = range(len(mp) - 1)
        if target is not None:
            tmp, tidx = target
            if tmp != mp:
                # G's root set is a subset of the target's conjugates only
                # when the polynomials agree; otherwise locate by value.
                idx = _locate_target_index(mp, target)
                indices = [idx] if idx is not None else []
            else:
                indices = [tidx]
        for idx in indices:
            L = NumberField.get(mp, idx)
            c0 = L.gen()
            if target is None or _matches_target(c0, target):
                return L, FieldHom(QQ, L, L.zero), c0
        raise PrecisionOverflow("no root of the factor matches the target")
    return _extend_relative(K, G, target)


def _matches_target(c0: AlgNum, target) -> bool:
    tmp, tidx = target
    if c0.is_rational():
        return len(tmp) == 2 and tmp[0] == -c0.c[0]
    if c0.min_poly() != tmp:
        return False
    idx = identify_root_index(tmp, lambda w: c0.field.elem_box(c0, w))
    return idx == tidx


def _locate_target_index(mp: tuple, target):
    tmp, tidx = target
    if tmp == mp:
        return tidx
    return None


def _extend_relative(K: NumberField, G: list, target=None):
    dK = K.degree
    dG = pdeg(G)
    want_deg = dK * dG
    for t in _primitive_shifts():
        R = _norm_poly(K, G, t)
        dR = pdeg(R)
        if dR != want_deg:
            continue
        g = pgcd(R, [c * i for i, c in enumerate(R)][1:], Fraction(0))
        if pdeg(ptrim(g)) > 0:
            continue
        for M, _ in factor_rational_poly(tuple(R)):
            if len(M) - 1 != want_deg:
                continue
            for idx in range(want_deg):
                L = NumberField.get(M, idx)
                gamma = L.gen()
                theta = _theta_in_extension(K, G, L, gamma, t)
                if theta is None:
                    continue
                hom = FieldHom(K, L, theta)
                c0 = (gamma - theta) * Fraction(1, t) if t else gamma
                # exactness check: c0 must be a root of G mapped into L
                gl = [hom(c) for c in G]
                if not peval(gl, c0, L.zero).is_zero():
                    continue
                if not _embedding_coherent(K, L, theta):
                    continue
                if target is not None and not _matches_target(c0, target):
                    continue
                return L, hom, c0
    raise PrecisionOverflow("primitive-element search failed")


def _primitive_shifts():
    k = 1
    while k <= 64:
        yield k
        yield -k
        k += 1


def _theta_in_extension(K, G, L, gamma, t):
    """Solve for the image of K's generator inside L = Q(gamma), gamma = theta + t*c0."""
    # P(z) = G^(z)(gamma - t z) in L[z]; gcd with min_poly_K(z) should be linear.
    lin = [gamma, L.from_fraction(-t)]
    acc: list = []
    for j in range(pdeg(G), -1, -1):
        cz = [L.from_fraction(c) for c in G[j].c]
        acc = padd(pmul(acc, lin, L.zero), cz)
    mkl = [L.from_fraction(c) for c in K.min_poly]
    g = pgcd(mkl, ptrim(acc), L.zero)
    if pdeg(g) != 1:
        return None
    return -g[0] / g[1]


def _embedding_coherent(K: NumberField, L: NumberField, theta: AlgNum) -> bool:
    """Does theta (in L) equal K's distinguished root, not some conjugate?"""
    idx = identify_root_index(K.min_poly, lambda w: L.elem_box(theta, w))
    return idx == K.root_index


_COMPOSITUM_CACHE: dict = {}


def compositum(K1: NumberField, K2: NumberField):
    """Smallest common field: returns (L, hom K1->L, hom K2->L)."""
    if K1 is K2:
        h = FieldHom.identity(K1)
        return K1, h, h
    if K1.is_rationals():
        return K2, FieldHom(QQ, K2, K2.zero), FieldHom.identity(K2)
    if K2.is_rationals():
        return K1, FieldHom.identity(K1), FieldHom(QQ, K1, K1.zero)
    key = (K1.min_poly, K1.root_index, K2.min_poly, K2.root_index)
    hit = _COMPOSITUM_CACHE.get(key)
    if hit is not None:
        return hit
    m2 = [K1.from_fraction(c) for c in K2.min_poly]
    target = (K2.min_poly, K2.root_index)
    last_err = None
    for G, _ in factor_in_field(K1, m2):
        try:
            L, hom1, c0 = extend_field(K1, G, target=target)
        except PrecisionOverflow as e:
            last_err = e
            continue
        hom2 = FieldHom(K2, L, c0)
        result = (L, hom1, hom2)
        _COMPOSITUM_CACHE[key] = result
        return result
    raise last_err or PrecisionOverflow("no factor of the compositum matched")


# ---------------------------------------------------------------------------
# Cyclotomic fields
# ---------------------------------------------------------------------------

_CYCLO_CACHE: dict = {}


def cyclotomic_min_poly(m: int) -> tuple:
    if m in _CYCLO_CACHE:
        return _CYCLO_CACHE[m]
    # x^m - 1 divided by all lower cyclotomics
    poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            q, r = pdivmod(poly, list(cyclotomic_min_poly(d)), Fraction(0))
            assert not r
            poly = q
    result = tuple(poly)
    _CYCLO_CACHE[m] = result
    return result


def cyclotomic_field(m: int):
    """(field, zeta) with zeta = exp(2*pi*i/m) as an exact element."""
    if m <= 1:
        return QQ, QQ.one
    if m == 2:
        return QQ, QQ.from_fraction(-1)
    mp = cyclotomic_min_poly(m)
    import mpmath

    with mpmath.workprec(200):
        z = mpmath.expjpi(mpmath.mpf(2) / m)
        re = Fraction(int(mpmath.floor(z.real * 2**150)), 2**150)
        im = Fraction(int(mpmath.floor(z.imag * 2**150)), 2**150)
    err = Fraction(1, 2**120)
    point = Box(re - err, re + err, im - err, im + err)
    deg = len(mp) - 1
    handles = [_RootHandle(mp, i) for i in range(deg)]
    for _ in range(_REFINE_CAP):
        alive = [i for i, h in enumerate(handles) if not h.box().disjoint(point)]
        if len(alive) == 1:
            fld = NumberField.get(mp, alive[0])
            return fld, fld.gen()
        for i in alive:
            handles[i].refine()
    raise PrecisionOverflow("could not identify the principal root of unity")
