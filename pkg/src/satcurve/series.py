"""Truncation-aware Puiseux series over a number field.

A PSeries stores finitely many exact terms below an explicit precision
`prec`: exponents are Fractions (negative allowed for fraction
restrictions), coefficients are AlgNum values in one fixed field.  Every
operation propagates `prec` conservatively, so a term present below the
precision of a result is a theorem, and an absent one is a certificate of
vanishing below that exponent.  prec == INF marks an exactly known series
(finite Puiseux polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientTruncation
from .numfield import AlgNum, NumberField

INF = float("inf")


class PSeries:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, field: NumberField, terms: dict, prec):
        self.field = field
        if prec != INF:
            terms = {e: c for e, c in terms.items() if e < prec}
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.prec = prec

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(field: NumberField, prec=INF) -> "PSeries":
        return PSeries(field, {}, prec)

    @staticmethod
    def monomial(field: NumberField, coeff: AlgNum, exp, prec=INF) -> "PSeries":
        return PSeries(field, {Fraction(exp): coeff}, prec)

    @staticmethod
    def constant(field: NumberField, value) -> "PSeries":
        c = value if isinstance(value, AlgNum) else field.from_fraction(value)
        return PSeries(field, {Fraction(0): c}, INF)

    # -- structure -----------------------------------------------------------

    def order(self):
        """Exact order if a term is known, else None (zero below prec)."""
        if self.terms:
            return min(self.terms)
        return None

    def order_bound(self):
        """A certified lower bound for the order as a Fraction/INF."""
        if self.terms:
            return min(self.terms)
        return self.prec

    def is_zero_to_prec(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.prec == INF

    def sorted_terms(self):
        return sorted(self.terms.items())

    def coeff(self, e) -> AlgNum:
        return self.terms.get(Fraction(e), self.field.zero)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "PSeries") -> "PSeries":
        prec = min(self.prec, other.prec)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return PSeries(self.field, terms, prec)

    def __neg__(self) -> "PSeries":
        return PSeries(self.field, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other: "PSeries") -> "PSeries":
        return self + (-other)

    def __mul__(self, other: "PSeries") -> "PSeries":
        prec = min(self.prec + other.order_bound(), other.prec + self.order_bound())
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= prec:
                    continue
                v = c1 * c2
                s = terms.get(e)
                s = v if s is None else s + v
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return PSeries(self.field, terms, prec)

    def scale(self, c: AlgNum) -> "PSeries":
        if c.is_zero():
            return PSeries(self.field, {}, self.prec)
        return PSeries(self.field, {e: c * v for e, v in self.terms.items()}, self.prec)

    def shift(self, coeff: AlgNum, exp) -> "PSeries":
        """Multiply by the exact monomial coeff * x^exp."""
        exp = Fraction(exp)
        if coeff.is_zero():
            return PSeries(self.field, {}, INF)
        return PSeries(
            self.field,
            {e + exp: coeff * c for e, c in self.terms.items()},
            self.prec + exp,
        )

    def pow_int(self, k: int) -> "PSeries":
        if k < 0:
            return self.inverse().pow_int(-k)
        result = PSeries.constant(self.field, self.field.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self, prec=None) -> "PSeries":
        """1/self.  For an exact non-monomial series a target `prec` is required."""
        o = self.order()
        if o is None:
            raise InsufficientTruncation(
                "cannot invert a series with no known leading term"
            )
        c0 = self.terms[o]
        inv_c0 = c0.inv()
        # self = c0 x^o (1 + w)
        w = self.shift(inv_c0, -o) - PSeries.constant(self.field, self.field.one)
        if w.is_zero_to_prec() and w.is_exact():
            return PSeries.monomial(self.field, inv_c0, -o, INF)
        if self.prec == INF:
            if prec is None:
                raise InsufficientTruncation(
                    "inverse of an exact non-monomial series needs a target precision"
                )
            out_prec = Fraction(prec)
        else:
            out_prec = self.prec - 2 * o
            if prec is not None:
                out_prec = min(out_prec, Fraction(prec))
        inner = out_prec + o  # precision needed for (1 + w)^-1
        w = w.truncate(inner)
        acc = PSeries.constant(self.field, self.field.one)
        term = acc
        while not term.is_zero_to_prec():
            term = (term * (-w)).truncate(inner)
            ob = term.order_bound()
            if ob != INF and ob >= inner:
                break
            acc = acc + term
        return acc.shift(inv_c0, -o).truncate(out_prec)

    def truncate(self, prec) -> "PSeries":
        if prec >= self.prec:
            return self
        return PSeries(self.field, self.terms, prec)

    def map_coeffs(self, fn, new_field: NumberField) -> "PSeries":
        return PSeries(new_field, {e: fn(c) for e, c in self.terms.items()}, self.prec)

    def twist(self, k: int, n: int, zeta_powers: list) -> "PSeries":
        """Apply the determination x^(1/n) -> zeta^k x^(1/n).

        zeta_powers[j] must be the exact j-th power of a primitive n-th root
        of unity in this series' field.  Exponents must lie on the 1/n grid.
        """
        terms = {}
        for e, c in self.terms.items():
            en = e * n
            if en.denominator != 1:
                raise ValueError(f"exponent {e} not on the 1/{n} grid")
            j = (k * en.numerator) % n
            terms[e] = c * zeta_powers[j]
        return PSeries(self.field, terms, self.prec)

    def __repr__(self):
        body = " + ".join(f"({c!r})x^{e}" for e, c in self.sorted_terms())
        return f"PSeries[{body or '0'}; prec={self.prec}]"


def poly_on_series(poly, s: PSeries, field: NumberField, lift=None) -> PSeries:
    """Evaluate a bivariate MPoly at (x, s(x)) as a PSeries.

    `lift` maps Fraction coefficients into `field` (defaults to
    field.from_fraction).  Uses Horner in y so exact x-parts stay exact.
    """
    if lift is None:
        lift = field.from_fraction
    dy = poly.degree_in(1) if not poly.is_zero() else 0
    cols = [dict() for _ in range(dy + 1)]
    for (i, j), c in poly.terms.items():
        cols[j][Fraction(i)] = lift(c)
    acc = PSeries.zero(field)
    for j in range(dy, -1, -1):
        acc = acc * s + PSeries(field, cols[j], INF)
    return acc


@dataclass
class FractionSeries:
    """Public snapshot of a restricted fraction on one branch determination."""

    terms: list  # sorted [(Fraction exponent, AlgNum coefficient)]
    truncation_order: object  # Fraction or INF
    identically_zero_up_to_truncation: bool

    @staticmethod
    def from_pseries(s: PSeries) -> "FractionSeries":
        return FractionSeries(
            terms=s.sorted_terms(),
            truncation_order=s.prec,
            identically_zero_up_to_truncation=s.is_zero_to_prec(),
        )

    def order(self):
        return self.terms[0][0] if self.terms else None
