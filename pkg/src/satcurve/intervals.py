"""Exact complex rectangle arithmetic.

Rectangles have Fraction corners, so every containment / disjointness test
is a certificate, not an approximation.  Used to identify which root of an
exact polynomial an algebraic number is, never for invariant values
themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _iv_neg(a):
    return (-a[1], -a[0])


def _iv_mul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned rectangle in the complex plane."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @staticmethod
    def point(re: Fraction, im: Fraction = Fraction(0)) -> "Box":
        return Box(re, re, im, im)

    @property
    def re(self):
        return (self.re_lo, self.re_hi)

    @property
    def im(self):
        return (self.im_lo, self.im_hi)

    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def center(self):
        return (
            (self.re_lo + self.re_hi) / 2,
            (self.im_lo + self.im_hi) / 2,
        )

    def contains_zero(self) -> bool:
        return (
            self.re_lo <= 0 <= self.re_hi and self.im_lo <= 0 <= self.im_hi
        )

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def contains_box(self, other: "Box") -> bool:
        return (
            self.re_lo <= other.re_lo
            and other.re_hi <= self.re_hi
            and self.im_lo <= other.im_lo
            and other.im_hi <= self.im_hi
        )

    def disjoint(self, other: "Box") -> bool:
        return (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )

    def __add__(self, other: "Box") -> "Box":
        re = _iv_add(self.re, other.re)
        im = _iv_add(self.im, other.im)
        return Box(re[0], re[1], im[0], im[1])

    def __neg__(self) -> "Box":
        re = _iv_neg(self.re)
        im = _iv_neg(self.im)
        return Box(re[0], re[1], im[0], im[1])

    def __sub__(self, other: "Box") -> "Box":
        return self + (-other)

    def __mul__(self, other: "Box") -> "Box":
        # (a+bi)(c+di) = (ac - bd) + (ad + bc)i, each via interval products.
        ac = _iv_mul(self.re, other.re)
        bd = _iv_mul(self.im, other.im)
        ad = _iv_mul(self.re, other.im)
        bc = _iv_mul(self.im, other.re)
        re = _iv_add(ac, _iv_neg(bd))
        im = _iv_add(ad, bc)
        return Box(re[0], re[1], im[0], im[1])

    def scale(self, c: Fraction) -> "Box":
        return self * Box.point(c)


def eval_poly_box(coeffs, box: Box) -> Box:
    """Evaluate a polynomial with Fraction coefficients at a Box by Horner."""
    acc = Box.point(Fraction(0))
    for c in reversed(coeffs):
        acc = acc * box + Box.point(Fraction(c))
    return acc
