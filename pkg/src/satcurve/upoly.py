"""Dense univariate polynomial helpers, generic over the coefficient field.

Polynomials are plain lists, constant term first, with no trailing zeros
(the zero polynomial is the empty list).  Coefficients may be Fractions or
AlgNum values; everything here only uses +, -, *, /, == 0 so both work.
Keeping these as free functions avoids committing the algebraic-number
layer to one coefficient representation.
"""

from __future__ import annotations


def ptrim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def pdeg(p: list) -> int:
    return len(p) - 1


def padd(p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return ptrim(out)


def pneg(p: list) -> list:
    return [-c for c in p]


def psub(p: list, q: list) -> list:
    return padd(p, pneg(q))


def pmul(p: list, q: list, zero) -> list:
    if not p or not q:
        return []
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return ptrim(out)


def pscale(p: list, c) -> list:
    if c == 0:
        return []
    return [a * c for a in p]


def pdivmod(p: list, q: list, zero) -> tuple:
    """Division with remainder; the leading coefficient of q must be invertible."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = pdeg(q)
    lead = q[-1]
    quo = [zero] * max(len(p) - dq, 0)
    while pdeg(ptrim(rem)) >= dq and rem:
        dr = pdeg(rem)
        c = rem[-1] / lead
        quo[dr - dq] = c
        for i, b in enumerate(q):
            rem[dr - dq + i] = rem[dr - dq + i] - c * b
        rem.pop()
        ptrim(rem)
    return ptrim(quo), ptrim(rem)


def pmonic(p: list) -> list:
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def pgcd(p: list, q: list, zero) -> list:
    a, b = list(p), list(q)
    while b:
        _, r = pdivmod(a, b, zero)
        a, b = b, r
    return pmonic(a)


def pderiv(p: list) -> list:
    return ptrim([c * i for i, c in enumerate(p)][1:])


def peval(p: list, v, zero):
    acc = zero
    for c in reversed(p):
        acc = acc * v + c
    return acc


def pshift(p: list, c, zero, one) -> list:
    """Taylor shift: returns p(T + c)."""
    acc: list = []
    lin = [c, one]
    for coeff in reversed(p):
        acc = padd(pmul(acc, lin, zero), [coeff])
    return ptrim(acc)


def pcontent_free(p: list) -> list:
    """Divide a Fraction polynomial by its leading coefficient (monic form)."""
    return pmonic(p)


def yun_squarefree(p: list, zero) -> list:
    """Yun's algorithm (characteristic 0): [(squarefree factor, multiplicity)].

    The product of factors^multiplicity recovers p up to the leading unit.
    """
    p = pmonic(list(p))
    out = []
    dp = pderiv(p)
    g = pgcd(p, dp, zero)
    if pdeg(g) == 0:
        return [(p, 1)]
    w, _ = pdivmod(p, g, zero)
    y, _ = pdivmod(dp, g, zero)
    z = psub(y, pderiv(w))
    k = 1
    while True:
        if not z:
            if pdeg(w) > 0:
                out.append((pmonic(w), k))
            break
        h = pgcd(w, z, zero)
        if pdeg(h) > 0:
            out.append((pmonic(h), k))
        w, _ = pdivmod(w, h, zero)
        y, _ = pdivmod(z, h, zero)
        z = psub(y, pderiv(w))
        k += 1
    return out
