"""Sparse multivariate polynomials over the rationals.

`MPoly` is the input-level representation: curve germs live in two
variables (x, y), one-parameter families in three (x, y, t).  Terms map
exponent tuples to nonzero Fractions; the empty map is the zero
polynomial.  Values are immutable after construction and hashable, which
the caching layers rely on.

The module also houses the polynomial grammar (integers, `p/q` rational
literals, + - * ^ with ^ tightest, explicit *, parentheses) and the
fraction-free Sylvester resultant used everywhere a discriminant or a
valuation bound is needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import PolynomialSyntaxError, UnknownVariableError


class MPoly:
    __slots__ = ("nvars", "terms", "_key")

    def __init__(self, nvars: int, terms: dict):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._key = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MPoly":
        return MPoly(nvars, {})

    @staticmethod
    def const(nvars: int, c) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return MPoly.zero(nvars)
        return MPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return MPoly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps, c=1) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return MPoly.zero(nvars)
        return MPoly(nvars, {tuple(exps): c})

    # -- basic structure ---------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (self.nvars, tuple(sorted(self.terms.items())))
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def support(self):
        return set(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def order_in(self, i: int) -> int:
        """Smallest exponent of variable i occurring in a nonzero term."""
        if not self.terms:
            raise ValueError("order of the zero polynomial")
        return min(e[i] for e in self.terms)

    def lowest_form(self) -> "MPoly":
        """Sum of the terms of minimal total degree (the tangent cone)."""
        if not self.terms:
            return self
        d = min(sum(e) for e in self.terms)
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MPoly(self.nvars, terms)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MPoly(self.nvars, terms)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("arity mismatch")
            return other
        return MPoly.const(self.nvars, other)

    # -- calculus / substitution -------------------------------------------

    def derivative(self, i: int) -> "MPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            terms[tuple(e2)] = c * e[i]
        return MPoly(self.nvars, terms)

    def eval_all(self, values) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, ei in enumerate(e):
                if ei:
                    v *= Fraction(values[i]) ** ei
            total += v
        return total

    def specialize(self, i: int, value) -> "MPoly":
        """Substitute a Fraction for variable i, dropping that position."""
        value = Fraction(value)
        terms: dict = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1 :]
            v = c * value ** e[i]
            s = terms.get(e2, Fraction(0)) + v
            if s:
                terms[e2] = s
            else:
                terms.pop(e2, None)
        return MPoly(self.nvars - 1, terms)

    def shear(self, i: int, j: int, lam) -> "MPoly":
        """Substitute x_i -> x_i + lam * x_j."""
        lam = Fraction(lam)
        if lam == 0:
            return self
        terms: dict = {}
        for e, c in self.terms.items():
            n = e[i]
            for k in range(n + 1):
                e2 = list(e)
                e2[i] = n - k
                e2[j] = e[j] + k
                e2 = tuple(e2)
                v = c * comb(n, k) * lam**k
                s = terms.get(e2, Fraction(0)) + v
                if s:
                    terms[e2] = s
                else:
                    terms.pop(e2, None)
        return MPoly(self.nvars, terms)

    def scale_var(self, i: int, c) -> "MPoly":
        """Substitute x_i -> c * x_i."""
        c = Fraction(c)
        return MPoly(
            self.nvars,
            {e: v * c ** e[i] for e, v in self.terms.items()},
        )

    def coeffs_in(self, i: int) -> list:
        """Coefficient list in variable i (index = power), entries with x_i removed
        from the exponent but the arity kept (exponent 0 in slot i)."""
        d = self.degree_in(i)
        out = [MPoly.zero(self.nvars) for _ in range(d + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            out[k] = out[k] + MPoly(self.nvars, {tuple(e2): c})
        return out

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact division; raises ValueError if not divisible."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        # lex leading term of the divisor
        ge = max(other.terms)
        gc = other.terms[ge]
        rem = dict(self.terms)
        q: dict = {}
        while rem:
            re = max(rem)
            if any(a < b for a, b in zip(re, ge)):
                raise ValueError("not an exact polynomial division")
            qe = tuple(a - b for a, b in zip(re, ge))
            qc = rem[re] / gc
            q[qe] = q.get(qe, Fraction(0)) + qc
            for e, c in other.terms.items():
                e2 = tuple(a + b for a, b in zip(qe, e))
                s = rem.get(e2, Fraction(0)) - qc * c
                if s:
                    rem[e2] = s
                else:
                    rem.pop(e2, None)
        return MPoly(self.nvars, q)

    # -- printing ----------------------------------------------------------

    def to_string(self, names) -> str:
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0]))
        )
        parts = []
        for e, c in items:
            factors = []
            for nm, ei in zip(names, e):
                if ei == 1:
                    factors.append(nm)
                elif ei > 1:
                    factors.append(f"{nm}^{ei}")
            mag = abs(c)
            if not factors:
                body = _frac_str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_frac_str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        names = ["x", "y", "t", "u", "v", "w"][: self.nvars]
        return f"MPoly<{self.to_string(names)}>"


def _frac_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOK_INT = "int"
_TOK_NAME = "name"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append((_TOK_INT, text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append((_TOK_NAME, text[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            toks.append((_TOK_OP, ch, i))
            i += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    toks.append((_TOK_END, "", n))
    return toks


class _Parser:
    def __init__(self, text: str, variables):
        self.toks = _tokenize(text)
        self.pos = 0
        self.variables = list(variables)

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op):
        kind, val, at = self.peek()
        if kind != _TOK_OP or val != op:
            raise PolynomialSyntaxError(f"expected {op!r}", at)
        return self.advance()

    def parse(self) -> MPoly:
        p = self.expr()
        kind, val, at = self.peek()
        if kind != _TOK_END:
            raise PolynomialSyntaxError(f"unexpected trailing input {val!r}", at)
        return p

    def expr(self) -> MPoly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == _TOK_OP and val in "+-":
            self.advance()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val in "+-":
                self.advance()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> MPoly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val == "*":
                self.advance()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> MPoly:
        p = self.atom()
        kind, val, _ = self.peek()
        if kind == _TOK_OP and val == "^":
            self.advance()
            kind, val, at = self.advance()
            if kind != _TOK_INT:
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", at)
            p = p ** int(val)
        return p

    def atom(self) -> MPoly:
        kind, val, at = self.advance()
        n = len(self.variables)
        if kind == _TOK_OP and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == _TOK_OP and val == "-":
            # unary minus directly before an atom, e.g. "-(x+y)" or "3*-2" is
            # rejected upstream; only leading/after-paren positions reach here.
            return -self.atom()
        if kind == _TOK_INT:
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == _TOK_OP and val2 == "/":
                self.advance()
                kind3, val3, at3 = self.advance()
                if kind3 != _TOK_INT:
                    raise PolynomialSyntaxError("rational literal needs integer denominator", at3)
                den = int(val3)
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator in rational literal", at3)
                return MPoly.const(n, Fraction(num, den))
            return MPoly.const(n, num)
        if kind == _TOK_NAME:
            if val not in self.variables:
                raise UnknownVariableError(val, at)
            return MPoly.variable(n, self.variables.index(val))
        raise PolynomialSyntaxError(f"unexpected token {val!r}", at)


def parse_polynomial(text: str, variables=("x", "y")) -> MPoly:
    """Parse `text` into an MPoly over the given ordered variable names."""
    return _Parser(text, variables).parse()


# ---------------------------------------------------------------------------
# Resultants (fraction-free Bareiss over MPoly entries)
# ---------------------------------------------------------------------------


def sylvester_resultant(fc: list, gc: list, nvars: int) -> MPoly:
    """Resultant of two polynomials given by MPoly coefficient lists.

    `fc`, `gc` are coefficient lists in the eliminated variable (constant
    term first); the entries must not involve that variable.  Returns an
    MPoly with the same arity as the entries.
    """
    while fc and fc[-1].is_zero():
        fc = fc[:-1]
    while gc and gc[-1].is_zero():
        gc = gc[:-1]
    m = len(fc) - 1
    n = len(gc) - 1
    if m < 0 or n < 0:
        return MPoly.zero(nvars)
    if m == 0 and n == 0:
        return MPoly.const(nvars, 1)
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    zero = MPoly.zero(nvars)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(fc):
            row[i + (m - k)] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(gc):
            row[i + (n - k)] = c
        rows.append(row)
    return _bareiss_det(rows, nvars)


def _bareiss_det(mat: list, nvars: int) -> MPoly:
    n = len(mat)
    sign = 1
    prev = MPoly.const(nvars, 1)
    for k in range(n - 1):
        if mat[k][k].is_zero():
            for r in range(k + 1, n):
                if not mat[r][k].is_zero():
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero(nvars)
        pivot = mat[k][k]
        for i in range(k + 1, n):
            row_i = mat[i]
            row_k = mat[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - lead * row_k[j]
                row_i[j] = num.exact_div(prev)
            row_i[k] = MPoly.zero(nvars)
        prev = pivot
    det = mat[n - 1][n - 1]
    return det if sign > 0 else -det
