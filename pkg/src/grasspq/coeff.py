"""Exact arithmetic in the field of rational functions of the two
deformation parameters p and q.

Coefficients are quotients of Laurent polynomials over the rationals.
Negative exponents are first-class, so the ubiquitous p^-1, q^-1 and
binomials like p - q^-1 never grow a denominator.  Full bivariate gcd
reduction is deliberately avoided: equality is decided by cross
multiplication, which is exact, and a cheap content/exact-division
normalization keeps intermediate sizes bounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping

from .errors import SingularEvaluation, SingularSpecialization, ZeroInverse

# Scalar base field: arbitrary-precision rationals.
Rat = Fraction

ExpPair = tuple[int, int]


def _frac_content(coeffs) -> Fraction:
    """gcd of numerators over lcm of denominators; positive."""
    num = 0
    den = 1
    for c in coeffs:
        num = gcd(num, abs(c.numerator))
        den = den * c.denominator // gcd(den, c.denominator)
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)


class LaurentPoly:
    """Laurent polynomial in p, q: a finite map (a, b) -> nonzero Fraction,
    where (a, b) are the exponents of p and q."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ExpPair, Fraction] | None = None):
        clean: dict[ExpPair, Fraction] = {}
        if terms:
            for (a, b), c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(a), int(b))] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, c, a: int, b: int) -> LaurentPoly:
        return cls({(a, b): Fraction(c)})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- ring operations ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        return res

    def __neg__(self) -> LaurentPoly:
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[ExpPair, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = out
        return res

    def scale(self, c: Fraction) -> LaurentPoly:
        c = Fraction(c)
        if not c:
            return LaurentPoly.zero()
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {e: v * c for e, v in self.terms.items()}
        return res

    def shift(self, a: int, b: int) -> LaurentPoly:
        """Multiply by the monomial p^a q^b."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.terms = {(ea + a, eb + b): c for (ea, eb), c in self.terms.items()}
        return res

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if self.is_monomial():
                (a, b), c = next(iter(self.terms.items()))
                return LaurentPoly.monomial(Fraction(1) / c, -a, -b) ** (-n)
            raise ZeroInverse("negative power of a non-monomial Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ---------------------------------------------------------

    def leading(self) -> tuple[ExpPair, Fraction]:
        """Term with the largest exponent pair in descending lex order."""
        e = max(self.terms)
        return e, self.terms[e]

    def content(self) -> tuple[Fraction, int, int]:
        """(scalar, a, b) such that self / (scalar * p^a q^b) is integer-
        primitive with minimal exponents zero and positive leading term."""
        if self.is_zero:
            return Fraction(1), 0, 0
        a = min(e[0] for e in self.terms)
        b = min(e[1] for e in self.terms)
        c = _frac_content(self.terms.values())
        if self.terms[max(self.terms)] < 0:
            c = -c
        return c, a, b

    def unit_divide(self, c: Fraction, a: int, b: int) -> LaurentPoly:
        """Divide by the unit c * p^a q^b."""
        inv = Fraction(1) / Fraction(c)
        return self.scale(inv).shift(-a, -b)

    def evaluate(self, p0: Fraction, q0: Fraction) -> Fraction:
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c * p0**a * q0**b
        return total

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = _monomial_str(abs(c), *e)
            if not parts:
                parts.append(mag if c > 0 else "-" + mag)
            else:
                parts.append((" + " if c > 0 else " - ") + mag)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _monomial_str(c: Fraction, a: int, b: int) -> str:
    pieces = []
    if c != 1 or (a == 0 and b == 0):
        pieces.append(str(c))
    if a:
        pieces.append("p" if a == 1 else f"p^{a}")
    if b:
        pieces.append("q" if b == 1 else f"q^{b}")
    return "*".join(pieces)


def _try_exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Quotient num/den if the division is exact, else None.

    Leading-term elimination in descending lex order; capped so a
    non-dividing pair cannot loop.
    """
    if den.is_zero:
        return None
    if num.is_zero:
        return LaurentPoly.zero()
    (ea, eb), lc = den.leading()
    quot: dict[ExpPair, Fraction] = {}
    rem = num
    cap = 8 * (len(num.terms) + len(den.terms)) + 32
    while rem:
        if len(quot) > cap:
            return None
        (ra, rb), rc = rem.leading()
        t = (ra - ea, rb - eb)
        tc = rc / lc
        quot[t] = tc
        rem = rem - den.shift(*t).scale(tc)
    return LaurentPoly(quot)


class RatFunc:
    """Rational function num/den in p, q.

    Equality is cross multiplication: n1*d2 == n2*d1 as Laurent
    polynomials.  Construction applies content reduction and, when a
    denominator divides the numerator exactly, cancels it outright.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.const(1)
        if den.is_zero:
            raise ZeroInverse("rational function with zero denominator")
        if num.is_zero:
            num, den = LaurentPoly.zero(), LaurentPoly.const(1)
        elif den.is_monomial():
            (a, b), c = den.leading()
            num, den = num.unit_divide(c, a, b), LaurentPoly.const(1)
        else:
            c, a, b = den.content()
            num = num.unit_divide(c, a, b)
            den = den.unit_divide(c, a, b)
            q = _try_exact_div(num, den)
            if q is not None:
                num, den = q, LaurentPoly.const(1)
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> RatFunc:
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls) -> RatFunc:
        return cls(LaurentPoly.const(1))

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(LaurentPoly.const(c))

    @classmethod
    def monomial(cls, c, a: int, b: int) -> RatFunc:
        return cls(LaurentPoly.monomial(c, a, b))

    @classmethod
    def p(cls, exp: int = 1) -> RatFunc:
        return cls(LaurentPoly.monomial(1, exp, 0))

    @classmethod
    def q(cls, exp: int = 1) -> RatFunc:
        return cls(LaurentPoly.monomial(1, 0, exp))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def is_scalar_one(self) -> bool:
        return self == RatFunc.one()

    # -- field operations ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    __hash__ = None

    def __add__(self, other: RatFunc) -> RatFunc:
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> RatFunc:
        res = RatFunc.__new__(RatFunc)
        res.num = -self.num
        res.den = self.den
        return res

    def __sub__(self, other: RatFunc) -> RatFunc:
        return self + (-other)

    def __mul__(self, other: RatFunc) -> RatFunc:
        return RatFunc(self.num * other.num, self.den * other.den)

    def inv(self) -> RatFunc:
        if self.is_zero:
            raise ZeroInverse("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: RatFunc) -> RatFunc:
        return self * other.inv()

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inv() ** (-n)
        out = RatFunc.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, p0, q0, require_admissible: bool = False) -> Fraction:
        """Exact value at (p0, q0).

        Raises SingularEvaluation if either parameter is zero, the
        denominator vanishes there, or (when the admissibility guard is
        requested) p0*q0 = +-1.
        """
        p0, q0 = Fraction(p0), Fraction(q0)
        if p0 == 0 or q0 == 0:
            raise SingularEvaluation("parameters must be nonzero")
        if require_admissible and p0 * q0 in (1, -1):
            raise SingularEvaluation("admissibility requires p*q != +-1")
        d = self.den.evaluate(p0, q0)
        if d == 0:
            raise SingularEvaluation(f"denominator vanishes at ({p0}, {q0})")
        return self.num.evaluate(p0, q0) / d

    def substitute(self, p_val: RatFunc | None, q_val: RatFunc | None) -> RatFunc:
        """Simultaneously substitute rational functions for p and/or q."""
        if p_val is None and q_val is None:
            return self
        pv = p_val if p_val is not None else RatFunc.p()
        qv = q_val if q_val is not None else RatFunc.q()
        num = _subst_laurent(self.num, pv, qv)
        den = _subst_laurent(self.den, pv, qv)
        if den.is_zero:
            raise SingularSpecialization("substitution kills a denominator")
        return num / den

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if self.den == LaurentPoly.const(1):
            return str(self.num)
        den = str(self.den)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _subst_laurent(poly: LaurentPoly, pv: RatFunc, qv: RatFunc) -> RatFunc:
    total = RatFunc.zero()
    for (a, b), c in poly.terms.items():
        total = total + RatFunc.const(c) * pv**a * qv**b
    return total


def qnum(n: int, t: RatFunc) -> RatFunc:
    """Deformed integer <n>_t = 1 + t + ... + t^(n-1); <0> is the empty sum."""
    if n < 0:
        raise ValueError("qnum needs a nonnegative integer")
    total = RatFunc.zero()
    power = RatFunc.one()
    for _ in range(n):
        total = total + power
        power = power * t
    return total


# The two parameters, ready-made.
P = RatFunc.p()
Q = RatFunc.q()
ONE = RatFunc.one()
ZERO = RatFunc.zero()
