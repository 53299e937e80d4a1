"""Exact arithmetic in the real quadratic field Q(sqrt p), p prime, p = 1 mod 4.

Elements are stored as ``x + y*sqrt(p)`` with ``x`` and ``y`` reduced
:class:`fractions.Fraction` values, so equality is structural.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime

from .errors import FieldMismatchError, NotAUnitError

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"p must be an int, got {type(p).__name__}")
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    if p % 4 != 1:
        raise ValueError(f"p = {p} is not congruent to 1 mod 4")
    return p


def vp(q: Rational, p: int) -> float | int:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    q = Fraction(q)
    if q == 0:
        return math.inf
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


@dataclass(frozen=True)
class QuadElem:
    p: int
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)

    def __post_init__(self):
        check_prime(self.p)
        # Fraction() already normalises sign and gcd
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def sqrt_p(cls, p: int) -> QuadElem:
        return cls(p, 0, 1)

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.p != self.p:
                raise FieldMismatchError(
                    f"cannot combine elements of Q(sqrt {self.p}) and Q(sqrt {other.p})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem(self.p, other, 0)
        return NotImplemented

    # -- field operations ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.p, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.p, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.p, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.p,
                        self.x * o.x + self.p * self.y * o.y,
                        self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt p)")
        return QuadElem(self.p, self.x / n, -self.y / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadElem:
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadElem(self.p, 1, 0)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def is_rational(self) -> bool:
        return self.y == 0

    # -- Galois structure ---------------------------------------------------
    def conjugate(self) -> QuadElem:
        return QuadElem(self.p, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.p * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    # -- the ramified prime (sqrt p) ----------------------------------------
    def valuation_ramified(self) -> float | int:
        """Valuation at the prime above p, normalised so that sqrt(p) has valuation 1.

        The two candidates ``2*v_p(x)`` and ``2*v_p(y) + 1`` have different
        parities, so the minimum is attained by exactly one of them.
        Zero has valuation ``math.inf``.
        """
        return min(2 * vp(self.x, self.p), 2 * vp(self.y, self.p) + 1)

    def residue(self) -> int:
        """Least positive integer c with ``self - c`` in the maximal ideal."""
        if self.valuation_ramified() != 0:
            raise NotAUnitError(f"{self} is not a p-adic unit at (sqrt {self.p})")
        p = self.p
        return self.x.numerator * pow(self.x.denominator, -1, p) % p

    # -- I/O ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"x": format_rational(self.x), "y": format_rational(self.y), "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> QuadElem:
        return cls(int(data["p"]), parse_rational(str(data["x"])), parse_rational(str(data["y"])))

    @classmethod
    def parse(cls, text: str, p: int) -> QuadElem:
        """Parse strings such as ``"36+16*sqrt5"``, ``"-1/2 + sqrt(5)/3"`` or ``"7"``."""
        return parse_quad(text, p)

    def __str__(self):
        if self.y == 0:
            return format_rational(self.x)
        root = f"sqrt{self.p}"
        if self.y == 1:
            ypart = root
        elif self.y == -1:
            ypart = "-" + root
        else:
            ypart = f"{format_rational(self.y)}*{root}"
        if self.x == 0:
            return ypart
        sign = "" if ypart.startswith("-") else "+"
        return f"{format_rational(self.x)}{sign}{ypart}"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<root1>sqrt\s*\(?\s*(?P<p1>\d+)\s*\)?))?(?:\s*/\s*(?P<div1>\d+))?
          | (?P<root2>sqrt\s*\(?\s*(?P<p2>\d+)\s*\)?)(?:\s*/\s*(?P<div2>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_quad(text: str, p: int) -> QuadElem:
    s = text.strip()
    if not s:
        raise ValueError("empty element string")
    x = Fraction(0)
    y = Fraction(0)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        if m.group("sign") is None and not first:
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("root2") is not None:
            root_p, coef, div = m.group("p2"), Fraction(1), m.group("div2")
        else:
            try:
                coef = Fraction(m.group("coef"))
            except ZeroDivisionError:
                raise ValueError(f"zero denominator in {text!r}") from None
            root_p, div = m.group("p1"), m.group("div1")
        if div is not None:
            if int(div) == 0:
                raise ValueError(f"zero denominator in {text!r}")
            coef /= int(div)
        if root_p is None:
            x += sign * coef
        else:
            if int(root_p) != p:
                raise ValueError(f"{text!r} mentions sqrt{root_p} but p = {p}")
            y += sign * coef
        pos = m.end()
        first = False
    return QuadElem(p, x, y)
