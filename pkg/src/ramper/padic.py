"""Finite-precision arithmetic in Q_p and in the ramified extension Q_p(sqrt p).

Precision is data carried by every value; there is no global context.

``PadicNumber`` stores ``p**valuation * unit`` known modulo ``p**precision``.
A value with no distinguishable digits is the zero marker: ``valuation`` is
``None`` and the value is only known to be ``O(p**precision)``.

``RamifiedElem`` stores ``A + B*pi`` with ``pi**2 == p`` and ``A, B`` in Q_p.
Its precision is measured in powers of pi: ``min(2*prec(A), 2*prec(B) + 1)``.
Components are trimmed on construction so that this number alone determines
them, which makes equality and the pi-adic digit form canonical.

Precision rules (pessimistic):

* addition keeps the smaller absolute precision;
* multiplication keeps relative precision, ``min(v1 + N2, v2 + N1)``;
* inversion of a nonzero value keeps relative precision;
* exact rationals (``int``/``Fraction``) carry no error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import FieldMismatchError, HenselError, PrecisionError
from .quadfield import QuadElem, vp

Exact = Union[int, Fraction]


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _split(q: Fraction, p: int) -> tuple[int, int, int]:
    """Write nonzero q as p**v * num/den with num, den prime to p."""
    num, den = q.numerator, q.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, num, den


@dataclass(frozen=True)
class PadicNumber:
    p: int
    valuation: Optional[int]
    unit: int
    precision: int

    def __post_init__(self):
        if self.valuation is None:
            if self.unit != 0:
                raise ValueError("zero marker must have unit 0")
            return
        if self.valuation >= self.precision:
            raise ValueError("valuation must be below the absolute precision")
        if self.unit % self.p == 0 or not 0 < self.unit < self.p ** (self.precision - self.valuation):
            raise ValueError("unit part must be a reduced p-adic unit")

    # -- construction --------------------------------------------------------
    @classmethod
    def zero(cls, p: int, precision: int) -> PadicNumber:
        return cls(p, None, 0, precision)

    @classmethod
    def _normalize(cls, p: int, s: int, m: int, precision: int) -> PadicNumber:
        """The value s * p**m known modulo p**precision."""
        if precision <= m or s == 0:
            return cls.zero(p, precision)
        s %= p ** (precision - m)
        if s == 0:
            return cls.zero(p, precision)
        while s % p == 0:
            s //= p
            m += 1
        return cls(p, m, s, precision)

    @classmethod
    def from_rational(cls, q: Exact, precision: int, p: int) -> PadicNumber:
        q = Fraction(q)
        if q == 0:
            return cls.zero(p, precision)
        v, num, den = _split(q, p)
        if v >= precision:
            return cls.zero(p, precision)
        mod = p ** (precision - v)
        return cls(p, v, num * pow(den, -1, mod) % mod, precision)

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        """True when the value is indistinguishable from 0 at its precision."""
        return self.valuation is None

    @property
    def relative_precision(self) -> int:
        return 0 if self.valuation is None else self.precision - self.valuation

    def to_fraction(self) -> Fraction:
        """The canonical rational representative."""
        if self.valuation is None:
            return Fraction(0)
        return self.unit * Fraction(self.p) ** self.valuation

    def residue_int(self) -> int:
        """Representative in [0, p**precision) of an integral value."""
        if self.valuation is None:
            return 0
        if self.valuation < 0:
            raise ValueError("value is not p-integral")
        return self.unit * self.p ** self.valuation

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, least significant first."""
        out = []
        u = self.unit
        for _ in range(self.relative_precision):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    # -- precision changes ---------------------------------------------------
    def truncate(self, precision: int) -> PadicNumber:
        if precision > self.precision:
            raise PrecisionError(
                f"cannot truncate O(p^{self.precision}) to O(p^{precision})", needed=precision)
        if self.valuation is None or self.valuation >= precision:
            return PadicNumber.zero(self.p, precision)
        return PadicNumber(self.p, self.valuation,
                           self.unit % self.p ** (precision - self.valuation), precision)

    def lift(self, precision: int) -> PadicNumber:
        """Reinterpret the canonical representative at a larger precision."""
        if precision < self.precision:
            return self.truncate(precision)
        if self.valuation is None:
            return PadicNumber.zero(self.p, precision)
        return PadicNumber(self.p, self.valuation, self.unit, precision)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: PadicNumber):
        if other.p != self.p:
            raise FieldMismatchError(f"cannot combine Q_{self.p} and Q_{other.p}")

    def __add__(self, other):
        if _is_exact(other):
            other = PadicNumber.from_rational(other, self.precision, self.p)
        elif not isinstance(other, PadicNumber):
            return NotImplemented
        self._check(other)
        n = min(self.precision, other.precision)
        vals = [x.valuation for x in (self, other) if x.valuation is not None]
        m = min(vals + [n])
        s = 0
        for x in (self, other):
            if x.valuation is not None and x.valuation < n:
                s += x.unit * self.p ** (x.valuation - m)
        return PadicNumber._normalize(self.p, s, m, n)

    __radd__ = __add__

    def __neg__(self):
        if self.valuation is None:
            return self
        mod = self.p ** (self.precision - self.valuation)
        return PadicNumber(self.p, self.valuation, -self.unit % mod, self.precision)

    def __sub__(self, other):
        if _is_exact(other):
            return self + (-Fraction(other))
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, q: Fraction) -> PadicNumber:
        if q == 0:
            return PadicNumber.zero(self.p, self.precision)
        w, num, den = _split(q, self.p)
        if self.valuation is None:
            return PadicNumber.zero(self.p, self.precision + w)
        mod = self.p ** (self.precision - self.valuation)
        unit = self.unit * num * pow(den, -1, mod) % mod
        return PadicNumber(self.p, self.valuation + w, unit, self.precision + w)

    def __mul__(self, other):
        if _is_exact(other):
            return self._scale(Fraction(other))
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._check(other)
        v1, v2 = self.valuation, other.valuation
        if v1 is None and v2 is None:
            return PadicNumber.zero(self.p, self.precision + other.precision)
        if v1 is None:
            return PadicNumber.zero(self.p, self.precision + v2)
        if v2 is None:
            return PadicNumber.zero(self.p, other.precision + v1)
        n = min(v1 + other.precision, v2 + self.precision)
        v = v1 + v2
        return PadicNumber(self.p, v, self.unit * other.unit % self.p ** (n - v), n)

    __rmul__ = __mul__

    def inverse(self) -> PadicNumber:
        if self.valuation is None:
            raise PrecisionError(
                f"cannot invert O({self.p}^{self.precision}): value indistinguishable from 0; "
                f"recompute with precision above {self.precision}",
                needed=self.precision + 1)
        mod = self.p ** (self.precision - self.valuation)
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, mod),
                           self.precision - 2 * self.valuation)

    def __truediv__(self, other):
        if _is_exact(other):
            if other == 0:
                raise ZeroDivisionError("division by exact zero")
            return self._scale(1 / Fraction(other))
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if _is_exact(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int) -> PadicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return PadicNumber.from_rational(1, max(1, self.relative_precision), self.p)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        if self.valuation is None:
            return f"O({self.p}^{self.precision})"
        return f"PadicNumber({self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.precision}))"


@dataclass(frozen=True)
class RamifiedElem:
    p: int
    a: PadicNumber
    b: PadicNumber

    def __post_init__(self):
        if self.a.p != self.p or self.b.p != self.p:
            raise FieldMismatchError("component primes differ")
        m = min(2 * self.a.precision, 2 * self.b.precision + 1)
        if self.a.precision != (m + 1) // 2:
            object.__setattr__(self, "a", self.a.truncate((m + 1) // 2))
        if self.b.precision != m // 2:
            object.__setattr__(self, "b", self.b.truncate(m // 2))

    # -- construction --------------------------------------------------------
    @classmethod
    def from_rational(cls, q: Exact, precision: int, p: int) -> RamifiedElem:
        """Embed a rational with both components at p-adic precision ``precision``."""
        return cls(p, PadicNumber.from_rational(q, precision, p), PadicNumber.zero(p, precision))

    @classmethod
    def one(cls, p: int, precision: int) -> RamifiedElem:
        return cls.from_rational(1, precision, p)

    @classmethod
    def pi(cls, p: int, precision: int) -> RamifiedElem:
        return cls(p, PadicNumber.zero(p, precision), PadicNumber.from_rational(1, precision, p))

    @classmethod
    def from_pi_precision(cls, p: int, a: Exact, b: Exact, precision: int) -> RamifiedElem:
        """Build ``a + b*pi`` from exact rationals, known modulo ``pi**precision``."""
        return cls(p, PadicNumber.from_rational(a, (precision + 1) // 2, p),
                   PadicNumber.from_rational(b, precision // 2, p))

    # -- inspection ----------------------------------------------------------
    @property
    def precision(self) -> int:
        """Absolute precision in powers of pi."""
        return min(2 * self.a.precision, 2 * self.b.precision + 1)

    @property
    def valuation(self) -> Optional[int]:
        """pi-adic valuation, or None when indistinguishable from zero."""
        vals = []
        if self.a.valuation is not None:
            vals.append(2 * self.a.valuation)
        if self.b.valuation is not None:
            vals.append(2 * self.b.valuation + 1)
        return min(vals) if vals else None

    def is_zero(self) -> bool:
        return self.valuation is None

    def is_one_mod_pi(self) -> bool:
        if self.precision < 1:
            raise PrecisionError("need at least one pi-adic digit", needed=1)
        v = (self - 1).valuation
        return v is None or v >= 1

    def is_in_base_field(self) -> bool:
        """True when the pi-component is indistinguishable from zero."""
        return self.b.is_zero()

    # -- precision changes ---------------------------------------------------
    def truncate(self, precision: int) -> RamifiedElem:
        """Reduce to pi-adic precision ``precision``."""
        if precision > self.precision:
            raise PrecisionError(
                f"cannot truncate O(pi^{self.precision}) to O(pi^{precision})", needed=precision)
        return RamifiedElem(self.p, self.a.truncate((precision + 1) // 2),
                            self.b.truncate(precision // 2))

    def lift(self, precision: int) -> RamifiedElem:
        """Reinterpret the representative at pi-adic precision ``precision``."""
        return RamifiedElem(self.p, self.a.lift((precision + 1) // 2), self.b.lift(precision // 2))

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RamifiedElem):
            if other.p != self.p:
                raise FieldMismatchError(f"cannot combine Q_{self.p}(pi) and Q_{other.p}(pi)")
            return other
        if _is_exact(other):
            return RamifiedElem(self.p,
                                PadicNumber.from_rational(other, self.a.precision, self.p),
                                PadicNumber.zero(self.p, self.a.precision))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RamifiedElem(self.p, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return RamifiedElem(self.p, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RamifiedElem(self.p, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_exact(other):
            q = Fraction(other)
            return RamifiedElem(self.p, self.a * q, self.b * q)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (A + B pi)(C + D pi) = (AC + p BD) + (AD + BC) pi
        a = self.a * o.a + (self.b * o.b) * self.p
        b = self.a * o.b + self.b * o.a
        return RamifiedElem(self.p, a, b)

    __rmul__ = __mul__

    def conjugate(self) -> RamifiedElem:
        """The nontrivial automorphism pi -> -pi."""
        return RamifiedElem(self.p, self.a, -self.b)

    def norm(self) -> PadicNumber:
        return self.a * self.a - (self.b * self.b) * self.p

    def inverse(self) -> RamifiedElem:
        if self.is_zero():
            raise PrecisionError(
                f"cannot invert O(pi^{self.precision}): value indistinguishable from 0; "
                f"recompute with pi-adic precision above {self.precision}",
                needed=self.precision + 1)
        n_inv = self.norm().inverse()
        return RamifiedElem(self.p, self.a * n_inv, -(self.b * n_inv))

    def __truediv__(self, other):
        if _is_exact(other):
            if other == 0:
                raise ZeroDivisionError("division by exact zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        if _is_exact(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int) -> RamifiedElem:
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return RamifiedElem.one(self.p, max(1, (self.precision + 1) // 2))
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- pi-adic digit form --------------------------------------------------
    def pi_digits(self) -> tuple[Optional[int], list[int]]:
        """Return ``(valuation, digits)`` with self = sum d_i * pi**(valuation + i)."""
        v = self.valuation
        if v is None:
            return None, []
        s = v // 2
        shift = Fraction(1, self.p ** s) if s >= 0 else Fraction(self.p ** -s)
        if v % 2 == 0:
            lo, hi = self.a * shift, self.b * shift
        else:
            lo, hi = self.b * shift, self.a * (shift / self.p)
        x, y = lo.residue_int(), hi.residue_int()
        out = []
        for _ in range(self.precision - v):
            d = x % self.p
            out.append(d)
            x, y = y, (x - d) // self.p
        return v, out

    def to_json(self) -> dict:
        v, digits = self.pi_digits()
        return {"valuation": v, "digits": digits, "precision": self.precision}

    @classmethod
    def from_json(cls, data: dict, p: int) -> RamifiedElem:
        v = data["valuation"]
        digits = list(data["digits"])
        precision = int(data["precision"])
        if v is None:
            if digits:
                raise ValueError("zero marker must not carry digits")
            return cls.from_pi_precision(p, 0, 0, precision)
        if len(digits) != precision - v:
            raise ValueError(f"expected {precision - v} digits, got {len(digits)}")
        if any(not isinstance(d, int) or not 0 <= d < p for d in digits):
            raise ValueError(f"digits must be integers in [0, {p})")
        if digits and digits[0] == 0:
            raise ValueError("leading digit must be nonzero")
        a = b = Fraction(0)
        for i, d in enumerate(digits):
            e = v + i
            if e % 2 == 0:
                a += d * Fraction(p) ** (e // 2)
            else:
                b += d * Fraction(p) ** ((e - 1) // 2)
        return cls.from_pi_precision(p, a, b, precision)

    def __repr__(self):
        return f"RamifiedElem({self.a!r} + {self.b!r}*pi, O(pi^{self.precision}))"


def embed(e: QuadElem, precision: int) -> RamifiedElem:
    """Image of x + y*sqrt(p) in Q_p(pi), both components known mod p**precision."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    return RamifiedElem(e.p, PadicNumber.from_rational(e.x, precision, e.p),
                        PadicNumber.from_rational(e.y, precision, e.p))


def hensel_root(t: RamifiedElem, m: int, precision: int) -> RamifiedElem:
    """The unique alpha = 1 mod pi with alpha**m = t, to p-adic precision ``precision``.

    Newton iteration from alpha = 1, doubling the pi-adic precision each
    step and verifying the residual after every step. The result has
    pi-adic precision ``2 * precision``.
    """
    p = t.p
    if m < 1:
        raise ValueError("exponent m must be positive")
    if m % p == 0:
        raise HenselError(f"gcd(m, p) != 1 for m = {m}, p = {p}: derivative not a unit")
    if precision < 1:
        raise ValueError("precision must be at least 1")
    target = 2 * precision
    if t.precision < target:
        raise PrecisionError(
            f"input known to O(pi^{t.precision}); hensel_root at precision {precision} "
            f"needs O(pi^{target})", needed=target)
    if not t.is_one_mod_pi():
        raise HenselError("Hensel precondition failed: t is not 1 mod pi")

    alpha = RamifiedElem.one(p, 1)
    correct = 1  # alpha is known to agree with the root mod pi**correct
    while correct < target:
        work = 2 * min(precision, correct)
        alpha = alpha.lift(work)
        tw = t.truncate(work)
        step = (alpha ** m - tw) / (alpha ** (m - 1) * m)
        alpha = alpha - step
        if not (alpha ** m - tw).is_zero():
            raise HenselError(f"residual check failed at pi-adic precision {work}")
        correct *= 2
    return alpha.truncate(target)
