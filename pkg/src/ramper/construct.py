"""Parameters a in Q(sqrt p) for which y^2 = x^(2g+2) - a is isomorphic to its conjugate.

Recipe, for p, g = 1 mod 4 with p not dividing g+1 and v of norm -1:

    u = v^(g+1)            norm 1
    b = 1 + u              u = b / conj(b)   (b = sqrt p when u = -1)
    n = -val(b)            at the prime above p
    a = b^2 * p^n          unit at that prime, v^(2g+2) = a / conj(a)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from sympy import isprime

from .errors import BadReductionError, ConstructionError, HypothesisError, NotAUnitError
from .pell import solution_at
from .polys import BiPoly, fp_derivative, fp_gcd
from .quadfield import QuadElem

logger = logging.getLogger(__name__)

ISO_DIRECTION = "C_conj(a) -> C_a"
ISO_MAP = "(x, y) -> (v*x, v^(g+1)*y)"


@dataclass(frozen=True)
class Params:
    p: int
    g: int

    @property
    def d(self) -> int:
        return self.g * (self.g + 1) // 2

    @property
    def genus_1(self) -> bool:
        return self.g == 1


def check_hypotheses(p: int, g: int) -> Params:
    reasons = []
    if not isinstance(g, int) or g < 1:
        raise HypothesisError(["g must be a positive integer"])
    if not isinstance(p, int) or p < 2 or not isprime(p):
        reasons.append("p is not prime")
    if isinstance(p, int) and p % 4 != 1:
        reasons.append("p ≢ 1 mod 4")
    if g % 4 != 1:
        reasons.append("g ≢ 1 mod 4")
    if isinstance(p, int) and p > 1 and (g + 1) % p == 0:
        reasons.append("p divides g+1")
    if reasons:
        raise HypothesisError(reasons)
    params = Params(p, g)
    if params.d % 2 == 0:
        raise ConstructionError(f"g(g+1)/2 = {params.d} is even for g = {g}")
    return params


def hilbert90(u: QuadElem) -> QuadElem:
    """An element b with u = b / conj(b), for u of norm 1."""
    if u.norm() != 1:
        raise ValueError(f"hilbert90 needs norm 1, got norm {u.norm()}")
    if u == QuadElem(u.p, -1):
        return QuadElem.sqrt_p(u.p)
    return u + 1


def build_a(v: QuadElem, g: int) -> tuple[QuadElem, int, QuadElem]:
    if v.norm() != -1:
        raise ValueError(f"v must have norm -1, got {v.norm()}")
    if g % 2 == 0:
        raise ValueError("g must be odd")
    u = v ** (g + 1)
    b = hilbert90(u)
    n = -b.valuation_ramified()
    a = b * b * QuadElem(v.p, v.p) ** n
    if a.valuation_ramified() != 0:
        raise ConstructionError(f"a = {a} is not a unit at the prime above p")
    if v ** (2 * g + 2) * a.conjugate() != a:
        raise ConstructionError("v^(2g+2) * conj(a) != a")
    return b, n, a


@dataclass(frozen=True)
class IsoWitness:
    v: QuadElem
    g: int
    direction: str = ISO_DIRECTION
    map: str = ISO_MAP


def iso_identity_holds(a: QuadElem, v: QuadElem, g: int) -> bool:
    """Check F_a(v X, v^(g+1) Y) == v^(2g+2) * F_conj(a)(X, Y) coefficientwise.

    Here F_t = Y^2 - X^(2g+2) + t cuts out the curve y^2 = x^(2g+2) - t.
    """
    one = QuadElem(a.p, 1)
    x = BiPoly.X(v)
    y = BiPoly.Y(v ** (g + 1))
    lhs = y ** 2 - x ** (2 * g + 2) + a
    rhs = (BiPoly.Y(one) ** 2 - BiPoly.X(one) ** (2 * g + 2) + a.conjugate()) * v ** (2 * g + 2)
    return lhs == rhs


def iso_witness(a: QuadElem, v: QuadElem, g: int) -> IsoWitness:
    if not iso_identity_holds(a, v, g):
        raise ConstructionError("isomorphism identity failed; construction bug")
    return IsoWitness(v, g)


def check_good_reduction(c: int, p: int, g: int) -> None:
    """Raise BadReductionError unless y^2 = x^(2g+2) - c is smooth mod p."""
    failed = []
    if c % p == 0:
        failed.append("c ≡ 0 mod p")
    if p == 2:
        failed.append("p = 2")
    if (2 * g + 2) % p == 0:
        failed.append("p divides 2g+2")
    f = [-c] + [0] * (2 * g + 1) + [1]
    if fp_gcd(f, fp_derivative(f, p), p) != [1]:
        failed.append("x^(2g+2) - c has a repeated root mod p")
    if failed:
        raise BadReductionError(failed)


def reduce_and_check(a: QuadElem, g: int) -> int:
    v = a.valuation_ramified()
    if v < 0:
        raise NotAUnitError(f"{a} is not integral at the prime above {a.p}")
    c = a.residue() if v == 0 else 0
    check_good_reduction(c, a.p, g)
    return c


@dataclass(frozen=True)
class DescentExample:
    p: int
    g: int
    k: int
    v: QuadElem
    u: QuadElem
    b: QuadElem
    n: int
    a: QuadElem
    c: int
    checks: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.g * (self.g + 1) // 2

    @property
    def genus_1(self) -> bool:
        return self.g == 1

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


def example_checks(v, u, b, n, a, c, g) -> dict:
    p = a.p
    try:
        reduction_ok = reduce_and_check(a, g) == c
    except (BadReductionError, NotAUnitError):
        reduction_ok = False
    return {
        "norm_v": v.norm() == -1,
        "norm_u": u.norm() == 1,
        "u_is_b_over_conj_b": b.conjugate() != 0 and u == b / b.conjugate(),
        "a_is_b2_pn": a == b * b * QuadElem(p, p) ** n,
        "a_valuation_zero": a.valuation_ramified() == 0,
        "v_2g2_is_a_over_conj_a": v ** (2 * g + 2) * a.conjugate() == a,
        "iso_identity": iso_identity_holds(a, v, g),
        "good_reduction": reduction_ok and c % p != 0,
        "d_odd": (g * (g + 1) // 2) % 2 == 1,
    }


def generate_example(p: int, g: int, k: int) -> DescentExample:
    check_hypotheses(p, g)
    v = solution_at(p, k)
    b, n, a = build_a(v, g)
    u = v ** (g + 1)
    iso_witness(a, v, g)
    c = reduce_and_check(a, g)
    checks = example_checks(v, u, b, n, a, c, g)
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise ConstructionError(f"checks failed for (p={p}, g={g}, k={k}): {', '.join(failed)}")
    logger.debug("built example p=%d g=%d k=%d a=%s c=%d", p, g, k, a, c)
    return DescentExample(p, g, k, v, u, b, n, a, c, checks)


def generate_family(p: int, g: int, count: int) -> list[DescentExample]:
    examples = [generate_example(p, g, k) for k in range(count)]
    if len({ex.a for ex in examples}) != len(examples):
        raise ConstructionError(f"Pell indices 0..{count - 1} gave repeated values of a")
    return examples
