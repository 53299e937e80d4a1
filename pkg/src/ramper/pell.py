"""Negative Pell equation x^2 - p*y^2 = -1 via the continued fraction of sqrt(p)."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import PellError
from .quadfield import QuadElem, check_prime


@dataclass(frozen=True)
class PellSolution:
    p: int
    x: int
    y: int
    index: int = 0

    def __post_init__(self):
        if self.x * self.x - self.p * self.y * self.y != -1:
            raise PellError(f"({self.x}, {self.y}) does not solve x^2 - {self.p}y^2 = -1")

    def as_quad(self) -> QuadElem:
        return QuadElem(self.p, self.x, self.y)

    def to_json(self) -> dict:
        return {"x": str(self.x), "y": str(self.y)}


def cf_sqrt(n: int) -> tuple[int, list[int]]:
    """Return ``(a0, period)`` with sqrt(n) = [a0; period, period, ...]."""
    a0 = isqrt(n)
    if a0 * a0 == n:
        raise ValueError(f"{n} is a perfect square")
    m, d, a = 0, 1, a0
    period = []
    # the period ends at the first partial quotient equal to 2*a0
    while a != 2 * a0:
        m = d * a - m
        d = (n - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return a0, period


def convergents(a0: int, quotients):
    """Yield the convergents (h_k, q_k) of [a0; quotients...]."""
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    yield h, k
    for a in quotients:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield h, k


def fundamental_negative(p: int) -> PellSolution:
    """Minimal positive solution of x^2 - p*y^2 = -1."""
    check_prime(p)
    a0, period = cf_sqrt(p)
    r = len(period)
    if r % 2 == 0:
        # impossible for prime p = 1 mod 4; kept to catch bugs loudly
        raise PellError(f"continued fraction of sqrt({p}) has even period {r}; "
                        "x^2 - p*y^2 = -1 would be unsolvable")
    # convergent h_{r-1}/k_{r-1} sits at the end of the first period
    *_, (h, k) = convergents(a0, period[:-1])
    return PellSolution(p, h, k, 0)


def solution_at(p: int, k: int) -> QuadElem:
    """The k-th norm -1 element v0^(2k+1), v0 the fundamental solution."""
    if k < 0:
        raise ValueError("Pell index must be nonnegative")
    return fundamental_negative(p).as_quad() ** (2 * k + 1)


def solutions(p: int, count: int) -> list[PellSolution]:
    v0 = fundamental_negative(p).as_quad()
    step = v0 * v0
    out = []
    v = v0
    for k in range(count):
        out.append(PellSolution(p, int(v.x), int(v.y), k))
        v = v * step
    return out
