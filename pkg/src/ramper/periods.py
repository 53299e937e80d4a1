"""Hodge-filtration data of y^2 = x^(2g+2) - a and its minimal period alpha^(g(g+1)/2)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HenselError, RamperError
from .padic import RamifiedElem

PULLBACK_MAP = "(x, y) -> (alpha^-1 * x, alpha^-(g+1) * y)"
PULLBACK_DIRECTION = "C_c -> C_a"


@dataclass(frozen=True)
class Differential:
    """The holomorphic form x^i dx/y, kept symbolically by its index."""
    i: int

    def __str__(self):
        if self.i == 0:
            return "dx/y"
        if self.i == 1:
            return "x dx/y"
        return f"x^{self.i} dx/y"


@dataclass(frozen=True)
class FilteredBasis:
    g: int
    forms: tuple[Differential, ...]

    def __post_init__(self):
        if [w.i for w in self.forms] != list(range(self.g)):
            raise ValueError("basis must be x^i dx/y for i = 0..g-1")


@dataclass(frozen=True)
class PeriodMatrix:
    g: int
    diagonal: tuple[RamifiedElem, ...]

    def determinant(self) -> RamifiedElem:
        det = self.diagonal[0]
        for entry in self.diagonal[1:]:
            det = det * entry
        return det


@dataclass(frozen=True)
class MinimalPeriod:
    value: RamifiedElem
    d: int
    precision: int

    def to_json(self, provenance: dict | None = None) -> dict:
        out = {"value": self.value.to_json(), "d": self.d, "precision": self.precision}
        if provenance is not None:
            out["provenance"] = provenance
        return out


def exponent(g: int) -> int:
    return g * (g + 1) // 2


def filtered_basis(g: int) -> FilteredBasis:
    if g < 1:
        raise ValueError("genus must be at least 1")
    return FilteredBasis(g, tuple(Differential(i) for i in range(g)))


def _require_one_mod_pi(alpha: RamifiedElem):
    if not alpha.is_one_mod_pi():
        raise HenselError("alpha must be 1 mod pi")


def pullback_matrix(alpha: RamifiedElem, g: int) -> PeriodMatrix:
    """Matrix of phi^* on Fil^1 in the basis x^i dx/y.

    For phi(x, y) = (x/alpha, y/alpha^(g+1)) one has
    phi^*(x^i dx/y) = alpha^(-i-1+g+1) x^i dx/y = alpha^(g-i) x^i dx/y.
    """
    _require_one_mod_pi(alpha)
    basis = filtered_basis(g)
    return PeriodMatrix(g, tuple(alpha ** (g - w.i) for w in basis.forms))


def minimal_period(alpha: RamifiedElem, g: int) -> MinimalPeriod:
    d = exponent(g)
    value = alpha ** d
    det = pullback_matrix(alpha, g).determinant()
    if det != value:
        raise RamperError(f"determinant of the pullback differs from alpha^{d}")
    return MinimalPeriod(value, d, value.precision)
