"""Small polynomial kernels: sparse bivariate polynomials and dense F_p[x]."""

from __future__ import annotations


class BiPoly:
    """Sparse polynomial in X, Y; ``terms`` maps (i, j) to the coefficient of X^i Y^j.

    Coefficients can be anything supporting +, * and comparison with 0
    (ints, Fractions, QuadElem).
    """

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def X(cls, c=1):
        return cls({(1, 0): c})

    @classmethod
    def Y(cls, c=1):
        return cls({(0, 1): c})

    def _lift(self, other):
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __repr__(self):
        return f"BiPoly({self.terms!r})"


# -- F_p[x], coefficient lists lowest degree first ---------------------------

def fp_trim(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def fp_mod(f: list[int], g: list[int], p: int) -> list[int]:
    f = fp_trim(f, p)
    g = fp_trim(g, p)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        q = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - q * c) % p
        f = fp_trim(f, p)
    return f


def fp_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    """Monic gcd in F_p[x]; [] for gcd(0, 0)."""
    f, g = fp_trim(f, p), fp_trim(g, p)
    while g:
        f, g = g, fp_mod(f, g, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def fp_derivative(f: list[int], p: int) -> list[int]:
    return fp_trim([i * c for i, c in enumerate(f)][1:], p)
