"""Independent reference computations used to freeze expected values.

Nothing here imports ramper's arithmetic.
"""
from fractions import Fraction
from math import isqrt


def pell_brute(p, bound):
    """Smallest (x, y), y <= bound, with x^2 - p y^2 = -1, or None."""
    for y in range(1, bound + 1):
        s = p * y * y - 1
        x = isqrt(s)
        if x * x == s:
            return x, y
    return None


def quad_mul(u, v, p):
    """(x1 + y1 sqrt p)(x2 + y2 sqrt p) on plain tuples."""
    return (u[0] * v[0] + p * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def quad_pow(u, n, p):
    r = (Fraction(1), Fraction(0))
    for _ in range(n):
        r = quad_mul(r, u, p)
    return r


def roots_mod_p2(t_a, t_b, m, p):
    """All (A, B) mod p^2 with A = 1 mod p and (A + B pi)^m = t_a + t_b pi mod p^2."""
    mod = p * p
    target = (t_a % mod, t_b % mod)
    found = []
    for a in range(1, mod, p):
        for b in range(mod):
            r = (1, 0)
            for _ in range(m):
                r = ((r[0] * a + p * r[1] * b) % mod, (r[0] * b + r[1] * a) % mod)
            if r == target:
                found.append((a, b))
    return found


def rational_mod(q, p, k):
    """Integer congruent to a p-integral rational modulo p^k."""
    q = Fraction(q)
    mod = p ** k
    return q.numerator * pow(q.denominator, -1, mod) % mod


def root_by_digits(t_a, t_b, m, p, k):
    """Root = 1 mod pi of (A + B pi)^m = t, lifted one p-adic digit pair at a time.

    Pure brute force over the p^2 candidate next digits; returns (A, B) mod p^k.
    """
    roots = roots_mod_p2(t_a, t_b, m, p)
    assert len(roots) == 1
    a, b = roots[0]
    for j in range(2, k):
        mod = p ** (j + 1)
        hits = []
        for i in range(p):
            for h in range(p):
                ca, cb = a + i * p ** j, b + h * p ** j
                r = (1, 0)
                for _ in range(m):
                    r = ((r[0] * ca + p * r[1] * cb) % mod, (r[0] * cb + r[1] * ca) % mod)
                if r == (t_a % mod, t_b % mod):
                    hits.append((ca, cb))
        assert len(hits) == 1
        a, b = hits[0]
    return a, b


def pi_digits(a, b, p, count):
    """First ``count`` pi-adic digits of the integral unit a + b pi."""
    out = []
    for _ in range(count):
        d = a % p
        out.append(d)
        a, b = b, (a - d) // p
    return out
