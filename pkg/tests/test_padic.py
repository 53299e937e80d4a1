from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ramper.errors import HenselError, PrecisionError
from ramper.padic import PadicNumber, RamifiedElem, embed, hensel_root
from ramper.quadfield import QuadElem

from oracles import pi_digits, rational_mod, root_by_digits, roots_mod_p2

rationals = st.fractions(min_value=-200, max_value=200, max_denominator=60)


@st.composite
def quad_elems(draw, p):
    return QuadElem(p, draw(rationals), draw(rationals))


# -- PadicNumber -------------------------------------------------------------

def test_from_rational_examples():
    x = PadicNumber.from_rational(Fraction(1, 5), 10, 5)
    assert x.valuation == -1 and x.unit == 1
    y = PadicNumber.from_rational(36, 3, 5)
    assert y.valuation == 0
    assert y.digits() == [1, 2, 1]  # 36 = 1 + 2*5 + 1*25
    z = PadicNumber.from_rational(0, 7, 5)
    assert z.is_zero() and z.precision == 7
    assert PadicNumber.from_rational(125, 3, 5).is_zero()


def test_from_rational_against_modular_oracle():
    for q in [Fraction(2, 3), Fraction(-7, 11), Fraction(40, 9), Fraction(3, 50)]:
        x = PadicNumber.from_rational(q, 12, 5)
        scaled = q / Fraction(5) ** x.valuation
        assert x.unit == rational_mod(scaled, 5, 12 - x.valuation)


def test_invariants_enforced():
    with pytest.raises(ValueError):
        PadicNumber(5, 0, 10, 3)     # unit divisible by p
    with pytest.raises(ValueError):
        PadicNumber(5, 3, 1, 3)      # valuation not below precision
    with pytest.raises(ValueError):
        PadicNumber(5, None, 1, 3)   # zero marker with digits


def test_precision_rules():
    p = 5
    a = PadicNumber.from_rational(3, 10, p)
    b = PadicNumber.from_rational(25, 6, p)
    assert (a + b).precision == 6
    prod = a * b
    assert prod.valuation == 2 and prod.precision == min(0 + 6, 2 + 10)
    inv = b.inverse()
    assert inv.valuation == -2 and inv.relative_precision == b.relative_precision
    # cancellation loses relative precision but never invents digits
    c = PadicNumber.from_rational(1, 8, p) - PadicNumber.from_rational(1 + 5 ** 8, 9, p)
    assert c.is_zero() and c.precision == 8


def test_inverse_of_zero_names_precision():
    with pytest.raises(PrecisionError) as err:
        PadicNumber.zero(5, 9).inverse()
    assert err.value.needed == 10
    assert "9" in str(err.value)


@given(rationals, rationals)
def test_padic_ring_hom(q1, q2):
    p, n = 13, 20
    a, b = (PadicNumber.from_rational(q, n, p) for q in (q1, q2))
    prod = a * b
    assert prod == PadicNumber.from_rational(q1 * q2, prod.precision, p)
    s = a + b
    assert s == PadicNumber.from_rational(q1 + q2, s.precision, p)


# -- RamifiedElem ------------------------------------------------------------

def test_pi_arithmetic():
    p, n = 5, 10
    one = RamifiedElem.one(p, n)
    pi = RamifiedElem.pi(p, n)
    assert (one + pi) * (one - pi) == RamifiedElem.from_rational(1 - p, n, p)
    assert pi * pi == RamifiedElem.from_rational(p, n + 1, p).truncate((pi * pi).precision)
    inv = pi.inverse()
    assert inv.valuation == -1
    assert (inv * pi - 1).is_zero()
    assert pi.conjugate() == -pi


def test_precision_accounting():
    p, n = 5, 10
    pi = RamifiedElem.pi(p, n)
    assert pi.precision == 2 * n and pi.valuation == 1
    assert (pi * pi).precision == 2 * n + 1
    assert pi.inverse().precision == 2 * n - 2


def test_inverse_of_integer():
    for c in [2, 3, 4, 7, 12]:
        inv = embed(QuadElem(13, c), 15).inverse()
        assert inv == RamifiedElem.from_rational(Fraction(1, c), 15, 13)


def test_inverse_of_zero_raises():
    with pytest.raises(PrecisionError):
        RamifiedElem.from_pi_precision(5, 0, 0, 12).inverse()


def test_embed_examples():
    assert embed(QuadElem.sqrt_p(5), 8) == RamifiedElem.pi(5, 8)
    assert embed(QuadElem(5, 36, 16), 8).valuation == 0
    assert embed(QuadElem(5, 10, 4), 8).valuation == 1


@settings(max_examples=60)
@given(st.data())
def test_embed_is_ring_hom(data):
    p = data.draw(st.sampled_from([5, 13, 17]))
    e1, e2 = data.draw(quad_elems(p)), data.draw(quad_elems(p))
    n = 30
    prod = embed(e1, n) * embed(e2, n)
    assert prod == embed(e1 * e2, 2 * n + 20).truncate(prod.precision)
    s = embed(e1, n) + embed(e2, n)
    assert s == embed(e1 + e2, n).truncate(s.precision)


@settings(max_examples=60)
@given(st.data())
def test_conjugation_compatible(data):
    p = data.draw(st.sampled_from([5, 13, 17]))
    e = data.draw(quad_elems(p))
    assert embed(e, 20).conjugate() == embed(e.conjugate(), 20)
    u = embed(e, 20)
    assert (u * u.conjugate()).is_in_base_field()


@settings(max_examples=60)
@given(st.data())
def test_valuation_additive_and_matches_field(data):
    p = data.draw(st.sampled_from([5, 13]))
    e1, e2 = data.draw(quad_elems(p)), data.draw(quad_elems(p))
    if e1 and e2:
        u1, u2 = embed(e1, 25), embed(e2, 25)
        assert u1.valuation == e1.valuation_ramified()
        assert (u1 * u2).valuation == u1.valuation + u2.valuation


def test_pi_digits_roundtrip():
    u = embed(QuadElem(5, Fraction(7, 25), 3), 12)
    data = u.to_json()
    assert data["valuation"] == -4
    assert all(0 <= d < 5 for d in data["digits"])
    assert len(data["digits"]) == data["precision"] - data["valuation"]
    assert RamifiedElem.from_json(data, 5) == u


def test_pi_digits_explicit():
    # 1 + 2 pi + 3 pi^2 + 4 pi^3 = (1 + 3*5) + (2 + 4*5) pi
    u = RamifiedElem.from_pi_precision(5, 16, 22, 4)
    assert u.to_json() == {"valuation": 0, "digits": [1, 2, 3, 4], "precision": 4}


def test_zero_serialization():
    z = RamifiedElem.from_pi_precision(5, 0, 0, 9)
    assert z.to_json() == {"valuation": None, "digits": [], "precision": 9}
    assert RamifiedElem.from_json(z.to_json(), 5) == z


def test_from_json_rejects_bad_digits():
    with pytest.raises(ValueError):
        RamifiedElem.from_json({"valuation": 0, "digits": [1, 7], "precision": 2}, 5)
    with pytest.raises(ValueError):
        RamifiedElem.from_json({"valuation": 0, "digits": [1], "precision": 2}, 5)


# -- hensel_root ---------------------------------------------------------------

def test_hensel_trivial_cases():
    p, n = 5, 12
    one = RamifiedElem.one(p, n)
    assert hensel_root(one, 4, n) == one
    t = embed(QuadElem(p, 36, 16), n)
    assert hensel_root(t, 1, n) == t


def test_hensel_example_matches_brute_force():
    p, n = 5, 50
    t = embed(QuadElem(p, 36, 16), n)
    alpha = hensel_root(t, 4, n)
    assert alpha.is_one_mod_pi()
    assert (alpha ** 4 - t).is_zero()
    roots = roots_mod_p2(36, 16, 4, p)
    assert roots == [(21, 19)]
    assert (alpha.a.residue_int() % 25, alpha.b.residue_int() % 25) == (21, 19)


@pytest.mark.parametrize("p,m", [(13, 4), (17, 4), (5, 12), (29, 6)])
def test_hensel_uniqueness_vs_brute_force(p, m):
    t_a, t_b = 1 + 3 * p, 2 + p
    t = RamifiedElem.from_pi_precision(p, t_a, t_b, 40)
    alpha = hensel_root(t, m, 20)
    roots = roots_mod_p2(t_a, t_b, m, p)
    assert roots == [(alpha.a.residue_int() % p ** 2, alpha.b.residue_int() % p ** 2)]


def test_hensel_errors():
    p = 5
    with pytest.raises(HenselError, match="precondition"):
        hensel_root(embed(QuadElem(p, 2, 1), 10), 4, 10)
    with pytest.raises(HenselError):
        hensel_root(RamifiedElem.one(p, 10), 10, 10)
    with pytest.raises(PrecisionError) as err:
        hensel_root(embed(QuadElem(p, 36, 16), 10), 4, 20)
    assert err.value.needed == 40


def test_hensel_iteration_count(monkeypatch):
    import math
    calls = []
    orig = RamifiedElem.lift

    def spy(self, precision):
        calls.append(precision)
        return orig(self, precision)

    monkeypatch.setattr(RamifiedElem, "lift", spy)
    n = 50
    hensel_root(embed(QuadElem(5, 36, 16), n), 4, n)
    assert len(calls) == math.ceil(math.log2(n)) + 1
    assert calls[-1] == 2 * n


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_hensel_residual(data):
    p = data.draw(st.sampled_from([5, 13, 17]))
    m = data.draw(st.sampled_from([2, 4, 6, 12]).filter(lambda m: m % p))
    r = data.draw(st.integers(0, 10 ** 6))
    s = data.draw(st.integers(0, 10 ** 6))
    n = data.draw(st.integers(1, 40))
    t = RamifiedElem.from_pi_precision(p, 1 + p * r, s, 2 * n)
    alpha = hensel_root(t, m, n)
    assert alpha.precision == 2 * n
    assert alpha.is_one_mod_pi()
    assert (alpha ** m - t).is_zero()


@pytest.mark.parametrize("p,t_a,t_b,m", [
    (5, 36, 16, 4),
    (13, 1 + 13 * 7, 3, 4),
    (17, 1 + 17 * 2, 5, 4),
    (5, 1 + 5 * 3, 2, 12),
])
def test_hensel_digits_match_digit_lifting(p, t_a, t_b, m):
    k = 6
    a, b = root_by_digits(t_a, t_b, m, p, k)
    alpha = hensel_root(RamifiedElem.from_pi_precision(p, t_a, t_b, 40), m, 20)
    assert alpha.to_json()["digits"][:2 * k] == pi_digits(a, b, p, 2 * k)
