import pytest
from sympy import continued_fraction_periodic

from ramper.errors import PellError
from ramper.pell import (PellSolution, cf_sqrt, convergents, fundamental_negative,
                         solution_at, solutions)
from ramper.quadfield import QuadElem

from oracles import pell_brute

TEST_PRIMES = [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101, 109, 113]


@pytest.mark.parametrize("n,expected", [
    (5, (2, [4])),
    (2, (1, [2])),
    (13, (3, [1, 1, 1, 1, 6])),
])
def test_cf_sqrt_examples(n, expected):
    assert cf_sqrt(n) == expected


@pytest.mark.parametrize("n", [2, 3, 5, 7, 13, 19, 31, 46, 94, 151, 181])
def test_cf_sqrt_matches_sympy(n):
    a0, period = cf_sqrt(n)
    assert [a0, period] == continued_fraction_periodic(0, 1, n)


def test_cf_sqrt_rejects_squares():
    with pytest.raises(ValueError):
        cf_sqrt(49)


def test_convergents_approach_sqrt():
    a0, period = cf_sqrt(13)
    hs = list(convergents(a0, period * 3))
    # consecutive convergents satisfy h_k q_{k-1} - h_{k-1} q_k = +-1
    for (h1, q1), (h2, q2) in zip(hs, hs[1:]):
        assert abs(h2 * q1 - h1 * q2) == 1


@pytest.mark.parametrize("p,expected", [(5, (2, 1)), (13, (18, 5)), (17, (4, 1))])
def test_fundamental_examples(p, expected):
    s = fundamental_negative(p)
    assert (s.x, s.y) == expected
    assert pell_brute(p, 100) == expected


@pytest.mark.parametrize("p", TEST_PRIMES)
def test_fundamental_agrees_with_search(p):
    s = fundamental_negative(p)
    brute = pell_brute(p, 1000)
    if brute is not None:
        assert (s.x, s.y) == brute
    else:
        assert s.y > 1000
    assert s.x ** 2 - p * s.y ** 2 == -1


def test_fundamental_rejects_bad_p():
    with pytest.raises(ValueError):
        fundamental_negative(7)


def test_pell_solution_invariant():
    with pytest.raises(PellError):
        PellSolution(5, 3, 1)


def test_solution_at():
    assert solution_at(5, 0) == QuadElem(5, 2, 1)
    assert solution_at(5, 1) == QuadElem(5, 38, 17)
    assert 38 ** 2 - 5 * 17 ** 2 == -1


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_solutions_norm_and_distinct(p):
    sols = solutions(p, 6)
    values = [solution_at(p, k) for k in range(6)]
    assert [s.as_quad() for s in sols] == values
    for v in values:
        assert v.norm() == -1
    xs = [v.x for v in values]
    assert xs == sorted(xs) and len(set(xs)) == len(xs)
    assert [s.index for s in sols] == list(range(6))
