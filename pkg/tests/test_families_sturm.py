from fractions import Fraction
from math import gcd

import pytest
from conftest import counted, expand_roots, int_polys
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from realroots.errors import OracleError
from realroots.families import clustered, gen_family, mignotte, nested_mignotte, random_uniform, wilkinson
from realroots.sturm import is_square_free, poly_gcd, sign_at, square_free_part, sturm_count

F = Fraction


def test_mignotte_small():
    # x^5 - 9x^2 + 6x - 1
    assert mignotte(5, 4) == [-1, 6, -9, 0, 0, 1]


def test_divisibility_checks():
    with pytest.raises(ValueError):
        mignotte(5, 3)
    with pytest.raises(ValueError):
        nested_mignotte(10, 16)
    with pytest.raises(ValueError):
        clustered(7)
    with pytest.raises(ValueError):
        gen_family("chebyshev", 4, 0)


def _mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


@pytest.mark.parametrize("n,tau", [(4, 8), (8, 16), (12, 24)])
def test_nested_mignotte_matches_product(n, tau):
    a = 2 ** (tau // 8) - 1
    expected = [1]
    for i in range(1, 5):
        inner = [1]
        for _ in range(2 * i):
            inner = _mul(inner, [-1, 0, a])
        factor = [-c for c in inner]
        factor += [0] * max(0, n // 4 + 1 - len(factor))
        factor[n // 4] += 1
        expected = _mul(expected, factor)
    while expected[-1] == 0:
        expected.pop()
    assert nested_mignotte(n, tau) == expected


@pytest.mark.property
@settings(max_examples=100)
@given(st.integers(3, 40), st.integers(1, 30).map(lambda t: 2 * t), st.fractions(-3, 3, max_denominator=16))
@counted
def test_mignotte_values_match_formula(n, tau, x):
    P = mignotte(n, tau)
    a = 2 ** (tau // 2) - 1
    assert sum(c * x**i for i, c in enumerate(P)) == x**n - (a * x - 1) ** 2


def test_random_and_clustered_are_seeded():
    assert random_uniform(20, 16, 5) == random_uniform(20, 16, 5)
    assert random_uniform(20, 16, 5) != random_uniform(20, 16, 6)
    assert clustered(16, 2) == clustered(16, 2)
    c = clustered(16, 2)
    assert len(c) == 17 and c[-1] > 0
    assert all(abs(v) < 2**16 for v in random_uniform(30, 16, 1))


def test_wilkinson():
    assert wilkinson(3) == [-6, 11, -6, 1]
    assert sturm_count(wilkinson(20)) == 20


@pytest.mark.parametrize(
    "coeffs,interval,count",
    [([-2, 0, 1], (0, 2), 1), (wilkinson(5), (0, 6), 5), ([1, 0, 1], (-10, 10), 0), ([-2, 0, 1], None, 2)],
)
def test_sturm_examples(coeffs, interval, count):
    assert sturm_count(coeffs, interval) == count


def test_sturm_endpoint_conventions():
    # open interval: a root at either end is not counted
    assert sturm_count(wilkinson(3), (1, 3)) == 1
    assert sturm_count(wilkinson(3), (F(1, 2), 3)) == 2


def test_sturm_errors():
    with pytest.raises(OracleError):
        sturm_count([1, -2, 1])
    with pytest.raises(OracleError):
        sturm_count(wilkinson(70))
    assert sturm_count(wilkinson(70), degree_cap=80) == 70


def test_square_free_helpers():
    p = _mul(_mul([-1, 1], [-1, 1]), [2, 1])  # (x-1)^2 (x+2)
    assert not is_square_free(p)
    dp = [i * c for i, c in enumerate(p) if i]
    assert poly_gcd(p, dp) == [-1, 1]
    assert square_free_part(p) == [-2, 1, 1]


@pytest.mark.property
@settings(max_examples=300)
@given(st.lists(st.fractions(-10, 10, max_denominator=50), min_size=1, max_size=9, unique=True),
       st.fractions(-12, 12, max_denominator=8), st.fractions(0, 24, max_denominator=8))
@counted
def test_sturm_counts_known_roots(roots, a, w):
    assume(w > 0)
    b = a + w
    cs = expand_roots(roots)
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    coeffs = [int(c * den) for c in cs]
    expected = sum(1 for r in roots if a < r < b)
    assert sturm_count(coeffs, (a, b)) == expected
    assert sturm_count(coeffs) == len(roots)


@pytest.mark.property
@settings(max_examples=200)
@given(int_polys(max_deg=8, bits=6))
@counted
def test_square_free_part_keeps_roots(coeffs):
    sf = square_free_part(coeffs)
    assert is_square_free(sf)
    for x in (F(k, 4) for k in range(-40, 41)):
        assert (sign_at(coeffs, x) == 0) == (sign_at(sf, x) == 0)
