import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from codeweights.cyclotomic import (
    CycInt,
    cyc_is_rational,
    cyc_root,
    cyc_sum,
    g_power,
    gauss_sum,
    gaussian_period,
    p_star,
)
from codeweights.errors import OddExponentValue, PrimeMismatch
from codeweights.gf import legendre

PRIMES = [3, 5, 7, 11, 13]


def numeric(z: CycInt) -> complex:
    w = cmath.exp(2j * cmath.pi / z.p)
    return sum(c * w ** k for k, c in enumerate(z.coeffs))


coeffs7 = st.lists(st.integers(-20, 20), min_size=6, max_size=6)


@given(coeffs7, coeffs7, coeffs7)
def test_ring_axioms(a, b, c):
    a, b, c = CycInt(7, a), CycInt(7, b), CycInt(7, c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6


def test_roots_of_unity():
    for p in PRIMES:
        z = cyc_root(p, 1)
        assert z ** p == 1
        assert cyc_sum(p, (cyc_root(p, k) for k in range(p))) == 0
        assert cyc_root(p, p - 1) == CycInt(p, [-1] * (p - 1))


@pytest.mark.parametrize("p", PRIMES)
def test_gauss_sum_square(p):
    g = gauss_sum(p)
    assert g * g == p_star(p)
    assert g * g == legendre(-1, p) * p
    assert cyc_is_rational(g) is None


@pytest.mark.parametrize("p", PRIMES)
def test_gaussian_periods(p):
    r0, r1 = gaussian_period(0, p), gaussian_period(1, p)
    assert r0 + r1 == -1
    assert 2 * r0 + 1 == gauss_sum(p)


@pytest.mark.parametrize("p", PRIMES)
def test_character_orthogonality(p):
    for a in range(p):
        s = cyc_sum(p, (cyc_root(p, a * x) for x in range(p)))
        assert s == (p if a == 0 else 0)
    for a in range(1, p):
        assert sum(legendre(a * x, p) for x in range(1, p)) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_galois_action_on_gauss_sum(p):
    g = gauss_sum(p)
    for a in range(1, p):
        assert g.galois(a) == legendre(a, p) * g


def test_g_power_values():
    assert g_power(3, 2).value() == -3
    assert g_power(5, 4).value() == 25
    assert g_power(7, 0).value() == 1
    assert g_power(3, -2).rational() == Fraction(-1, 3)
    with pytest.raises(OddExponentValue):
        g_power(3, 3).value()
    for p in PRIMES:
        for k in range(6):
            assert g_power(p, k).as_cycint() == gauss_sum(p) ** k


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        CycInt.integer(3, 1) + CycInt.integer(5, 1)
