"""Term orders, monomial lattice laws and coefficient fields."""

import random
from fractions import Fraction

import pytest

from reglab.rings import (
    PrimeField,
    QQ,
    RingError,
    RingSpec,
    mono_deg,
    mono_deg_on,
    mono_divides,
    mono_lcm,
    mono_mul,
    ring,
)

R4 = ring("x,y,a,b", char=2)


def test_degrevlex_examples():
    # LT(f) = xya beats x^2 b
    assert R4.compare((1, 1, 1, 0), (2, 0, 0, 1)) == 1
    assert R4.compare((1, 1, 1, 0), (1, 1, 1, 0)) == 0
    # x^2 b > y^2 b: equal degree, last nonzero of the difference is negative
    assert R4.compare((2, 0, 0, 1), (0, 2, 0, 1)) == 1


def test_degree_dominates():
    random.seed(1)
    for _ in range(2000):
        m1 = tuple(random.randrange(6) for _ in range(4))
        m2 = tuple(random.randrange(6) for _ in range(4))
        if mono_deg(m1) > mono_deg(m2):
            assert R4.compare(m1, m2) == 1


def test_order_multiplicativity_bulk():
    random.seed(2)
    for _ in range(10_000):
        m1 = tuple(random.randrange(8) for _ in range(4))
        m2 = tuple(random.randrange(8) for _ in range(4))
        m = tuple(random.randrange(8) for _ in range(4))
        c = R4.compare(m1, m2)
        assert R4.compare(mono_mul(m1, m), mono_mul(m2, m)) == c


def test_lattice_laws():
    random.seed(3)
    for _ in range(2000):
        m = tuple(random.randrange(7) for _ in range(4))
        n = tuple(random.randrange(7) for _ in range(4))
        assert mono_lcm(m, m) == m
        assert mono_divides(m, mono_lcm(m, n))
        assert mono_divides(n, mono_lcm(m, n))


def test_lcm_xy_degree_inequality():
    # deg_{x,y} lcm(m1, m2) >= deg_{x,y} m2 + max(l1 - j1, l2 - j2)
    random.seed(4)
    xy = (0, 1)
    for _ in range(2000):
        m1 = tuple(random.randrange(9) for _ in range(4))
        m2 = tuple(random.randrange(9) for _ in range(4))
        q = mono_deg_on(m2, xy)
        lhs = mono_deg_on(mono_lcm(m1, m2), xy)
        assert lhs >= q + max(m1[0] - m2[0], m1[1] - m2[1])
        if m1[0] > m2[0] or m1[1] > m2[1]:
            assert lhs >= q + 1


def test_elimination_order():
    Re = RingSpec(char=2, variables=("t", "x", "y"), order=("elim", (0,)))
    # any positive t-degree beats any t-free monomial
    assert Re.compare((1, 0, 0), (0, 9, 9)) == 1
    # within equal t-block the rest is degrevlex
    assert Re.compare((1, 2, 0), (1, 0, 2)) == 1


def test_ring_validation():
    with pytest.raises(RingError):
        ring("x,y", char=4)
    with pytest.raises(RingError):
        ring("x,x", char=2)
    with pytest.raises(RingError):
        RingSpec(char=2, variables=("x",), order=("elim", (3,)))


def test_prime_field():
    F = PrimeField(5)
    assert F.add(3, 4) == 2
    assert F.mul(F.inv(3), 3) == 1
    assert F.coerce(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rationals():
    assert QQ.inv(Fraction(3, 2)) == Fraction(2, 3)
    assert QQ.coerce(7) == Fraction(7)


def test_bigrading():
    R = ring("x,y,a,b", char=2,
             bigrading={"x": (1, 0), "y": (1, 0), "a": (0, 1), "b": (0, 1)})
    assert R.bidegree((1, 1, 1, 0)) == (2, 1)
    assert R.bidegree((2, 0, 0, 1)) == (2, 1)


def test_ring_json_roundtrip():
    for R in (R4, RingSpec(char=0, variables=("t", "x"), order=("elim", (0,)))):
        assert RingSpec.from_json(R.to_json()) == R
