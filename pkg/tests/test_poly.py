"""Polynomial arithmetic, Frobenius powers, parsing and rendering."""

import random

import pytest

from reglab.poly import ParseError, Polynomial, frobenius_power, parse_polynomial, render
from reglab.rings import ring

R4 = ring("x,y,a,b", char=2)
F = parse_polynomial(R4, "x*y*a - (x^2+y^2)*b")


def test_f_normal_form_char2():
    assert render(F) == "x*y*a + x^2*b + y^2*b"
    assert F.leading_monomial() == (1, 1, 1, 0)


def test_char2_addition():
    assert (F + F).is_zero()
    two = parse_polynomial(R4, "(x+y)^2")
    assert render(two) == "x^2 + y^2"


def test_mul_example():
    x3 = parse_polynomial(R4, "x^3")
    assert render(F * x3) == "x^4*y*a + x^5*b + x^3*y^2*b"


def test_frobenius_examples():
    f8 = frobenius_power(F, 3)
    assert render(f8) == "x^8*y^8*a^8 + x^16*b^8 + y^16*b^8"
    assert frobenius_power(F, 0) == F
    p = parse_polynomial(R4, "x + y")
    assert frobenius_power(p, 2) == p * p * p * p


def test_frobenius_matches_repeated_multiplication():
    random.seed(5)
    for _ in range(40):
        terms = [
            (tuple(random.randrange(3) for _ in range(4)), 1)
            for _ in range(random.randrange(1, 5))
        ]
        p = Polynomial(R4, terms)
        for e in range(4):  # q = 2^e <= 8
            q = 2**e
            assert frobenius_power(p, e) == p**q


def test_frobenius_char0_rejected():
    R = ring("x", char=0)
    with pytest.raises(Exception):
        frobenius_power(parse_polynomial(R, "x"), 1)


def test_parse_examples():
    assert parse_polynomial(R4, "0").is_zero()
    R3 = ring("x,y", char=3)
    assert render(parse_polynomial(R3, "x^3 + 3*y^3")) == "x^3"
    # implicit multiplication and parenthesized powers
    assert parse_polynomial(R4, "2x y") == parse_polynomial(R4, "2*x*y")


def test_parse_round_trip():
    random.seed(6)
    for char in (2, 0, 5):
        R = ring("x,y,a,b", char=char)
        for _ in range(60):
            terms = [
                (
                    tuple(random.randrange(5) for _ in range(4)),
                    random.randrange(1, 7),
                )
                for _ in range(random.randrange(1, 6))
            ]
            p = Polynomial(R, terms)
            assert parse_polynomial(R, render(p)) == p


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_polynomial(R4, "x + ")
    with pytest.raises(ParseError):
        parse_polynomial(R4, "w^2")
    with pytest.raises(ParseError):
        parse_polynomial(R4, "x^")
    err = None
    try:
        parse_polynomial(R4, "x*y*)")
    except ParseError as e:
        err = e
    assert err is not None and err.position == 4


def test_ring_axioms_random():
    random.seed(7)
    for char in (2, 0):
        R = ring("x,y,a", char=char)

        def rand_poly():
            return Polynomial(
                R,
                [
                    (tuple(random.randrange(4) for _ in range(3)),
                     random.randrange(-3, 4))
                    for _ in range(random.randrange(0, 5))
                ],
            )

        for _ in range(80):
            p, q, r = rand_poly(), rand_poly(), rand_poly()
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert p + q == q + p
            assert p - p == Polynomial.zero(R)


def test_homogeneity_and_bidegree():
    R = ring("x,y,a,b", char=2,
             bigrading={"x": (1, 0), "y": (1, 0), "a": (0, 1), "b": (0, 1)})
    f = parse_polynomial(R, "x*y*a + x^2*b + y^2*b")
    assert f.is_homogeneous()
    assert f.is_bihomogeneous()
    g = parse_polynomial(R, "x + y^2")
    assert not g.is_homogeneous()


def test_power_and_monic():
    p = parse_polynomial(R4, "x + y")
    assert p**0 == Polynomial.one(R4)
    R0 = ring("x,y", char=0)
    q = parse_polynomial(R0, "2*x + 4*y")
    assert render(q.monic()) == "x + 2*y"
