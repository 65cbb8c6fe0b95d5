"""Division, S-pairs, Buchberger, certificates and ideal operations."""

import random

import pytest

from reglab.errors import Budget, BudgetError
from reglab.groebner import (
    buchberger,
    colon_element,
    colon_maximal,
    graded_dimension,
    ideal,
    ideal_equal,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    membership,
    normal_form,
    reduce_basis,
    s_polynomial,
    socle_degree_max,
    socle_witness_check,
    verify_gb_certificate,
)
from reglab.monomial import MonomialIdeal
from reglab.poly import Polynomial, frobenius_power, parse_polynomial, render
from reglab.rings import ring

R4 = ring("x,y,a,b", char=2)
F = parse_polynomial(R4, "x*y*a + (x^2+y^2)*b")
RQ = ring("x,y", char=0)


def _q_plus_fk(n, k):
    gens = [parse_polynomial(R4, f"x^{3*i}*y^{3*(n-i)}") for i in range(n + 1)]
    f = Polynomial.one(R4)
    kk, e = k, 0
    while kk:
        if kk & 1:
            f = f * frobenius_power(F, e)
        kk >>= 1
        e += 1
    return gens + [f]


def test_normal_form_examples():
    x3, y3 = parse_polynomial(R4, "x^3"), parse_polynomial(R4, "y^3")
    p = parse_polynomial(R4, "x^2*y") * F
    assert normal_form(p, [x3, y3, F]).is_zero()
    assert normal_form(F, [x3, y3]) == F  # no term reducible
    gb = buchberger(_q_plus_fk(8, 8))
    h = parse_polynomial(R4, "x^8*y^17*a^7*b^7")
    assert not normal_form(h, gb).is_zero()


def test_normal_form_idempotent():
    random.seed(11)
    gb = buchberger(_q_plus_fk(2, 2))
    for _ in range(40):
        p = Polynomial(
            R4,
            [(tuple(random.randrange(8) for _ in range(4)), 1)
             for _ in range(random.randrange(1, 6))],
        )
        r = normal_form(p, gb)
        assert normal_form(r, gb) == r


def test_s_polynomial_examples():
    g = parse_polynomial(R4, "x^9*y^15")
    f8 = frobenius_power(F, 3)
    assert render(s_polynomial(g, f8)) == "x^17*y^7*b^8 + x*y^23*b^8"
    assert s_polynomial(g, g).is_zero()
    a = parse_polynomial(RQ, "x^2+y^2")
    b = parse_polynomial(RQ, "x*y")
    assert render(s_polynomial(a, b)) == "y^3"


def test_buchberger_hand_example():
    a = parse_polynomial(RQ, "x^2+y^2")
    b = parse_polynomial(RQ, "x*y")
    gb = buchberger([a, b])
    assert sorted(render(g) for g in gb) == ["x*y", "x^2 + y^2", "y^3"]
    ok, fails = verify_gb_certificate([a, b])
    assert not ok and render(fails[0].remainder) == "y^3"


def test_buchberger_monomial_trivial():
    gens = [parse_polynomial(R4, "x^3"), parse_polynomial(R4, "y^3")]
    assert buchberger(gens) == reduce_basis(gens)


def test_buchberger_q8_f8():
    gb = buchberger(_q_plus_fk(8, 8))
    assert len(gb) == 16
    ok, _ = verify_gb_certificate(gb)
    assert ok


def test_certificate_threads_match():
    G = buchberger(_q_plus_fk(4, 4))
    ok1, _ = verify_gb_certificate(G, threads=1)
    ok2, _ = verify_gb_certificate(G, threads=4)
    assert ok1 and ok2


def test_reduced_gb_unique_under_permutation():
    random.seed(12)
    gens = _q_plus_fk(4, 2)
    base = buchberger(list(gens))
    for _ in range(4):
        shuffled = list(gens)
        random.shuffle(shuffled)
        assert buchberger(shuffled) == base


def test_self_certification_battery():
    for n, k in ((2, 1), (2, 2), (4, 2), (4, 4)):
        gb = buchberger(_q_plus_fk(n, k))
        ok, _ = verify_gb_certificate(gb)
        assert ok, (n, k)


def test_membership_and_equality():
    I = ideal(R4, _q_plus_fk(8, 8))
    f8 = frobenius_power(F, 3)
    assert membership(f8, I)
    A = ideal_power(ideal(R4, [F]), 8)
    B = ideal(R4, [f8])
    assert ideal_equal(A, B)
    Q2 = ideal_power(ideal(R4, [parse_polynomial(R4, "x^3"), parse_polynomial(R4, "y^3")]), 2)
    C = ideal(R4, [parse_polynomial(R4, s) for s in ("x^6", "x^3*y^3", "y^6")])
    assert ideal_equal(Q2, C)


def test_intersect_examples():
    A = ideal(R4, [parse_polynomial(R4, "x^3")])
    B = ideal(R4, [parse_polynomial(R4, "y^3")])
    K = intersect(A, B)
    assert [render(g) for g in K.generators] == ["x^3*y^3"]

    # membership cross-check oracle on a non-monomial intersection
    P = ideal(RQ, [parse_polynomial(RQ, "x^2+y^2"), parse_polynomial(RQ, "x*y")])
    X = ideal(RQ, [parse_polynomial(RQ, "x")])
    K2 = intersect(P, X)
    for g in K2.generators:
        assert membership(g, P) and membership(g, X)


def test_intersect_q_with_fz():
    # I = Q ∩ (f, z) in five variables; its stated degree-6 minimal generator
    S = ring("x,y,a,b,z", char=2)
    fS = parse_polynomial(S, "x*y*a + (x^2+y^2)*b")
    z = Polynomial.variable(S, "z")
    Q = ideal(S, [parse_polynomial(S, "x^3"), parse_polynomial(S, "y^3")])
    I = intersect(Q, ideal(S, [fS, z]))
    g = parse_polynomial(S, "x*y^4*a + x^2*y^3*b + y^5*b")
    assert membership(g, I)
    for h in I.generators:
        assert membership(h, Q)
        assert membership(h, ideal(S, [fS, z]))


def test_colon_examples():
    I = ideal(RQ, [parse_polynomial(RQ, "x^2"), parse_polynomial(RQ, "x*y")])
    C = colon_element(I, parse_polynomial(RQ, "x"))
    expect = ideal(RQ, [parse_polynomial(RQ, "x"), parse_polynomial(RQ, "y")])
    assert ideal_equal(C, expect)
    CM = colon_maximal(I)
    assert ideal_equal(CM, ideal(RQ, [parse_polynomial(RQ, "x")]))
    one = Polynomial.one(RQ)
    assert ideal_equal(colon_element(I, one), I)


def test_colon_soundness_random():
    random.seed(13)
    for _ in range(10):
        gens = [
            Polynomial(
                RQ,
                [(tuple(random.randrange(4) for _ in range(2)), random.randrange(1, 4))
                 for _ in range(random.randrange(1, 3))],
            )
            for _ in range(2)
        ]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        I = ideal(RQ, gens)
        h = parse_polynomial(RQ, "x + y")
        C = colon_element(I, h)
        for g in C.generators:
            assert membership(g * h, I)


def test_socle_examples():
    Rxy = ring("x,y", char=2)
    I = ideal(Rxy, [parse_polynomial(Rxy, "x^2"), parse_polynomial(Rxy, "y^2")])
    assert socle_witness_check(parse_polynomial(Rxy, "x*y"), I)
    assert socle_degree_max(I) == 2

    I8 = ideal(R4, _q_plus_fk(8, 8))
    h = parse_polynomial(R4, "x^8*y^17*a^7*b^7")
    assert socle_witness_check(h, I8)
    assert socle_degree_max(I8) == 39

    J = ideal(Rxy, [parse_polynomial(Rxy, "x")])
    assert socle_degree_max(J) is None


def test_graded_dimension_examples():
    I = ideal(RQ, [parse_polynomial(RQ, "x^3"), parse_polynomial(RQ, "y^3")])
    assert graded_dimension(I, 4) == 1  # only x^2 y^2
    assert graded_dimension(I, 0) == 1
    I2 = ideal(RQ, [parse_polynomial(RQ, "x^2+y^2"), parse_polynomial(RQ, "x*y")])
    assert graded_dimension(I2, 2) == 1


def test_budget_errors():
    tiny = Budget(max_steps=3)
    with pytest.raises(BudgetError):
        buchberger(_q_plus_fk(4, 4), budget=tiny)
    tiny_deg = Budget(max_degree=2)
    with pytest.raises(BudgetError):
        normal_form(
            parse_polynomial(R4, "x^9*y^9"),
            [parse_polynomial(R4, "x^3 + a^2*b")],
            budget=tiny_deg,
        )


def test_initial_ideal_trivial():
    from reglab.groebner import initial_ideal_exponents

    I = ideal(R4, [parse_polynomial(R4, "x^3"), parse_polynomial(R4, "y^3")])
    M = MonomialIdeal(R4, initial_ideal_exponents(I))
    assert M == MonomialIdeal(R4, [(3, 0, 0, 0), (0, 3, 0, 0)])
