"""Explicit family builders and replication drivers."""

import pytest

from reglab.errors import ReglabError
from reglab.groebner import normal_form, s_polynomial
from reglab.poly import parse_polynomial, render
from reglab.rings import mono_deg
from reglab.theorems import (
    TheoremFamilySpec,
    build_theorem_family,
    conjectured_char0_reg,
    f_polynomial,
    q_gens,
    standard_ring,
    stated_initial_ideal,
    stated_witness,
    symbolic_reg_bracket,
    verify_theorem,
)

R = standard_ring()


def test_spec_validation():
    with pytest.raises(ReglabError):
        TheoremFamilySpec("gb2powers", 6)  # not a 2-power
    with pytest.raises(ReglabError):
        TheoremFamilySpec("gb2powers", 4)  # s < 3
    with pytest.raises(ReglabError):
        TheoremFamilySpec("gb3times2power", 48)  # s = 4 even
    with pytest.raises(ReglabError):
        TheoremFamilySpec("gb3times2power", 12)  # s = 2 < 3
    with pytest.raises(ReglabError):
        TheoremFamilySpec("double2powers", 8, 8)  # k = n not allowed here
    with pytest.raises(ReglabError):
        TheoremFamilySpec("double2powers", 8, 3)  # k not a 2-power
    with pytest.raises(ReglabError):
        TheoremFamilySpec("unknown", 8)


def test_family_counts_and_degrees():
    cases = [
        ("gb2powers", 8, None, 16, 33),
        ("gb2powers", 16, None, 30, 65),
        ("gb3times2power", 24, None, 63, 137),
        ("double2powers", 16, 8, 44, 72),
        ("double2powers", 8, 4, 23, 36),
        ("double2powers", 8, 2, 24, 28),
        ("double2powers", 8, 1, 25, 26),
    ]
    for theorem, n, k, count, maxdeg in cases:
        spec = TheoremFamilySpec(theorem, n, k)
        fam = build_theorem_family(spec)
        assert len(fam) == count == spec.expected_count(), (theorem, n, k)
        assert max(p.degree() for _, p in fam) == maxdeg == spec.expected_max_degree()
        assert all(p.is_bihomogeneous() for _, p in fam)


def test_witness_degrees():
    # stated values: 5n-1, 6n-1, 3n+3k-2
    assert stated_witness(TheoremFamilySpec("gb2powers", 8)).degree() == 39
    assert stated_witness(TheoremFamilySpec("gb3times2power", 24)).degree() == 143
    assert stated_witness(TheoremFamilySpec("double2powers", 16, 8)).degree() == 70


def test_stated_initial_matches_leading_terms_small():
    for theorem, n, k in (("gb2powers", 8, None), ("double2powers", 8, 4),
                          ("double2powers", 8, 2), ("double2powers", 8, 1)):
        spec = TheoremFamilySpec(theorem, n, k)
        fam = build_theorem_family(spec)
        from reglab.monomial import MonomialIdeal

        lts = MonomialIdeal(R, [p.leading_monomial() for _, p in fam])
        assert lts == stated_initial_ideal(spec)


def test_spair_membership_identity():
    # the type-3 generators of the s-odd family arise as S(f_1, f_2)
    f = f_polynomial(R)
    from reglab.poly import frobenius_power

    n = 8
    f2 = frobenius_power(f, 3)
    i3 = 1
    i1 = i3 + (n + 1) // 3
    f1 = parse_polynomial(R, f"x^{3*i1}*y^{3*(n-i1)}")
    s = s_polynomial(f1, f2)
    x2n = parse_polynomial(R, f"x^{2*n}+y^{2*n}")
    f3 = x2n * parse_polynomial(R, f"x^{3*i3+1}*y^{n-1-3*i3}*b^{n}")
    assert s == f3


def test_verify_gb2powers_8():
    rep = verify_theorem("gb2powers", 8, use_cache=False)
    assert rep.passed, rep.summary()
    assert rep.artifacts["reg_lower"] == 40
    assert rep.artifacts["reg_upper"] <= 42


def test_verify_double2powers_small():
    for k in (1, 2, 4):
        rep = verify_theorem("double2powers", 8, k, use_cache=False)
        assert rep.passed, rep.summary()
        assert rep.artifacts["reg_lower"] == 3 * 8 + 3 * k - 1


def test_report_determinism():
    a = verify_theorem("gb2powers", 8, use_cache=False).to_json()
    b = verify_theorem("gb2powers", 8, use_cache=False).to_json()
    assert a["content_hash"] == b["content_hash"]
    assert "timings" in a  # segregated, not hashed


def test_symbolic_bracket_n2_direct_checks():
    rep = symbolic_reg_bracket(2, use_cache=False)
    assert rep.passed, rep.summary()
    ids = {a["id"] for a in rep.assertions}
    assert "decomposition_hilbert_identity" in ids
    assert "intersection_inside_both_factors" in ids
    assert "ordinary_power_inside_symbolic" in ids
    assert "intersection_hilbert_identity" in ids
    assert rep.artifacts["formula_status"] == "applicable"


def test_conjectured_values():
    assert conjectured_char0_reg(1) == 5  # g(1) = 1
    assert conjectured_char0_reg(4) == 22  # g(4) = 9


def test_natural_generators():
    assert len(q_gens(R, 3)) == 4
    assert render(f_polynomial(R)) == "x*y*a + x^2*b + y^2*b"
