"""reglab: exact Groebner bases, monomial-ideal regularity, Newton polyhedra
and asymptotic-regularity experiments for graded families of ideals."""

from .betti import (
    BettiTable,
    RegBracket,
    betti_numbers,
    cm_regularity,
    reg_bracket_splitting,
    regularity_or_bracket,
)
from .errors import Budget, BudgetError, ReglabError, ThresholdError
from .families import (
    AsymptoticReport,
    GradedFamily,
    ValuationTable,
    asymptotic_report,
    check_graded,
    closure_powers_family,
    delta_family_sample,
    explicit_family,
    family_from_json,
    groebner_valuation_values,
    mixed_family,
    noetherian_stabilization_test,
    parse_growth,
    powers_family,
    preset_family,
    symbolic_min_powers_family,
    truncation_family,
)
from .groebner import (
    IdealPresentation,
    SPairCertificate,
    buchberger,
    colon_element,
    colon_maximal,
    graded_dimension,
    ideal,
    ideal_equal,
    ideal_power,
    ideal_product,
    ideal_sum,
    initial_ideal_exponents,
    intersect,
    membership,
    normal_form,
    reduce_basis,
    s_polynomial,
    socle_degree_max,
    socle_witness_check,
    verify_gb_certificate,
)
from .monomial import (
    MonomialIdeal,
    max_ideal_power,
    monomial_ideal_from_strings,
    q_power_ideal,
    q_power_membership,
)
from .poly import ParseError, Polynomial, frobenius_power, parse_polynomial, render
from .polyhedra import MonoPolyhedron, newton_polyhedron
from .rings import PrimeField, QQ, RingSpec, ring
from .theorems import (
    ExperimentReport,
    TheoremFamilySpec,
    build_theorem_family,
    conjecture_char0_harness,
    conjectured_char0_reg,
    nolimit_evidence,
    stated_initial_ideal,
    stated_witness,
    symbolic_reg_bracket,
    verify_theorem,
)

__version__ = "0.1.0"
