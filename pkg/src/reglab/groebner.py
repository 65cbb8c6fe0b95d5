"""Division, S-polynomials, Buchberger, certificates and ideal operations.

The reduced Groebner basis is unique for an ideal and term order, so every
derived object (initial ideal, membership, Hilbert counts) is deterministic.
Reduction follows a fixed rule: at each step the current leading reducible
term is rewritten by the first eligible divisor in the stored generator
order (leading monomial descending, then insertion index).
"""

from __future__ import annotations

import heapq
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import Budget, BudgetError, ReglabError
from .poly import Polynomial
from .rings import (
    RingSpec,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass
class SPairCertificate:
    """Record of one S-pair reduction: divisors used and final remainder."""

    i: int
    j: int
    divisors: tuple = ()
    remainder: Optional[Polynomial] = None
    steps: int = 0


@dataclass
class IdealPresentation:
    """Generators plus a cached reduced Groebner basis."""

    ring: RingSpec
    generators: tuple
    provenance: str = ""
    gb_cache: Optional[tuple] = None

    def __post_init__(self):
        self.generators = tuple(g for g in self.generators if not g.is_zero())

    def gb(self, budget: Budget | None = None) -> tuple:
        if self.gb_cache is None:
            self.gb_cache = tuple(buchberger(list(self.generators), budget=budget))
        return self.gb_cache

    def with_cached(self, gb: Sequence[Polynomial]) -> "IdealPresentation":
        self.gb_cache = tuple(gb)
        return self

    def max_degree(self) -> int:
        return max((g.degree() for g in self.generators), default=0)


def ideal(ring: RingSpec, gens: Iterable[Polynomial], provenance: str = "") -> IdealPresentation:
    return IdealPresentation(ring, tuple(gens), provenance)


def _stored_order(G: Sequence[Polynomial]) -> list:
    """Indices of G sorted by (leading monomial descending, insertion index)."""
    if not G:
        return []
    ring = G[0].ring
    return sorted(range(len(G)), key=lambda i: (ring.sort_key(G[i].leading_monomial()),
                                                -i), reverse=True)


def normal_form(
    p: Polynomial,
    G: Sequence[Polynomial],
    budget: Budget | None = None,
    trace: list | None = None,
) -> Polynomial:
    """Remainder of p on division by G (full normal form).

    No term of the result is divisible by any leading monomial of G, and
    ``p - result`` lies in the ideal generated by G.  ``trace`` (if given)
    collects the reducer indices used, in order.
    """
    if p.is_zero() or not G:
        return p
    ring = p.ring
    field = ring.field
    zero = field.zero
    budget = budget or Budget()
    order = _stored_order(G)
    lts = [(i, G[i].leading_monomial()) for i in order]
    # reducer tails: list of (monomial, coeff) without the leading term
    tails = {i: G[i].terms[1:] for i in order}
    lcs = {i: G[i].leading_coefficient() for i in order}
    heap_key = ring.heap_key

    coeffs = dict(p.terms)
    heap = [(heap_key(m), m) for m in coeffs]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = coeffs.pop(m, zero)
        if c == zero:
            continue
        reducer = None
        red_lt = None
        for i, lt in lts:
            if mono_divides(lt, m):
                reducer, red_lt = i, lt
                break
        if reducer is None:
            remainder[m] = c
            continue
        budget.charge()
        budget.check_degree(mono_deg(m))
        if trace is not None:
            trace.append(reducer)
        q = mono_div(m, red_lt)
        factor = field.mul(c, field.inv(lcs[reducer]))
        for mg, cg in tails[reducer]:
            mm = mono_mul(mg, q)
            prev = coeffs.get(mm)
            nc = field.sub(prev, field.mul(factor, cg)) if prev is not None else field.neg(
                field.mul(factor, cg)
            )
            if nc == zero:
                if prev is not None:
                    del coeffs[mm]
            else:
                if prev is None:
                    heapq.heappush(heap, (heap_key(mm), mm))
                coeffs[mm] = nc
    return Polynomial(ring, remainder.items())


def s_polynomial(g: Polynomial, h: Polynomial) -> Polynomial:
    """lcm(LT g, LT h)/LT(g) * g  -  lcm(LT g, LT h)/LT(h) * h."""
    if g.is_zero() or h.is_zero():
        raise ReglabError("S-polynomial of zero polynomial")
    if g.ring != h.ring:
        raise ReglabError("ring mismatch")
    field = g.ring.field
    lg, lh = g.leading_monomial(), h.leading_monomial()
    lcm = mono_lcm(lg, lh)
    a = g.mul_term(mono_div(lcm, lg), field.inv(g.leading_coefficient()))
    b = h.mul_term(mono_div(lcm, lh), field.inv(h.leading_coefficient()))
    return a - b


def _gm_update(pairs: set, basis: list, t: int):
    """Gebauer-Moller pair update after appending basis[t].

    Keeps the pair set small without changing the computed ideal; the
    reduced output is unique regardless.
    """
    lt_t = basis[t].leading_monomial()
    lcm_with = {i: mono_lcm(basis[i].leading_monomial(), lt_t) for i in range(t)}
    # drop old pairs strictly dominated by the new element
    for (i, j) in list(pairs):
        lij = mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial())
        if (
            mono_divides(lt_t, lij)
            and lcm_with[i] != lij
            and lcm_with[j] != lij
        ):
            pairs.discard((i, j))
    # candidate new pairs, pruned: keep one representative per lcm (M rule),
    # drop multiples of other candidates (F rule)
    cands = sorted(range(t), key=lambda i: (mono_deg(lcm_with[i]), i))
    kept = []
    for i in cands:
        li = lcm_with[i]
        if any(mono_divides(lcm_with[k], li) and lcm_with[k] != li for k in kept):
            continue
        if any(lcm_with[k] == li for k in kept):
            continue
        kept.append(i)
    # Buchberger's coprime criterion
    for i in kept:
        li = lcm_with[i]
        if li != mono_mul(basis[i].leading_monomial(), lt_t):
            pairs.add((i, t))


def buchberger(
    gens: Sequence[Polynomial],
    budget: Budget | None = None,
    stop_when_contains: Sequence[Polynomial] | None = None,
) -> list:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``stop_when_contains`` the loop stops as soon as every listed
    polynomial reduces to zero against the current basis; the (possibly
    unfinished) basis is then inter-reduced and returned.  This yields valid
    membership certificates even when the full basis would be expensive.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    budget = (budget or Budget()).derived(max(g.degree() for g in gens))

    basis: list = []
    pairs: set = set()
    for g in sorted(gens, key=lambda g: ring.sort_key(g.leading_monomial())):
        basis.append(g.monic())
        _gm_update(pairs, basis, len(basis) - 1)

    targets = list(stop_when_contains) if stop_when_contains is not None else None

    def targets_done() -> bool:
        nonlocal targets
        if targets is None:
            return False
        targets = [t for t in targets if not normal_form(t, basis, budget).is_zero()]
        return not targets

    if targets_done():
        return reduce_basis(basis)

    while pairs:
        # normal selection: minimal lcm degree, then pair index
        best = min(
            pairs,
            key=lambda ij: (
                mono_deg(
                    mono_lcm(
                        basis[ij[0]].leading_monomial(),
                        basis[ij[1]].leading_monomial(),
                    )
                ),
                ij,
            ),
        )
        pairs.discard(best)
        i, j = best
        s = s_polynomial(basis[i], basis[j])
        r = normal_form(s, basis, budget)
        if r.is_zero():
            continue
        budget.check_degree(r.degree())
        basis.append(r.monic())
        _gm_update(pairs, basis, len(basis) - 1)
        if targets_done():
            break
    return reduce_basis(basis)


def reduce_basis(G: Sequence[Polynomial]) -> list:
    """Inter-reduce a Groebner basis into the reduced one (monic, minimal)."""
    G = [g for g in G if not g.is_zero()]
    if not G:
        return []
    ring = G[0].ring
    # minimalize: drop g whose LT is divisible by another LT
    keep = []
    lts = [g.leading_monomial() for g in G]
    for i, g in enumerate(G):
        lt = lts[i]
        if any(
            j != i
            and mono_divides(lts[j], lt)
            and (lts[j] != lt or j < i)
            for j in range(len(G))
        ):
            continue
        keep.append(g)
    # tail-reduce each against the others
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        out.append(normal_form(g, others).monic())
    out.sort(key=lambda g: ring.sort_key(g.leading_monomial()), reverse=True)
    return out


def verify_gb_certificate(
    G: Sequence[Polynomial],
    budget: Budget | None = None,
    threads: int = 1,
    collect_traces: bool = False,
):
    """Buchberger criterion: every S-pair must reduce to zero against G.

    Returns ``(passed, certificates)`` where ``certificates`` lists one
    :class:`SPairCertificate` per failing pair (all pairs when
    ``collect_traces``).
    """
    G = [g for g in G if not g.is_zero()]
    if not G:
        return True, []
    ring = G[0].ring
    budget = (budget or Budget()).derived(max(g.degree() for g in G))
    idx_pairs = [
        (i, j)
        for i, j in itertools.combinations(range(len(G)), 2)
        # coprime leading terms always reduce to zero
        if mono_lcm(G[i].leading_monomial(), G[j].leading_monomial())
        != mono_mul(G[i].leading_monomial(), G[j].leading_monomial())
    ]

    def check(pair):
        i, j = pair
        trace: list | None = [] if collect_traces else None
        before = budget.steps
        r = normal_form(s_polynomial(G[i], G[j]), G, budget, trace=trace)
        return SPairCertificate(
            i, j, tuple(trace or ()), r, budget.steps - before
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check, idx_pairs))
    else:
        results = [check(p) for p in idx_pairs]
    # merged in pair-index order already (map preserves order)
    failures = [c for c in results if not c.remainder.is_zero()]
    if collect_traces:
        return not failures, results
    return not failures, failures


# -- ideal-level operations --------------------------------------------------


def membership(p: Polynomial, I: IdealPresentation, budget: Budget | None = None) -> bool:
    return normal_form(p, list(I.gb(budget)), budget).is_zero()


def ideal_equal(I: IdealPresentation, J: IdealPresentation, budget: Budget | None = None) -> bool:
    return all(membership(g, J, budget) for g in I.generators) and all(
        membership(g, I, budget) for g in J.generators
    )


def ideal_sum(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    return ideal(I.ring, I.generators + J.generators, "sum")


def ideal_product(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    gens = []
    seen = set()
    for g in I.generators:
        for h in J.generators:
            p = g * h
            if p.terms not in seen and not p.is_zero():
                seen.add(p.terms)
                gens.append(p)
    return ideal(I.ring, gens, "product")


def ideal_power(I: IdealPresentation, e: int) -> IdealPresentation:
    if e < 0:
        raise ReglabError("negative ideal power")
    if e == 0:
        return ideal(I.ring, [Polynomial.one(I.ring)], "power0")
    out = I
    for _ in range(e - 1):
        out = ideal_product(out, I)
    return out


def _extend_ring_with_t(ring: RingSpec) -> RingSpec:
    """Same ring with an auxiliary variable t prepended in an elimination block."""
    name = "t"
    while name in ring.variables:
        name += "_"
    return RingSpec(
        char=ring.char,
        variables=(name,) + ring.variables,
        order=("elim", (0,)),
    )


def _lift(p: Polynomial, ext: RingSpec) -> Polynomial:
    return Polynomial(ext, [((0,) + m, c) for m, c in p.terms])


def _drop_t(p: Polynomial, ring: RingSpec) -> Polynomial:
    return Polynomial(ring, [(m[1:], c) for m, c in p.terms])


def intersect(
    I: IdealPresentation, J: IdealPresentation, budget: Budget | None = None
) -> IdealPresentation:
    """I ∩ J by elimination: eliminate t from t·I + (1-t)·J."""
    if I.ring != J.ring:
        raise ReglabError("ring mismatch")
    ring = I.ring
    ext = _extend_ring_with_t(ring)
    t = Polynomial.variable(ext, ext.variables[0])
    one = Polynomial.one(ext)
    gens = [t * _lift(g, ext) for g in I.generators]
    gens += [(one - t) * _lift(g, ext) for g in J.generators]
    maxdeg = max(g.degree() for g in gens)
    b = budget.derived(maxdeg) if budget else Budget(max_degree=4 * maxdeg + 64)
    gb = buchberger(gens, budget=b)
    kept = [_drop_t(g, ring) for g in gb if all(m[0] == 0 for m, _ in g.terms)]
    # in an elimination order this restriction is a GB for the induced order
    out = ideal(ring, kept, "intersection")
    out.gb_cache = tuple(reduce_basis(kept))
    return out


def exact_divide(p: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient p/g; raises if the division leaves a remainder."""
    ring = p.ring
    field = ring.field
    q_terms = []
    rest = p
    lg = g.leading_monomial()
    lc = g.leading_coefficient()
    while not rest.is_zero():
        lm = rest.leading_monomial()
        if not mono_divides(lg, lm):
            raise ReglabError("exact division failed (internal inconsistency)")
        qm = mono_div(lm, lg)
        qc = field.mul(rest.leading_coefficient(), field.inv(lc))
        q_terms.append((qm, qc))
        rest = rest - g.mul_term(qm, qc)
    return Polynomial(ring, q_terms)


def colon_element(
    I: IdealPresentation, g: Polynomial, budget: Budget | None = None
) -> IdealPresentation:
    """I : (g), via (I ∩ (g)) / g."""
    if g.is_zero():
        raise ReglabError("colon by zero")
    J = intersect(I, ideal(I.ring, [g]), budget)
    gens = [exact_divide(h, g) for h in J.generators]
    return ideal(I.ring, gens, "colon")


def colon_maximal(I: IdealPresentation, budget: Budget | None = None) -> IdealPresentation:
    """I : m, as the intersection over variables of I : x_i."""
    ring = I.ring
    out = None
    for name in ring.variables:
        c = colon_element(I, Polynomial.variable(ring, name), budget)
        out = c if out is None else intersect(out, c, budget)
    return out


def socle_witness_check(
    h: Polynomial, I: IdealPresentation, budget: Budget | None = None
) -> bool:
    """True iff h ∉ I but h·x_v ∈ I for every variable v.

    A passing witness certifies reg(I) ≥ deg(h) + 1.
    """
    if h.is_zero():
        raise ReglabError("zero witness")
    G = list(I.gb(budget))
    if normal_form(h, G, budget).is_zero():
        return False
    ring = I.ring
    return all(
        normal_form(h * Polynomial.variable(ring, v), G, budget).is_zero()
        for v in ring.variables
    )


def socle_degree_max(
    I: IdealPresentation, degree_budget: int | None = None, budget: Budget | None = None
) -> int | None:
    """Max degree of an element of (I : m) \\ I, or None if the colon is trivial."""
    C = colon_maximal(I, budget)
    G = list(I.gb(budget))
    best = None
    for g in C.generators:
        if degree_budget is not None and g.degree() > degree_budget:
            raise BudgetError("socle search degree budget exceeded")
        if not normal_form(g, G, budget).is_zero():
            best = g.degree() if best is None else max(best, g.degree())
    return best


def initial_ideal_exponents(I: IdealPresentation, budget: Budget | None = None) -> list:
    """Minimal generating exponents of the initial ideal in(I)."""
    gb = I.gb(budget)
    lts = [g.leading_monomial() for g in gb]
    # reduced GB leading terms are already minimal, but be safe
    out = [
        m
        for i, m in enumerate(lts)
        if not any(j != i and mono_divides(lts[j], m) and (lts[j] != m or j < i)
                   for j in range(len(lts)))
    ]
    return out


def graded_dimension(I: IdealPresentation, d: int, budget: Budget | None = None) -> int:
    """dim_k (R/I)_d, counted as standard monomials of degree d."""
    if d < 0:
        raise ReglabError("negative degree")
    from .monomial import MonomialIdeal  # local import to avoid cycle

    M = MonomialIdeal(I.ring, initial_ideal_exponents(I, budget))
    return M.standard_monomial_count(d)
