"""Combinatorial operations on monomial ideals.

A :class:`MonomialIdeal` keeps the antichain of minimal generators as
exponent tuples, sorted descending in the ring's term order.  The zero
ideal has no generators; the unit ideal is generated by 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ReglabError
from .poly import Polynomial, poly_from_exponents
from .rings import (
    Mono,
    RingSpec,
    mono_deg,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
    mono_mul,
    mono_pow,
)


def _minimalize(gens: Iterable[Mono]) -> list:
    gens = sorted(set(gens), key=mono_deg)
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


class MonomialIdeal:
    __slots__ = ("ring", "gens")

    def __init__(self, ring: RingSpec, gens: Iterable[Mono]):
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.arity:
                raise ReglabError("monomial arity does not match ring")
        self.ring = ring
        self.gens = tuple(
            sorted(_minimalize(gens), key=ring.sort_key, reverse=True)
        )

    # -- basic state ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(mono_deg(g) == 0 for g in self.gens)

    def is_proper(self) -> bool:
        return bool(self.gens) and not self.is_unit()

    def contains(self, m: Mono) -> bool:
        return any(mono_divides(g, m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __repr__(self):
        names = ", ".join(self.ring.render_monomial(g) for g in self.gens)
        return f"MonomialIdeal({names})"

    # -- invariants ----------------------------------------------------------

    def max_gen_degree(self) -> int:
        """d(I): maximal degree of a minimal generator."""
        if not self.is_proper():
            raise ReglabError("d(I) requires a proper nonzero ideal")
        return max(mono_deg(g) for g in self.gens)

    def num_min_gens(self) -> int:
        """mu(I): number of minimal generators."""
        if not self.is_proper():
            raise ReglabError("mu(I) requires a proper nonzero ideal")
        return len(self.gens)

    def support_vars(self) -> set:
        return {i for g in self.gens for i, e in enumerate(g) if e > 0}

    def is_artinian(self) -> bool:
        """True iff some pure power of every ring variable lies in the ideal."""
        pure = set()
        for g in self.gens:
            supp = [i for i, e in enumerate(g) if e > 0]
            if len(supp) == 1:
                pure.add(supp[0])
        return pure == set(range(self.ring.arity))

    # -- arithmetic ----------------------------------------------------------

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.gens + other.gens)

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.ring, [mono_mul(g, h) for g in self.gens for h in other.gens]
        )

    def power(self, e: int) -> "MonomialIdeal":
        if e < 0:
            raise ReglabError("negative ideal power")
        out = MonomialIdeal(self.ring, [self.ring.one_monomial()])
        base = self
        for _ in range(e):
            out = out.product(base)
        return out

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.ring, [mono_lcm(g, h) for g in self.gens for h in other.gens]
        )

    def colon_mono(self, m: Mono) -> "MonomialIdeal":
        """I : x^m by exponent subtraction."""
        return MonomialIdeal(
            self.ring, [mono_div(g, mono_gcd(g, m)) for g in self.gens]
        )

    def colon_maximal(self) -> "MonomialIdeal":
        out = None
        for i in range(self.ring.arity):
            c = self.colon_mono(self.ring.variable_monomial(i))
            out = c if out is None else out.intersect(c)
        return out

    def scale_exponents(self, factor: int) -> "MonomialIdeal":
        return MonomialIdeal(self.ring, [mono_pow(g, factor) for g in self.gens])

    def divide_by(self, m: Mono) -> "MonomialIdeal":
        """I / x^m when every generator is divisible by x^m."""
        return MonomialIdeal(self.ring, [mono_div(g, m) for g in self.gens])

    def common_factor(self) -> Mono:
        """gcd of all generators (the unit monomial when there is none)."""
        if not self.gens:
            return self.ring.one_monomial()
        g = self.gens[0]
        for h in self.gens[1:]:
            g = mono_gcd(g, h)
        return g

    # -- primes, localization, symbolic powers --------------------------------

    def minimal_primes(self) -> list:
        """Minimal primes as sorted tuples of variable names.

        These are the minimal vertex covers of the supports of the minimal
        generators (exhaustive branch and bound; fine at desk scale).
        """
        if not self.is_proper():
            raise ReglabError("minimal primes require a proper nonzero ideal")
        supports = sorted(
            {frozenset(i for i, e in enumerate(g) if e > 0) for g in self.gens},
            key=len,
        )
        covers: set = set()

        def search(idx: int, chosen: frozenset):
            if any(c <= chosen for c in covers):
                return
            while idx < len(supports) and supports[idx] & chosen:
                idx += 1
            if idx == len(supports):
                covers.add(chosen)
                return
            for v in sorted(supports[idx]):
                search(idx + 1, chosen | {v})

        search(0, frozenset())
        minimal = [c for c in covers if not any(d < c for d in covers)]
        return sorted(
            tuple(sorted(self.ring.variables[i] for i in c)) for c in minimal
        )

    def localize_at_prime(self, prime_vars: Sequence[str]) -> "MonomialIdeal":
        """Contraction of the localization: erase variables outside the prime."""
        keep = {self.ring.var_index(v) for v in prime_vars}
        erased = [
            tuple(e if i in keep else 0 for i, e in enumerate(g)) for g in self.gens
        ]
        return MonomialIdeal(self.ring, erased)

    def symbolic_power_min(self, n: int) -> "MonomialIdeal":
        """Minimal symbolic power: intersect localized ordinary powers."""
        if not self.is_proper():
            raise ReglabError("symbolic power requires a proper nonzero ideal")
        power = self.power(n)
        out = None
        for prime in self.minimal_primes():
            loc = power.localize_at_prime(prime)
            out = loc if out is None else out.intersect(loc)
        return out

    def integral_closure(self) -> "MonomialIdeal":
        """Monomials whose exponent vector lies in the Newton polyhedron."""
        if not self.is_proper():
            raise ReglabError("integral closure requires a proper nonzero ideal")
        from .polyhedra import MonoPolyhedron

        np_poly = MonoPolyhedron.from_points(self.ring.arity, self.gens)
        box = [max(g[i] for g in self.gens) for i in range(self.ring.arity)]
        found = []

        def walk(i: int, prefix: tuple):
            if i == len(box):
                if self.contains(prefix) or np_poly.contains_point(prefix):
                    found.append(prefix)
                return
            for e in range(box[i] + 1):
                walk(i + 1, prefix + (e,))

        walk(0, ())
        return MonomialIdeal(self.ring, found)

    # -- Hilbert data ----------------------------------------------------------

    def standard_monomial_count(self, d: int) -> int:
        """Number of degree-d monomials outside the ideal.

        Counted by slicing on the first variable and memoizing the projected
        staircases, so large degrees stay cheap.
        """
        if d < 0:
            raise ReglabError("negative degree")
        memo: dict = {}

        def count(gens: tuple, nvars: int, deg: int) -> int:
            if any(all(e == 0 for e in g) for g in gens):
                return 0
            if nvars == 1:
                emin = min((g[0] for g in gens), default=None)
                return 1 if emin is None or deg < emin else 0
            key = (gens, nvars, deg)
            if key in memo:
                return memo[key]
            thresholds = sorted({g[0] for g in gens if g[0] <= deg} | {0, deg + 1})
            total = 0
            for t_i, t_next in zip(thresholds, thresholds[1:] + [deg + 1]):
                lo, hi = t_i, min(t_next - 1, deg)
                if lo > hi:
                    continue
                proj = _minimalize(
                    tuple(g[1:] for g in gens if g[0] <= lo)
                )
                proj_t = tuple(sorted(proj))
                inner = sum(
                    count(proj_t, nvars - 1, deg - e) for e in range(lo, hi + 1)
                )
                total += inner
            memo[key] = total
            return total

        return count(tuple(sorted(self.gens)), self.ring.arity, d)

    def top_nonzero_degree(self) -> int:
        """max{d : (R/I)_d != 0}; requires an artinian ideal."""
        if not self.is_artinian():
            raise ReglabError("top degree requires an artinian ideal")
        bound = sum(max(g[i] for g in self.gens) for i in range(self.ring.arity))
        top = -1
        for d in range(bound + 2):
            if self.standard_monomial_count(d) > 0:
                top = d
        return top

    # -- conversions -----------------------------------------------------------

    def to_polynomials(self) -> list:
        return [Polynomial.monomial(self.ring, g) for g in self.gens]

    def to_polynomial_sum(self) -> Polynomial:
        return poly_from_exponents(self.ring, self.gens)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "gens": [self.ring.render_monomial(g) for g in self.gens],
        }

    @staticmethod
    def from_json(d: dict) -> "MonomialIdeal":
        from .poly import parse_polynomial

        ring = RingSpec.from_json(d["ring"])
        gens = []
        for s in d["gens"]:
            p = parse_polynomial(ring, s)
            if not p.is_monomial():
                raise ReglabError(f"{s!r} is not a monomial")
            gens.append(p.leading_monomial())
        return MonomialIdeal(ring, gens)


def monomial_ideal_from_strings(ring: RingSpec, texts: Iterable[str]) -> MonomialIdeal:
    from .poly import parse_polynomial

    gens = []
    for s in texts:
        p = parse_polynomial(ring, s)
        if not p.is_monomial():
            raise ReglabError(f"{s!r} is not a monomial")
        gens.append(p.leading_monomial())
    return MonomialIdeal(ring, gens)


def q_power_membership(i: int, j: int, n: int) -> bool:
    """x^i y^j ∈ (x^3, y^3)^n by the arithmetic criterion.

    For i + j >= 3n the membership is decided by congruences; below that
    threshold it falls back to the general staircase test (which here is
    floor(i/3) + floor(j/3) >= n).
    """
    if i < 0 or j < 0 or n < 0:
        raise ReglabError("negative arguments")
    if i + j < 3 * n:
        return i // 3 + j // 3 >= n
    if i + j == 3 * n and (i * j) % 3 != 0:
        return False
    if i + j == 3 * n + 1 and i % 3 == 2 and j % 3 == 2:
        return False
    return True


def q_power_ideal(ring: RingSpec, n: int, x: str = "x", y: str = "y") -> MonomialIdeal:
    """(x^3, y^3)^n in the given ring."""
    ix, iy = ring.var_index(x), ring.var_index(y)
    gens = []
    for a in range(n + 1):
        g = [0] * ring.arity
        g[ix] = 3 * a
        g[iy] = 3 * (n - a)
        gens.append(tuple(g))
    return MonomialIdeal(ring, gens)


def max_ideal_power(ring: RingSpec, vars_: Sequence[str], d: int) -> MonomialIdeal:
    """(vars)^d as a monomial ideal."""
    idx = [ring.var_index(v) for v in vars_]
    gens = []

    def walk(k: int, rest: int, acc: list):
        if k == len(idx) - 1:
            g = [0] * ring.arity
            for ii, e in zip(idx, acc + [rest]):
                g[ii] = e
            gens.append(tuple(g))
            return
        for e in range(rest + 1):
            walk(k + 1, rest - e, acc + [e])

    if d == 0:
        return MonomialIdeal(ring, [ring.one_monomial()])
    walk(0, d, [])
    return MonomialIdeal(ring, gens)
