"""Graded families of ideals and their asymptotic invariants.

A :class:`GradedFamily` is a rule ``n -> I_n`` with memoization: built-in
rules (powers, integral closures of powers, minimal symbolic powers, mixed
products ``J^{a_n} I^n``, truncations) plus the named presets used in the
experiment drivers.  Growth functions like ``a_n`` are given in a tiny
arithmetic expression language over ``n``.

All limit-flavored outputs are finite-sample evidence with the sample bound
recorded; nothing here claims a limit exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .betti import RegBracket, regularity_or_bracket, DEFAULT_GEN_THRESHOLD, cm_regularity
from .errors import ReglabError
from .groebner import IdealPresentation, ideal, ideal_product, membership, normal_form
from .monomial import MonomialIdeal, max_ideal_power, monomial_ideal_from_strings, q_power_ideal
from .poly import Polynomial
from .polyhedra import MonoPolyhedron, newton_polyhedron
from .rings import RingSpec, mono_deg, ring


# -- growth-function expression language --------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := factor (('*'|'//') factor)*
# factor := atom ['^' nat]
# atom   := 'n' | nat | 'isqrt' '(' expr ')' | '(' expr ')'


class _GrowthParser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def fail(self, msg):
        raise ReglabError(f"bad growth expression {self.text!r}: {msg}")

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            out = (
                (lambda a, b: lambda n: a(n) + b(n))
                if op == "+"
                else (lambda a, b: lambda n: a(n) - b(n))
            )(out, rhs)
        return out

    def term(self):
        out = self.factor()
        while True:
            if self.text.startswith("//", self.pos):
                self.pos += 2
                out = (lambda a, b: lambda n: a(n) // b(n))(out, self.factor())
            elif self.peek() == "*":
                self.pos += 1
                out = (lambda a, b: lambda n: a(n) * b(n))(out, self.factor())
            else:
                return out

    def factor(self):
        out = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.nat()
            out = (lambda a, ee: lambda n: a(n) ** ee)(out, e)
        return out

    def nat(self):
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.text[start : self.pos])

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if self.peek() != ")":
                self.fail("unbalanced parenthesis")
            self.pos += 1
            return out
        if self.text.startswith("isqrt(", self.pos):
            self.pos += len("isqrt(")
            inner = self.expr()
            if self.peek() != ")":
                self.fail("unbalanced parenthesis")
            self.pos += 1
            return lambda n, f=inner: math.isqrt(f(n))
        if ch == "n":
            self.pos += 1
            return lambda n: n
        if ch.isdigit():
            v = self.nat()
            return lambda n: v
        self.fail(f"unexpected {ch!r}")


def parse_growth(text: str) -> Callable[[int], int]:
    parser = _GrowthParser(text)
    fn = parser.expr()
    if parser.pos != len(parser.text):
        parser.fail("trailing input")

    def wrapped(n: int) -> int:
        v = fn(n)
        if v < 0:
            raise ReglabError(f"growth expression {text!r} negative at n={n}")
        return v

    return wrapped


# -- family construction --------------------------------------------------------


def _unit_ideal(R: RingSpec):
    return MonomialIdeal(R, [R.one_monomial()])


class GradedFamily:
    """Rule n -> I_n with memo cache; I_0 is the unit ideal by convention."""

    def __init__(self, ring: RingSpec, kind: str, rule, spec: dict,
                 monomial: bool = True):
        self.ring = ring
        self.kind = kind
        self._rule = rule
        self.spec = spec
        self.monomial = monomial
        self._memo: dict = {}

    def member(self, n: int):
        if n < 0:
            raise ReglabError("family index must be nonnegative")
        if n not in self._memo:
            if n == 0:
                self._memo[0] = (
                    _unit_ideal(self.ring)
                    if self.monomial
                    else ideal(self.ring, [Polynomial.one(self.ring)])
                )
            else:
                self._memo[n] = self._rule(n)
        return self._memo[n]

    def to_json(self) -> dict:
        return dict(self.spec)


def powers_family(I) -> GradedFamily:
    if isinstance(I, MonomialIdeal):
        return GradedFamily(I.ring, "powers", I.power, {"kind": "powers", "ideal": I.to_json()})
    return GradedFamily(
        I.ring,
        "powers",
        lambda n: _poly_power(I, n),
        {"kind": "powers", "ideal": [str(g) for g in I.generators]},
        monomial=False,
    )


def _poly_power(I: IdealPresentation, n: int) -> IdealPresentation:
    out = ideal(I.ring, [Polynomial.one(I.ring)])
    for _ in range(n):
        out = ideal_product(out, I)
    return out


def closure_powers_family(I: MonomialIdeal) -> GradedFamily:
    return GradedFamily(
        I.ring,
        "closure_powers",
        lambda n: I.power(n).integral_closure(),
        {"kind": "closure_powers", "ideal": I.to_json()},
    )


def symbolic_min_powers_family(I: MonomialIdeal) -> GradedFamily:
    return GradedFamily(
        I.ring,
        "symbolic_min",
        I.symbolic_power_min,
        {"kind": "symbolic_min", "ideal": I.to_json()},
    )


def mixed_family(J: MonomialIdeal, I: MonomialIdeal, a_expr: str) -> GradedFamily:
    a_fn = parse_growth(a_expr)
    return GradedFamily(
        I.ring,
        "mixed",
        lambda n: J.power(a_fn(n)).product(I.power(n)),
        {"kind": "mixed", "J": J.to_json(), "I": I.to_json(), "a": a_expr},
    )


def explicit_family(R: RingSpec, rule, monomial: bool = True, name: str = "explicit") -> GradedFamily:
    return GradedFamily(R, "explicit", rule, {"kind": "explicit", "name": name}, monomial)


def truncation_family(F: GradedFamily, a: int) -> GradedFamily:
    """a-th truncation: I_n for n <= a, then all products I_{a,i}·I_{a,j}."""
    if a < 1:
        raise ReglabError("truncation order must be >= 1")
    memo: dict = {}

    def rule(n: int):
        if n in memo:
            return memo[n]
        if n <= a:
            out = F.member(n)
        else:
            out = None
            for i in range(1, n // 2 + 1):
                piece = _mul(rule(i), rule(n - i))
                out = piece if out is None else _add(out, piece)
        memo[n] = out
        return out

    return GradedFamily(
        F.ring,
        "truncation",
        rule,
        {"kind": "truncation", "a": a, "base": F.to_json()},
        F.monomial,
    )


def _mul(A, B):
    if isinstance(A, MonomialIdeal):
        return A.product(B)
    return ideal_product(A, B)


def _add(A, B):
    if isinstance(A, MonomialIdeal):
        return A.sum(B)
    return ideal(A.ring, A.generators + B.generators)


# -- presets ---------------------------------------------------------------------


def preset_family(name: str, growth: Optional[str] = None, char: int = 2) -> GradedFamily:
    """Named example families.

    ``diverge``       (a^4,a^3b,ab^3,b^4)(x,y)^n + a^2b^2(x,y)^{f(n)}
    ``distinct-lims`` (a^4,a^3b,ab^3,b^4)(x,y)^n + a^2b^2(x^n,y^n)
    ``mprimary-counter``  monomials of conv{(5n,0),(3n+1,1),(0,2n)} + orthant
    """
    if name == "diverge":
        R = ring("x,y,a,b", char=char)
        f_fn = parse_growth(growth or "n^2")
        gap = monomial_ideal_from_strings(R, ["a^4", "a^3*b", "a*b^3", "b^4"])
        mid = monomial_ideal_from_strings(R, ["a^2*b^2"])

        def rule(n):
            fn = f_fn(n)
            if fn < n:
                raise ReglabError("diverge preset needs f(n) >= n")
            return gap.product(max_ideal_power(R, ["x", "y"], n)).sum(
                mid.product(max_ideal_power(R, ["x", "y"], fn))
            )

        return GradedFamily(
            R, "preset", rule, {"kind": "preset", "name": name, "f": growth or "n^2"}
        )
    if name == "distinct-lims":
        R = ring("x,y,a,b", char=char)
        gap = monomial_ideal_from_strings(R, ["a^4", "a^3*b", "a*b^3", "b^4"])
        mid = monomial_ideal_from_strings(R, ["a^2*b^2"])

        def rule(n):
            xn = monomial_ideal_from_strings(R, [f"x^{n}", f"y^{n}"])
            return gap.product(max_ideal_power(R, ["x", "y"], n)).sum(mid.product(xn))

        return GradedFamily(R, "preset", rule, {"kind": "preset", "name": name})
    if name == "mprimary-counter":
        R = ring("x,y", char=char)

        def rule(n):
            P = MonoPolyhedron(2, [(5 * n, 0), (3 * n + 1, 1), (0, 2 * n)])
            gens = []
            for j in range(2 * n + 1):
                # minimal x with (x, j) in P_n, by binary search (monotone)
                lo, hi = 0, 5 * n
                if not P.contains_point((hi, j)):
                    continue
                while lo < hi:
                    mid = (lo + hi) // 2
                    if P.contains_point((mid, j)):
                        hi = mid
                    else:
                        lo = mid + 1
                gens.append((lo, j))
            return MonomialIdeal(R, gens)

        return GradedFamily(R, "preset", rule, {"kind": "preset", "name": name})
    raise ReglabError(f"unknown preset {name!r}")


def family_from_json(spec: dict) -> GradedFamily:
    kind = spec["kind"]
    if kind == "preset":
        return preset_family(spec["name"], spec.get("f"), spec.get("char", 2))
    if kind == "powers":
        return powers_family(MonomialIdeal.from_json(spec["ideal"]))
    if kind == "closure_powers":
        return closure_powers_family(MonomialIdeal.from_json(spec["ideal"]))
    if kind == "symbolic_min":
        return symbolic_min_powers_family(MonomialIdeal.from_json(spec["ideal"]))
    if kind == "mixed":
        return mixed_family(
            MonomialIdeal.from_json(spec["J"]),
            MonomialIdeal.from_json(spec["I"]),
            spec["a"],
        )
    if kind == "truncation":
        return truncation_family(family_from_json(spec["base"]), spec["a"])
    raise ReglabError(f"unknown family kind {kind!r}")


# -- gradedness and stabilization -------------------------------------------------


def check_graded(F: GradedFamily, N: int):
    """Verify I_p · I_q ⊆ I_{p+q} for p + q <= N.

    Returns ``("pass", None)`` or ``("counterexample", (p, q))``.
    """
    if N < 2:
        raise ReglabError("need N >= 2")
    for s in range(2, N + 1):
        target = F.member(s)
        for p in range(1, s // 2 + 1):
            q = s - p
            A, B = F.member(p), F.member(q)
            if isinstance(target, MonomialIdeal):
                prod = A.product(B)
                if not target.contains_ideal(prod):
                    return ("counterexample", (p, q))
            else:
                G = list(target.gb())
                for ga in A.generators:
                    for gb in B.generators:
                        if not normal_form(ga * gb, G).is_zero():
                            return ("counterexample", (p, q))
    return ("pass", None)


def noetherian_stabilization_test(F: GradedFamily, N: int):
    """Search c <= N with (1/c)NP(I_c) = (1/nc)NP(I_nc) for all nc <= N.

    Finite evidence only; returns ``{"stabilized": c, "tested_multiples": [...]}``
    or ``{"stabilized": None, "bound": N}``.
    """
    if not F.monomial:
        raise ReglabError("stabilization test requires a monomial family")
    for c in range(1, N // 2 + 1):
        Pc = newton_polyhedron(F.member(c)).scale(Fraction(1, c))
        multiples = [m * c for m in range(2, N // c + 1)]
        if not multiples:
            continue  # no evidence available for this c
        ok = all(
            newton_polyhedron(F.member(mc)).scale(Fraction(1, mc)) == Pc
            for mc in multiples
        )
        if ok:
            return {"stabilized": c, "tested_multiples": multiples, "bound": N}
    return {"stabilized": None, "bound": N}


def delta_family_sample(F: GradedFamily, N: int) -> dict:
    """Per-n delta of (1/n)NP(I_n), running infimum, and the sampled region.

    ``sample_region_*`` describes conv(all scaled generator points) plus the
    orthant — finite evidence that can only shrink toward the limit region
    from outside along the axes.  ``limit_region_*`` extrapolates the scaled
    vertex lists exactly, assuming coordinates eventually affine in 1/n
    (exact for the preset families); it is an estimate, not a certificate.
    """
    if not F.monomial:
        raise ReglabError("delta sampling requires a monomial family")
    deltas = []
    inf_so_far = []
    all_points = set()
    vertex_lists = {}
    for n in range(1, N + 1):
        P = newton_polyhedron(F.member(n)).scale(Fraction(1, n))
        d = P.delta()
        deltas.append(d)
        inf_so_far.append(min(d, inf_so_far[-1]) if inf_so_far else d)
        all_points.update(P.points)
        vertex_lists[n] = sorted(P.vertices())
    region = MonoPolyhedron(F.ring.arity, all_points)
    out = {
        "N": N,
        "delta_per_n": deltas,
        "running_inf": inf_so_far,
        "sample_region_vertices": region.vertices(),
        "sample_region_delta": region.delta(),
        "limit_region_vertices": None,
        "limit_region_delta": None,
    }
    limit = _extrapolate_vertices(vertex_lists, N, F.ring.arity)
    if limit is not None:
        out["limit_region_vertices"] = limit.vertices()
        out["limit_region_delta"] = limit.delta()
    return out


def _extrapolate_vertices(vertex_lists: dict, N: int, dim: int):
    """Richardson extrapolation of scaled vertex lists in 1/n (exact).

    Uses the two largest sampled indices with matching vertex counts; returns
    None when the counts never match or a limit coordinate goes negative."""
    pair = None
    for n2 in range(N, 1, -1):
        for n1 in range(n2 - 1, 0, -1):
            if len(vertex_lists[n1]) == len(vertex_lists[n2]):
                pair = (n1, n2)
                break
        if pair:
            break
    if pair is None:
        return None
    n1, n2 = pair
    limit_pts = []
    for v1, v2 in zip(vertex_lists[n1], vertex_lists[n2]):
        w = tuple(
            (n2 * b - n1 * a) / (n2 - n1) for a, b in zip(v1, v2)
        )
        if any(c < 0 for c in w):
            return None
        limit_pts.append(w)
    return MonoPolyhedron(dim, limit_pts)


# -- Groebner valuation value sets -------------------------------------------------


@dataclass
class ValuationTable:
    """Value set of the Groebner valuation on the degree-d piece of an ideal."""

    ideal_name: str
    degree: int
    values: set  # exponent tuples of least-term pivots

    def __post_init__(self):
        self.values = set(self.values)

    def dimension(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal_name,
            "degree": self.degree,
            "values": sorted(self.values),
        }


def _monomials_of_degree(R: RingSpec, d: int):
    r = R.arity
    stack = [((), d)]
    while stack:
        prefix, rest = stack.pop()
        if len(prefix) == r - 1:
            yield prefix + (rest,)
            continue
        for e in range(rest + 1):
            stack.append((prefix + (e,), rest - e))


def groebner_valuation_values(
    I: IdealPresentation, d: int, name: str = ""
) -> ValuationTable:
    """Pivot exponents of a least-term triangularization of the degree-d piece.

    The pivot count equals dim_k (I)_d, so the complement inside all degree-d
    exponents computes the Hilbert function of R/I.
    """
    if d < 0:
        raise ReglabError("negative degree")
    R = I.ring
    for g in I.generators:
        if not g.is_homogeneous():
            raise ReglabError("valuation table needs homogeneous generators")
    field = R.field
    rows = []
    for g in I.generators:
        dg = g.degree()
        if dg > d or g.is_zero():
            continue
        for m in _monomials_of_degree(R, d - dg):
            rows.append(g.mul_term(m))
    key = R.sort_key
    pivots: dict = {}
    for row in sorted(rows, key=lambda p: key(p.terms[-1][0])):
        while not row.is_zero():
            least = row.terms[-1][0]
            other = pivots.get(least)
            if other is None:
                pivots[least] = row.scale(field.inv(row.terms[-1][1]))
                break
            row = row - other.scale(row.terms[-1][1])
    return ValuationTable(name, d, set(pivots))


def degree_dimension_via_valuation(R: RingSpec, d: int, table: ValuationTable) -> int:
    """dim_k (R/I)_d as (#degree-d monomials) - |value set|."""
    total = math.comb(d + R.arity - 1, R.arity - 1)
    return total - table.dimension()


# -- asymptotic report ---------------------------------------------------------------


@dataclass
class AsymptoticReport:
    family: dict
    N: int
    rows: list = field(default_factory=list)
    fekete_inf_d_over_n: Optional[str] = None
    delta: Optional[dict] = None
    stabilization: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "N": self.N,
            "rows": self.rows,
            "fekete_inf_d_over_n": self.fekete_inf_d_over_n,
        }
        if self.delta is not None:
            out["delta"] = {
                "N": self.delta["N"],
                "delta_per_n": [str(x) for x in self.delta["delta_per_n"]],
                "running_inf": [str(x) for x in self.delta["running_inf"]],
                "sample_region_vertices": [
                    [str(c) for c in v] for v in self.delta["sample_region_vertices"]
                ],
                "sample_region_delta": str(self.delta["sample_region_delta"]),
            }
        if self.stabilization is not None:
            out["stabilization"] = self.stabilization
        return out

    def text_table(self) -> str:
        header = f"{'n':>4} {'reg':>12} {'d':>6} {'mu':>7} {'reg/n':>10} {'d/n':>8}"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            reg = row["reg"] if row["reg"] is not None else row["reg_bracket"]
            lines.append(
                f"{row['n']:>4} {str(reg):>12} {row['d']:>6} {row['mu']:>7} "
                f"{str(row['reg_over_n']):>10} {str(row['d_over_n']):>8}"
            )
        if self.fekete_inf_d_over_n is not None:
            lines.append(f"Fekete inf d/n (n <= {self.N}): {self.fekete_inf_d_over_n}")
        if self.delta is not None:
            lines.append(
                "delta((1/n)NP): "
                + " ".join(str(x) for x in self.delta["delta_per_n"])
                + f"   running inf {self.delta['running_inf'][-1]}"
                + f"   sampled-region delta {self.delta['sample_region_delta']}"
            )
        if self.stabilization is not None:
            c = self.stabilization.get("stabilized")
            lines.append(
                f"stabilization: {'at c=%d' % c if c else 'none'} (bound {self.stabilization['bound']})"
            )
        return "\n".join(lines)


def asymptotic_report(
    F: GradedFamily,
    N: int,
    reg_mode: str = "exact",
    threshold: int = DEFAULT_GEN_THRESHOLD,
    with_delta: bool = True,
    with_stabilization: bool = False,
) -> AsymptoticReport:
    """Per-n regularity/degree data with Fekete infimum and delta samples."""
    if N < 1:
        raise ReglabError("need N >= 1")
    if reg_mode not in ("exact", "bracket"):
        raise ReglabError("reg_mode must be 'exact' or 'bracket'")
    report = AsymptoticReport(family=F.to_json(), N=N)
    best_d_over_n: Optional[Fraction] = None
    for n in range(1, N + 1):
        I = F.member(n)
        if not F.monomial:
            raise ReglabError("asymptotic_report currently covers monomial families")
        d = I.max_gen_degree()
        mu = I.num_min_gens()
        bracket = regularity_or_bracket(I, threshold=threshold)
        reg_exact = bracket.exact
        if reg_mode == "exact" and reg_exact is None:
            raise ReglabError(
                f"exact regularity unavailable at n={n}; rerun with reg_mode='bracket'"
            )
        ratio = Fraction(d, n)
        best_d_over_n = ratio if best_d_over_n is None else min(best_d_over_n, ratio)
        row = {
            "n": n,
            "reg": reg_exact,
            "reg_bracket": None if reg_exact is not None else bracket.to_json(),
            "d": d,
            "mu": mu,
            "reg_over_n": str(Fraction(reg_exact, n)) if reg_exact is not None else None,
            "d_over_n": str(ratio),
        }
        report.rows.append(row)
    report.fekete_inf_d_over_n = str(best_d_over_n)
    if with_delta and F.monomial:
        report.delta = delta_family_sample(F, N)
    if with_stabilization and F.monomial:
        report.stabilization = noetherian_stabilization_test(F, N)
    return report
