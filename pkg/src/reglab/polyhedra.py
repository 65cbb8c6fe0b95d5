"""Exact rational polyhedra of Newton type.

Every polyhedron here is ``conv(points) + R^r_{>=0}`` for a finite set of
rational generator points with nonnegative coordinates.  All predicates are
exact: membership is an LP feasibility question solved by a dense simplex
over ``Fraction`` with Bland's rule, vertices are the generator points that
cannot be expressed through the others, and the H-representation (dimension
<= 4 by default) is obtained by supporting-hyperplane enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import ReglabError

Vec = tuple  # tuple of Fraction


def _vec(v: Sequence) -> Vec:
    return tuple(Fraction(x) for x in v)


def _phase1_feasible(rows: list, rhs: list) -> bool:
    """Feasibility of {x >= 0 : rows @ x = rhs} by phase-1 simplex (Bland)."""
    m = len(rows)
    if m == 0:
        return True
    n = len(rows[0])
    T = []
    for i in range(m):
        r = list(rows[i])
        b = rhs[i]
        if b < 0:
            r = [-a for a in r]
            b = -b
        T.append(r + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b])
    basis = list(range(n, n + m))
    total = n + m
    # objective: minimize sum of artificials
    while True:
        # reduced costs: c_j - sum over basic rows of (c_basic * T)
        reduced = []
        for j in range(total):
            c = Fraction(1) if j >= n else Fraction(0)
            for i in range(m):
                if basis[i] == j:
                    c = None  # basic
                    break
                if T[i][j] and basis[i] >= n:
                    c -= T[i][j]
            reduced.append(c)
        enter = None
        for j in range(total):
            if reduced[j] is not None and reduced[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][total] / T[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            return False  # unbounded phase-1: cannot happen, defensive
        piv = T[leave][enter]
        T[leave] = [a / piv for a in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        basis[leave] = enter
    value = sum(T[i][total] for i in range(m) if basis[i] >= n)
    return value == 0


def _solve_square(rows: list, rhs: list) -> Optional[list]:
    """Unique solution of a square rational system, or None."""
    n = len(rows)
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [a / pv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def _nullspace_1d(rows: list, n: int) -> Optional[list]:
    """A nonzero solution when the nullspace is exactly one-dimensional."""
    A = [list(r) for r in rows]
    m = len(A)
    pivots = []
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        pv = A[row][col]
        A[row] = [a / pv for a in A[row]]
        for r in range(m):
            if r != row and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    sol = [Fraction(0)] * n
    sol[free[0]] = Fraction(1)
    for r, col in enumerate(pivots):
        sol[col] = -A[r][free[0]]
    return sol


class MonoPolyhedron:
    """conv(generator points) + nonnegative orthant, all data exact."""

    __slots__ = ("dim", "points", "_vertices", "_halfspaces")

    def __init__(self, dim: int, points: Iterable[Sequence]):
        self.dim = dim
        pts = set()
        for p in points:
            v = _vec(p)
            if len(v) != dim:
                raise ReglabError("point dimension mismatch")
            if any(x < 0 for x in v):
                raise ReglabError("generator points must be nonnegative")
            pts.add(v)
        self.points = frozenset(pts)
        self._vertices = None
        self._halfspaces = None

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence]) -> "MonoPolyhedron":
        return cls(dim, points)

    @classmethod
    def from_monomial_ideal(cls, I) -> "MonoPolyhedron":
        """Newton polyhedron NP(I) of a monomial ideal."""
        if not I.is_proper():
            raise ReglabError("Newton polyhedron requires a proper nonzero ideal")
        return cls(I.ring.arity, I.gens)

    def is_empty(self) -> bool:
        return not self.points

    # -- membership ---------------------------------------------------------

    def contains_point(self, v: Sequence) -> bool:
        """Exact test v ∈ conv(points) + orthant."""
        v = _vec(v)
        if len(v) != self.dim:
            raise ReglabError("dimension mismatch")
        if self.is_empty():
            return False
        pts = sorted(self.points)
        # quick accept: some generator point componentwise below v
        for p in pts:
            if all(a <= b for a, b in zip(p, v)):
                return True
        if self.dim == 2:
            return self._contains_2d(v)
        if self._halfspaces is not None:
            return all(
                sum(a * x for a, x in zip(normal, v)) >= c
                for normal, c in self._halfspaces
            )
        # lambda_i >= 0, slack s_j >= 0:  sum lambda_i p_i + s = v, sum lambda = 1
        npts = len(pts)
        rows = []
        rhs = []
        for j in range(self.dim):
            rows.append(
                [p[j] for p in pts]
                + [Fraction(1) if k == j else Fraction(0) for k in range(self.dim)]
            )
            rhs.append(v[j])
        rows.append([Fraction(1)] * npts + [Fraction(0)] * self.dim)
        rhs.append(Fraction(1))
        return _phase1_feasible(rows, rhs)

    def contains(self, other: "MonoPolyhedron") -> bool:
        return all(self.contains_point(p) for p in other.points)

    def __eq__(self, other):
        return (
            isinstance(other, MonoPolyhedron)
            and self.dim == other.dim
            and self.contains(other)
            and other.contains(self)
        )

    def __hash__(self):  # pragma: no cover - not used as dict key
        return hash((self.dim, self.points))

    # -- vertices and delta ---------------------------------------------------

    def _lower_chain(self) -> list:
        """2D only: vertices as the lower-left convex chain (x ascending)."""
        pareto = []
        for p in sorted(self.points):
            if not any(q[0] <= p[0] and q[1] <= p[1] for q in self.points if q != p):
                pareto.append(p)
        chain = []
        for p in pareto:  # sorted by x ascending, y strictly descending
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                # pop b unless a -> b -> p makes a strict left turn
                cross = (b[0] - a[0]) * (p[1] - b[1]) - (b[1] - a[1]) * (p[0] - b[0])
                if cross <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    def _contains_2d(self, v) -> bool:
        chain = self._lower_chain()
        if v[0] < chain[0][0]:
            return False
        for a, b in zip(chain, chain[1:]):
            if a[0] <= v[0] <= b[0]:
                # on/above the segment through a, b
                return (b[0] - a[0]) * (v[1] - a[1]) >= (b[1] - a[1]) * (v[0] - a[0])
        return v[1] >= chain[-1][1]

    def vertices(self) -> list:
        """Generator points not in the hull of the others plus the orthant."""
        if self._vertices is None:
            if self.dim == 2 and self.points:
                self._vertices = self._lower_chain()
            else:
                pts = sorted(self.points)
                out = []
                for i, p in enumerate(pts):
                    others = MonoPolyhedron(self.dim, pts[:i] + pts[i + 1 :])
                    if others.is_empty() or not others.contains_point(p):
                        out.append(p)
                self._vertices = out
        return list(self._vertices)

    def delta(self) -> Fraction:
        """Max coordinate sum over the vertices."""
        if self.is_empty():
            raise ReglabError("delta of an empty polyhedron")
        return max(sum(v) for v in self.vertices())

    def spanned_by_vertices(self) -> "MonoPolyhedron":
        return MonoPolyhedron(self.dim, self.vertices())

    # -- arithmetic -------------------------------------------------------------

    def scale(self, c) -> "MonoPolyhedron":
        c = Fraction(c)
        if c <= 0:
            raise ReglabError("scale factor must be positive")
        return MonoPolyhedron(self.dim, [tuple(c * x for x in p) for p in self.points])

    def minkowski_sum(self, other: "MonoPolyhedron") -> "MonoPolyhedron":
        if self.dim != other.dim:
            raise ReglabError("dimension mismatch")
        return MonoPolyhedron(
            self.dim,
            [
                tuple(a + b for a, b in zip(p, q))
                for p in self.points
                for q in other.points
            ],
        )

    # -- H-representation -------------------------------------------------------

    def to_halfspaces(self, dim_cap: int = 4) -> list:
        """Irredundant facet inequalities ``normal . x >= c`` (normal >= 0).

        Supported for dimension <= ``dim_cap``; the polyhedron is pointed, so
        every facet contains a vertex and supporting-hyperplane enumeration
        over vertex/ray subsets is complete.
        """
        if self.dim > dim_cap:
            raise ReglabError(f"H-representation capped at dimension {dim_cap}")
        if self._halfspaces is not None:
            return list(self._halfspaces)
        verts = self.vertices()
        r = self.dim
        facets = {}
        axes = list(range(r))
        for nrays in range(r):
            nverts = r - nrays
            if nverts < 1 or nverts > len(verts):
                continue
            for vset in combinations(verts, nverts):
                for rset in combinations(axes, nrays):
                    rows = [
                        [a - b for a, b in zip(v, vset[0])] for v in vset[1:]
                    ]
                    for j in rset:
                        rows.append(
                            [Fraction(1) if k == j else Fraction(0) for k in range(r)]
                        )
                    normal = _nullspace_1d(rows, r) if rows else None
                    if nverts == 1 and nrays == 0:
                        continue
                    if normal is None:
                        continue
                    c = sum(a * x for a, x in zip(normal, vset[0]))
                    if all(x <= 0 for x in normal):
                        normal = [-x for x in normal]
                        c = -c
                    if any(x < 0 for x in normal):
                        continue  # invalid on the recession cone
                    if any(
                        sum(a * x for a, x in zip(normal, v)) < c for v in verts
                    ):
                        continue
                    # facet test: tight vertices + tight rays affinely span r-1
                    tight_v = [
                        v
                        for v in verts
                        if sum(a * x for a, x in zip(normal, v)) == c
                    ]
                    dirs = [
                        [a - b for a, b in zip(v, tight_v[0])] for v in tight_v[1:]
                    ]
                    for j in range(r):
                        if normal[j] == 0:
                            dirs.append(
                                [
                                    Fraction(1) if k == j else Fraction(0)
                                    for k in range(r)
                                ]
                            )
                    if _matrix_rank(dirs, r) != r - 1:
                        continue
                    key = _normalize_ineq(normal, c)
                    facets[key] = key
        # coordinate halfspaces x_j >= 0 when they are facets
        for j in range(r):
            normal = [Fraction(1) if k == j else Fraction(0) for k in range(r)]
            tight_v = [v for v in verts if v[j] == 0]
            if not tight_v:
                continue
            dirs = [[a - b for a, b in zip(v, tight_v[0])] for v in tight_v[1:]]
            for k in range(r):
                if k != j:
                    dirs.append(
                        [Fraction(1) if t == k else Fraction(0) for t in range(r)]
                    )
            if _matrix_rank(dirs, r) == r - 1:
                key = _normalize_ineq(normal, Fraction(0))
                facets[key] = key
        self._halfspaces = sorted(facets.values())
        return list(self._halfspaces)

    def intersect(self, other: "MonoPolyhedron", dim_cap: int = 4) -> "MonoPolyhedron":
        """Intersection via combined H-representations, then re-verticized."""
        if self.dim != other.dim:
            raise ReglabError("dimension mismatch")
        r = self.dim
        ineqs = set(self.to_halfspaces(dim_cap)) | set(other.to_halfspaces(dim_cap))
        for j in range(r):
            ineqs.add(
                _normalize_ineq(
                    [Fraction(1) if k == j else Fraction(0) for k in range(r)],
                    Fraction(0),
                )
            )
        ineqs = sorted(ineqs)
        candidates = set()
        for subset in combinations(ineqs, r):
            rows = [list(normal) for normal, _ in subset]
            rhs = [c for _, c in subset]
            sol = _solve_square(rows, rhs)
            if sol is None or any(x < 0 for x in sol):
                continue
            if all(
                sum(a * x for a, x in zip(normal, sol)) >= c for normal, c in ineqs
            ):
                candidates.add(tuple(sol))
        return MonoPolyhedron(r, candidates)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "points": [
                [[x.numerator, x.denominator] for x in p] for p in sorted(self.points)
            ],
        }

    def __repr__(self):
        pts = ", ".join(str(tuple(map(str, p))) for p in sorted(self.points))
        return f"MonoPolyhedron(dim={self.dim}, points=[{pts}])"


def _normalize_ineq(normal: Sequence[Fraction], c: Fraction) -> tuple:
    """Scale to coprime integers for dedup."""
    from math import gcd

    dens = [x.denominator for x in normal] + [c.denominator]
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(x * lcm) for x in normal] + [int(c * lcm)]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(Fraction(a) for a in ints[:-1]), Fraction(ints[-1])


def _matrix_rank(rows: list, n: int) -> int:
    A = [list(r) for r in rows]
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, len(A)):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pv = A[rank][col]
        A[rank] = [a / pv for a in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def newton_polyhedron(I) -> MonoPolyhedron:
    """NP(I) for a monomial ideal (generator exponents span it)."""
    return MonoPolyhedron.from_monomial_ideal(I)
