"""Coefficient fields, polynomial rings, monomials and term orders.

Monomials are plain exponent tuples (one nonnegative int per ring variable);
all monomial arithmetic lives in small module-level functions so the hot
loops in the division algorithm stay cheap.  A :class:`RingSpec` fixes the
coefficient field, the variable names and the term order, and provides the
comparison keys used everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Mono = tuple  # exponent tuple, length == ring arity


class RingError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p with elements stored as least nonnegative residues."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        self.p = p

    @property
    def char(self) -> int:
        return self.p

    def coerce(self, a) -> int:
        if isinstance(a, Fraction):
            return self.mul(a.numerator % self.p, self.inv(a.denominator % self.p))
        return int(a) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    zero = 0
    one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalField:
    """Exact rationals via fractions.Fraction."""

    __slots__ = ()

    char = 0

    def coerce(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def pow(self, a, e: int):
        return a**e

    zero = Fraction(0)
    one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()

OrderTag = Union[str, tuple]  # "degrevlex" | ("elim", (idx, ...))


@dataclass(frozen=True)
class RingSpec:
    """A polynomial ring: characteristic, ordered variables, term order.

    ``order`` is ``"degrevlex"`` or ``("elim", block)`` where ``block`` is a
    tuple of variable indices compared degrevlex first (elimination order).
    ``bigrading`` optionally maps each variable to a vector in Z^2; it is
    metadata for bihomogeneity checks and never affects the term order.
    """

    char: int
    variables: tuple
    order: OrderTag = "degrevlex"
    bigrading: Optional[tuple] = None  # tuple of (d1, d2) per variable

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise RingError(f"characteristic must be 0 or prime, got {self.char}")
        if len(set(self.variables)) != len(self.variables) or not all(self.variables):
            raise RingError("variable names must be distinct and nonempty")
        if isinstance(self.order, tuple):
            tag, block = self.order
            if tag != "elim" or not all(0 <= i < len(self.variables) for i in block):
                raise RingError(f"bad order spec {self.order!r}")
        elif self.order != "degrevlex":
            raise RingError(f"unknown order {self.order!r}")
        if self.bigrading is not None and len(self.bigrading) != len(self.variables):
            raise RingError("bigrading must assign a vector to every variable")

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def field(self):
        return QQ if self.char == 0 else PrimeField(self.char)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r}") from None

    # -- term order -------------------------------------------------------

    def sort_key(self, m: Mono):
        """Monotone key: m1 > m2 in the term order iff key(m1) > key(m2)."""
        if self.order == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        block = self.order[1]
        bset = set(block)
        mb = tuple(m[i] for i in block)
        mr = tuple(e for i, e in enumerate(m) if i not in bset)
        return (
            sum(mb),
            tuple(-e for e in reversed(mb)),
            sum(mr),
            tuple(-e for e in reversed(mr)),
        )

    def heap_key(self, m: Mono):
        """Key for a min-heap that pops the largest monomial first."""
        if self.order == "degrevlex":
            return (-sum(m), tuple(reversed(m)))
        block = self.order[1]
        bset = set(block)
        mb = tuple(m[i] for i in block)
        mr = tuple(e for i, e in enumerate(m) if i not in bset)
        return (-sum(mb), tuple(reversed(mb)), -sum(mr), tuple(reversed(mr)))

    def compare(self, m1: Mono, m2: Mono) -> int:
        """-1, 0, 1 for m1 <, =, > m2."""
        if len(m1) != self.arity or len(m2) != self.arity:
            raise RingError("arity mismatch in monomial comparison")
        k1, k2 = self.sort_key(m1), self.sort_key(m2)
        return (k1 > k2) - (k1 < k2)

    # -- monomial formatting ----------------------------------------------

    def render_monomial(self, m: Mono) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def one_monomial(self) -> Mono:
        return (0,) * self.arity

    def variable_monomial(self, i: int) -> Mono:
        return tuple(1 if j == i else 0 for j in range(self.arity))

    def bidegree(self, m: Mono) -> tuple:
        if self.bigrading is None:
            raise RingError("ring has no bigrading")
        d1 = sum(e * g[0] for e, g in zip(m, self.bigrading))
        d2 = sum(e * g[1] for e, g in zip(m, self.bigrading))
        return (d1, d2)

    def to_json(self) -> dict:
        order = self.order
        if isinstance(order, tuple):
            order = {"eliminate": [self.variables[i] for i in order[1]]}
        return {"char": self.char, "vars": list(self.variables), "order": order}

    @staticmethod
    def from_json(d: dict) -> "RingSpec":
        order = d.get("order", "degrevlex")
        variables = tuple(d["vars"])
        if isinstance(order, dict):
            block = tuple(variables.index(v) for v in order["eliminate"])
            order = ("elim", block)
        return RingSpec(char=d["char"], variables=variables, order=order)


def ring(variables: str | Sequence[str], char: int = 2, order: OrderTag = "degrevlex",
         bigrading: Optional[dict] = None) -> RingSpec:
    """Convenience constructor; ``variables`` may be a comma-separated string."""
    if isinstance(variables, str):
        variables = tuple(v.strip() for v in variables.split(","))
    else:
        variables = tuple(variables)
    bg = None
    if bigrading is not None:
        bg = tuple(tuple(bigrading[v]) for v in variables)
    return RingSpec(char=char, variables=variables, order=order, bigrading=bg)


# -- monomial arithmetic (lattice operations on exponent tuples) -----------

def mono_mul(m1: Mono, m2: Mono) -> Mono:
    return tuple(a + b for a, b in zip(m1, m2))


def mono_div(m1: Mono, m2: Mono) -> Mono:
    """m1 / m2; requires m2 | m1."""
    out = tuple(a - b for a, b in zip(m1, m2))
    if any(e < 0 for e in out):
        raise RingError(f"{m2} does not divide {m1}")
    return out


def mono_divides(m1: Mono, m2: Mono) -> bool:
    """True iff m1 | m2."""
    return all(a <= b for a, b in zip(m1, m2))


def mono_lcm(m1: Mono, m2: Mono) -> Mono:
    return tuple(a if a > b else b for a, b in zip(m1, m2))


def mono_gcd(m1: Mono, m2: Mono) -> Mono:
    return tuple(a if a < b else b for a, b in zip(m1, m2))


def mono_deg(m: Mono) -> int:
    return sum(m)


def mono_deg_on(m: Mono, indices: Iterable[int]) -> int:
    """Total degree restricted to a variable subset (e.g. deg over x,y)."""
    return sum(m[i] for i in indices)


def mono_pow(m: Mono, e: int) -> Mono:
    return tuple(a * e for a in m)
