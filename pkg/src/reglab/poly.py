"""Sparse multivariate polynomials over F_p or Q with a fixed term order.

A polynomial stores its terms as a tuple of ``(monomial, coefficient)``
pairs in strictly descending term order, so the leading term is ``terms[0]``
and iteration order is canonical.  Values are immutable; every operation
returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .rings import (
    Mono,
    RingError,
    RingSpec,
    mono_deg,
    mono_mul,
    mono_pow,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms):
        """``terms``: iterable of (monomial, coefficient); normalized here."""
        self.ring = ring
        field = ring.field
        acc = {}
        for m, c in terms:
            if len(m) != ring.arity:
                raise RingError("monomial arity does not match ring")
            c = field.coerce(c)
            if m in acc:
                c = field.add(acc[m], c)
            if c == field.zero:
                acc.pop(m, None)
            else:
                acc[m] = c
        key = ring.sort_key
        self.terms = tuple(sorted(acc.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingSpec) -> "Polynomial":
        return cls(ring, ())

    @classmethod
    def one(cls, ring: RingSpec) -> "Polynomial":
        return cls(ring, [(ring.one_monomial(), 1)])

    @classmethod
    def monomial(cls, ring: RingSpec, m: Mono, c=1) -> "Polynomial":
        return cls(ring, [(tuple(m), c)])

    @classmethod
    def variable(cls, ring: RingSpec, name: str) -> "Polynomial":
        return cls.monomial(ring, ring.variable_monomial(ring.var_index(name)))

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = mono_deg(self.terms[0][0])
        return all(mono_deg(m) == d for m, _ in self.terms)

    def is_bihomogeneous(self) -> bool:
        if not self.terms:
            return True
        bd = self.ring.bidegree(self.terms[0][0])
        return all(self.ring.bidegree(m) == bd for m, _ in self.terms)

    # -- leading data --------------------------------------------------------

    def leading_monomial(self) -> Mono:
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coefficient(self):
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        return self.terms[0][1]

    def degree(self) -> int:
        """Total degree (max over terms); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m, _ in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingError("ring mismatch")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return Polynomial(self.ring, list(self.terms) + list(other.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        neg = [(m, field.neg(c)) for m, c in other.terms]
        return Polynomial(self.ring, list(self.terms) + neg)

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial(self.ring, [(m, field.neg(c)) for m, c in self.terms])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        acc = {}
        zero = field.zero
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                c = field.mul(c1, c2)
                if m in acc:
                    c = field.add(acc[m], c)
                if c == zero:
                    acc.pop(m, None)
                else:
                    acc[m] = c
        return Polynomial(self.ring, acc.items())

    def mul_term(self, m: Mono, c=1) -> "Polynomial":
        field = self.ring.field
        c = field.coerce(c)
        if c == field.zero:
            return Polynomial.zero(self.ring)
        return Polynomial(
            self.ring, [(mono_mul(t, m), field.mul(k, c)) for t, k in self.terms]
        )

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise RingError("negative polynomial power")
        out = Polynomial.one(self.ring)
        base = self
        while e:
            if e & 1:
                out = out * base
            base_needed = e >> 1
            if base_needed:
                base = base * base
            e >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field.coerce(c)
        return Polynomial(self.ring, [(m, field.mul(k, c)) for m, k in self.terms])

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == self.ring.field.one:
            return self
        return self.scale(self.ring.field.inv(lc))

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __repr__(self):
        return f"Polynomial({render(self)})"


def frobenius_power(p: Polynomial, e: int) -> Polynomial:
    """q-th power with q = char^e, computed term-wise (char p > 0 only)."""
    if p.ring.char == 0:
        raise RingError("frobenius_power requires positive characteristic")
    if e < 0:
        raise RingError("negative Frobenius iterate")
    q = p.ring.char**e
    field = p.ring.field
    return Polynomial(p.ring, [(mono_pow(m, q), field.pow(c, q)) for m, c in p.terms])


# -- parsing ----------------------------------------------------------------
#
# poly   := ['+'|'-'] term (('+'|'-') term)*
# term   := factor ('*'? factor)*
# factor := int | var ['^' nat] | '(' poly ')' ['^' nat]
#
# Whitespace is ignored.  In char 2, '-' and '+' coincide.


class _Parser:
    def __init__(self, ring: RingSpec, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0
        self.max_exp = 10**6  # exponent overflow guard

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected integer")
        n = int(self.text[start : self.pos])
        if n > self.max_exp:
            self.error("exponent overflow")
        return n

    def parse_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            self.error("expected variable")
        return self.text[start : self.pos]

    def parse_poly(self) -> Polynomial:
        sign = 1
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        out = self.parse_term().scale(sign)
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                out = out + self.parse_term()
            elif ch == "-":
                self.pos += 1
                out = out - self.parse_term()
            else:
                return out

    def parse_term(self) -> Polynomial:
        out = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                out = out * self.parse_factor()
            elif ch.isdigit() or ch.isalpha() or ch in ("(", "_"):
                out = out * self.parse_factor()
            else:
                return out

    def parse_factor(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            inner = self.parse_poly()
            self.take(")")
            return self._maybe_power(inner)
        if ch.isdigit():
            n = self.parse_nat()
            return Polynomial(self.ring, [(self.ring.one_monomial(), n)])
        if ch.isalpha() or ch == "_":
            name = self.parse_name()
            if name not in self.ring.variables:
                self.error(f"unknown variable {name!r}")
            mono = self.ring.variable_monomial(self.ring.var_index(name))
            p = Polynomial.monomial(self.ring, mono)
            return self._maybe_power(p)
        self.error("expected a factor")

    def _maybe_power(self, p: Polynomial) -> Polynomial:
        if self.peek() == "^":
            self.take("^")
            e = self.parse_nat()
            return p**e
        return p


def parse_polynomial(ring: RingSpec, text: str) -> Polynomial:
    """Parse ``text`` in the polynomial grammar; raises ParseError."""
    parser = _Parser(ring, text)
    p = parser.parse_poly()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input")
    return p


def render(p: Polynomial) -> str:
    """Canonical string form; ``parse(render(p)) == p``."""
    if p.is_zero():
        return "0"
    ring = p.ring
    parts = []
    for i, (m, c) in enumerate(p.terms):
        if isinstance(c, Fraction):
            neg = c < 0
            mag = -c if neg else c
            cs = str(mag)
        else:
            neg = False
            cs = str(c)
        mono = ring.render_monomial(m)
        if mono == "1":
            token = cs
        elif cs == "1":
            token = mono
        else:
            token = f"{cs}*{mono}"
        if i == 0:
            parts.append(("-" if neg else "") + token)
        else:
            parts.append(("- " if neg else "+ ") + token)
    return " ".join(parts)


def poly_from_exponents(ring: RingSpec, exps: Iterable[Mono]) -> Polynomial:
    """Sum of monomials with coefficient 1 (useful in char 2)."""
    return Polynomial(ring, [(tuple(m), 1) for m in exps])
