"""Exact univariate polynomials over Q or a finite field.

A polynomial is stored as a tuple of coefficients, lowest degree first, with
trailing zeros stripped so that equality is structural.  Coefficients over Q
are :class:`fractions.Fraction`; over a finite field they are
:class:`k3i19.ffield.FF` elements.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

NEG_INF = float("-inf")
INF = math.inf


class RationalField:
    """The coefficient ring Q."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = RationalField()


class Poly:
    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable = (), ring=QQ):
        cs = [ring(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.ring = ring

    @classmethod
    def gen(cls, ring=QQ) -> "Poly":
        return cls((0, 1), ring)

    @classmethod
    def constant(cls, c, ring=QQ) -> "Poly":
        return cls((c,), ring)

    @classmethod
    def from_roots(cls, roots: Iterable, ring=QQ) -> "Poly":
        out = cls((1,), ring)
        for r in roots:
            out = out * cls((-ring(r), 1), ring)
        return out

    # -- basic structure -------------------------------------------------

    @property
    def degree(self):
        """Degree, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self}, {self.ring!r})"

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = str(c)
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            elif mono and ("+" in cs[1:] or "-" in cs[1:] or "/" in cs):
                cs = f"({cs})"
            terms.append(cs + ("*" if cs and cs != "-" and mono else "") + mono)
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise TypeError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return Poly((other,), self.ring)

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.ring)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly((), self.ring)
        out = [self.ring.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly((1,), self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divrem(self, other) -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv_lead = self.ring.one / other.lead
        quot = [self.ring.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv_lead
            quot[k] = c
            if c == 0:
                continue
            for j, y in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * y
        return Poly(quot, self.ring), Poly(rem[:dq], self.ring)

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other) -> "Poly":
        return self.divrem(other)[0]

    def __mod__(self, other) -> "Poly":
        return self.divrem(other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = self.divrem(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    # -- evaluation and calculus ----------------------------------------

    def __call__(self, x):
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, h: "Poly") -> "Poly":
        acc = Poly((), self.ring)
        for c in reversed(self.coeffs):
            acc = acc * h + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:], self.ring)

    def monic(self) -> "Poly":
        if not self:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        inv = self.ring.one / self.lead
        return Poly([c * inv for c in self.coeffs], self.ring)

    def reverse(self, weight: int) -> "Poly":
        """``t**weight * p(1/t)``; requires ``deg p <= weight``."""
        if self.degree > weight:
            raise ValueError(f"degree {self.degree} exceeds weight {weight}")
        cs = list(self.coeffs) + [self.ring.zero] * (weight + 1 - len(self.coeffs))
        return Poly(reversed(cs), self.ring)

    def change_ring(self, ring) -> "Poly":
        return Poly([ring(c) for c in self.coeffs], ring)

    def content_denominator(self) -> int:
        """lcm of coefficient denominators (Q only)."""
        return math.lcm(*(Fraction(c).denominator for c in self.coeffs)) if self.coeffs else 1


def poly_arith(op: str, p: Poly, q: Poly):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divrem":
        return p.divrem(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over a field; gcd(p, 0) is monic(p)."""
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    while q:
        p, q = q, p % q
    return p.monic()


def ord_at(p: Poly, place: Poly | None = None, weight: int | None = None):
    """Valuation of ``p`` at a finite place or at infinity.

    A finite place is a non-constant squarefree polynomial and the result is
    the largest ``k`` with ``place**k | p``.  Pass ``place=None`` and a
    ``weight`` for the place at infinity, where the valuation is
    ``weight - deg p``.  The zero polynomial has valuation ``inf``.
    """
    if not p:
        return INF
    if place is None:
        if weight is None:
            raise ValueError("ord at infinity needs a weight")
        return weight - p.degree
    if place.is_constant():
        raise ValueError("place must be non-constant")
    k = 0
    while True:
        quot, rem = p.divrem(place)
        if rem:
            return k
        p, k = quot, k + 1


def substitute(coeffs_in_x: Sequence[Poly], shift: Poly) -> list[Poly]:
    """Coefficients of ``P(x + shift)`` where ``P = sum coeffs_in_x[k] x^k``.

    Coefficients are polynomials in t; the result is given lowest degree
    first in x, trailing zeros removed.
    """
    if not coeffs_in_x:
        return []
    ring = shift.ring
    zero = Poly((), ring)
    acc: list[Poly] = []
    for c in reversed(coeffs_in_x):
        # acc <- acc * (x + shift) + c
        nxt = [zero] * (len(acc) + 1)
        for k, a in enumerate(acc):
            nxt[k + 1] = nxt[k + 1] + a
            nxt[k] = nxt[k] + a * shift
        nxt[0] = nxt[0] + c
        acc = nxt
    while acc and not acc[-1]:
        acc.pop()
    return acc


def squarefree_decomposition(p: Poly) -> dict[int, Poly]:
    """Map multiplicity -> monic squarefree factor, so p = lead * prod(f**m).

    Works in characteristic 0 and in positive characteristic (including
    factors that are p-th powers).
    """
    if not p:
        raise ValueError("zero polynomial")
    char = p.ring.characteristic
    out: dict[int, Poly] = {}
    _sqf(p.monic(), char, 1, out)
    return out


def _sqf(f: Poly, char: int, scale: int, out: dict[int, Poly]) -> None:
    if f.is_constant():
        return
    df = f.derivative()
    if not df:
        _sqf(_pth_root(f, char), char, scale * char, out)
        return
    c = poly_gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while not w.is_constant():
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if not z.is_constant():
            _put(out, i * scale, z)
        i += 1
        w = y
        c = c.exact_div(y)
    if not c.is_constant():
        # remaining c is a p-th power
        _sqf(_pth_root(c.monic(), char), char, scale * char, out)


def _put(out: dict[int, Poly], m: int, f: Poly) -> None:
    out[m] = out[m] * f if m in out else f


def _pth_root(f: Poly, char: int) -> Poly:
    if char == 0:
        raise ArithmeticError("zero derivative in characteristic 0")
    cs = f.coeffs
    root = [cs[k].pth_root() for k in range(0, len(cs), char)]
    if any(cs[k] != 0 for k in range(len(cs)) if k % char):
        raise ArithmeticError("polynomial is not a p-th power")
    return Poly(root, f.ring)


def rational_is_square(x: Fraction) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def format_fraction(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
