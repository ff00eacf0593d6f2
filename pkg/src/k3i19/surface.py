"""Weierstrass models of the [19,1,1,1,1,1] elliptic K3 surface and their fibres.

Three models are provided: the canonical model over Q, a Q-isomorphic model
with good reduction at 3, and the reduction at 19.  Fibre types are read off
from valuations of c4, c6 and the discriminant at each place of P^1 without
factoring into irreducibles: places are squarefree polynomials on which all
relevant valuations are constant.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ffield import FieldDesc, chi, is_prime
from .poly import (
    INF,
    QQ,
    Poly,
    ord_at,
    poly_gcd,
    rational_is_square,
    squarefree_decomposition,
    substitute,
)

# Euler number of a K3 surface: sum of Euler numbers of the singular fibres.
K3_EULER = 24
# t-degree weight of a_i is 2*i*CHI for a K3 (CHI = 2); c4, c6, disc get 8, 12, 24.
CHI = 2

F_COEFFS = (28, 74, 109, 114, 86, 50, 21, 6, 1)
G_COEFFS = (
    Fraction(299, 2), Fraction(1167, 2), Fraction(2517, 2),
    1873, 2136, 1932, 1416, 846, 408, 156, 45, 9, 1,
)
QUINTIC_COEFFS = (59, 62, 61, 38, 15, 4)
A3_COEFFS = (4, 4, 3, 3, 1)
B3_COEFFS = (4, 14, 23, 22, 15, 8, 2)
C3_COEFFS = (1, 5, 15, 24, 27, 21, 12, 5, 1)


class NotEllipticError(ValueError):
    pass


class UnsupportedFiberError(NotImplementedError):
    pass


def f_poly() -> Poly:
    return Poly(F_COEFFS)


def g_poly() -> Poly:
    return Poly(G_COEFFS)


def quintic() -> Poly:
    return Poly(QUINTIC_COEFFS)


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in K[t]."""

    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly
    name: str = ""

    @classmethod
    def short(cls, a4: Poly, a6: Poly, name: str = "") -> "WeierstrassModel":
        zero = Poly((), a4.ring)
        return cls(zero, zero, zero, a4, a6, name)

    @property
    def ring(self):
        return self.a4.ring

    @property
    def characteristic(self) -> int:
        return self.ring.characteristic

    @property
    def coefficients(self) -> tuple[Poly, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    def change_ring(self, ring) -> "WeierstrassModel":
        return WeierstrassModel(*(a.change_ring(ring) for a in self.coefficients), name=self.name)

    # standard quantities
    @property
    def b2(self) -> Poly:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> Poly:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Poly:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> Poly:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self) -> Poly:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self) -> Poly:
        b2, b4, b6 = self.b2, self.b4, self.b6
        return -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> Poly:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def to_json(self) -> str:
        return json.dumps(model_to_dict(self))


def model_to_dict(m: WeierstrassModel) -> dict:
    if isinstance(m.ring, FieldDesc) and m.ring.n != 1:
        raise ValueError("only models over Q or a prime field are serializable")
    coeffs = []
    for a in m.coefficients:
        if m.characteristic:
            coeffs.append([f"{c.c[0]}/1" for c in a.coeffs])
        else:
            coeffs.append([f"{c.numerator}/{c.denominator}" for c in a.coeffs])
    return {"char": m.characteristic, "a": coeffs}


def model_from_dict(doc: dict) -> WeierstrassModel:
    char = int(doc["char"])
    ring = QQ if char == 0 else FieldDesc(char)
    polys = [Poly([Fraction(s) for s in cs], ring) for cs in doc["a"]]
    if len(polys) != 5:
        raise ValueError("expected five coefficient lists a1, a2, a3, a4, a6")
    return WeierstrassModel(*polys)


@dataclass(frozen=True)
class ShortInvariants:
    c4: Poly
    c6: Poly
    discriminant: Poly
    j: tuple[Poly, Poly]


def short_invariants(m: WeierstrassModel) -> ShortInvariants:
    if m.characteristic == 2:
        raise ValueError("characteristic 2 is not supported")
    disc = m.discriminant
    if not disc:
        raise NotEllipticError("discriminant vanishes identically")
    c4 = m.c4
    return ShortInvariants(c4, m.c6, disc, (c4 * c4 * c4, disc))


# -- the three models ----------------------------------------------------


def canonical_model() -> WeierstrassModel:
    return WeierstrassModel.short(-27 * f_poly(), 54 * g_poly(), name="canonical")


def char3_model() -> WeierstrassModel:
    """Model over Q with good reduction at 3: y^2 = x^3 + A x^2 - B x + C."""
    zero = Poly(())
    return WeierstrassModel(
        zero, Poly(A3_COEFFS), zero, -Poly(B3_COEFFS), Poly(C3_COEFFS), name="char3"
    )


def char3_model_by_substitution() -> WeierstrassModel:
    """Rebuild the char-3 model from y^2 = x^3 - f/3 x + 2g/27 via x -> x + A/3."""
    cubic = [Fraction(2, 27) * g_poly(), Fraction(-1, 3) * f_poly(), Poly(()), Poly((1,))]
    shift = Fraction(1, 3) * Poly(A3_COEFFS)
    c0, c1, c2, c3 = substitute(cubic, shift)
    assert c3 == 1
    zero = Poly(())
    return WeierstrassModel(zero, c2, zero, c1, c0, name="char3")


def char19_model() -> WeierstrassModel:
    F = FieldDesc(19)
    t = Poly.gen(F)
    a4 = -8 * (t + 3) * (t - 5) ** 7
    a6 = -3 * (t + 3) ** 11 * (t - 5)
    return WeierstrassModel.short(a4, a6, name="char19")


MODELS = {"canonical": canonical_model, "char3": char3_model, "char19": char19_model}


def verify_quintic_identity() -> Fraction:
    """The constant c with g^2 - f^3 = c * quintic, checked exactly."""
    f, g = f_poly(), g_poly()
    diff = g * g - f * f * f
    if diff.degree != 5:
        raise ArithmeticError(f"g^2 - f^3 has degree {diff.degree}, expected 5")
    quot, rem = diff.divrem(quintic())
    if rem or not quot.is_constant():
        raise ArithmeticError("g^2 - f^3 is not a constant multiple of the quintic")
    return quot[0]


def reduce_model(m: WeierstrassModel, p: int) -> WeierstrassModel:
    if m.characteristic != 0:
        raise ValueError("model is already in positive characteristic")
    if p == 2:
        raise ValueError("no model with an I19 fibre exists in characteristic 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    F = FieldDesc(p)
    try:
        red = m.change_ring(F)
    except ZeroDivisionError as exc:
        raise ValueError(f"coefficient denominator divisible by {p}") from exc
    if not red.discriminant:
        raise NotEllipticError(f"model degenerates mod {p}; use a model with good reduction there")
    return WeierstrassModel(*red.coefficients, name=m.name)


# -- fibres --------------------------------------------------------------

# kind -> (components, euler)
def fiber_numbers(kind: str) -> tuple[int, int]:
    if kind.endswith("*"):
        base = kind[:-1]
        starred = {"IV": (7, 8), "III": (8, 9), "II": (9, 10)}
        if base in starred:
            return starred[base]
        n = int(base[1:])
        return n + 5, n + 6
    if kind in ("II", "III", "IV"):
        return {"II": (1, 2), "III": (2, 3), "IV": (3, 4)}[kind]
    n = int(kind[1:])
    return n, n


@dataclass(frozen=True)
class KodairaFiber:
    """Singular fibres of one Kodaira type over the roots of ``place``.

    ``place`` is a monic squarefree polynomial, or ``None`` for t = infinity.
    ``count`` is the number of geometric fibres (deg place).
    """

    place: Poly | None
    kind: str
    components: int
    euler: int
    split: bool | None = None
    count: int = 1

    @property
    def at_infinity(self) -> bool:
        return self.place is None

    def label(self) -> str:
        where = "inf" if self.place is None else str(self.place)
        return f"{self.kind}@{where}" + (f" x{self.count}" if self.count > 1 else "")


def _kind(ord_c4, ord_c6, ord_disc, char: int) -> str:
    if ord_c4 == 0:
        return f"I{ord_disc}"
    if char == 3:
        raise UnsupportedFiberError("additive fibres in characteristic 3 are not classified")
    if ord_c4 >= 4 and ord_c6 >= 6 and ord_disc >= 12:
        raise UnsupportedFiberError("non-minimal Weierstrass model at this place")
    if ord_disc == 2:
        return "II"
    if ord_disc == 3:
        return "III"
    if ord_disc == 4:
        return "IV"
    if ord_disc == 6 and ord_c4 >= 2 and ord_c6 >= 3:
        return "I0*"
    if ord_c4 == 2 and ord_c6 == 3 and ord_disc > 6:
        return f"I{ord_disc - 6}*"
    if ord_disc == 8:
        return "IV*"
    if ord_disc == 9:
        return "III*"
    if ord_disc == 10:
        return "II*"
    raise UnsupportedFiberError(
        f"valuation pattern (c4, c6, disc) = ({ord_c4}, {ord_c6}, {ord_disc}) not classified"
    )


def _uniform_pieces(place: Poly, h: Poly) -> list[tuple[Poly, float]]:
    """Split a squarefree place into pieces on which ord(h) is constant."""
    if not h:
        return [(place, INF)]
    pieces = []
    layers = [place]  # layers[j] = roots with ord >= j
    rest = h
    while True:
        g = poly_gcd(layers[-1], rest)
        if g.is_constant():
            break
        layers.append(g)
        rest = rest.exact_div(g)
    for j in range(len(layers)):
        hi = layers[j + 1] if j + 1 < len(layers) else Poly((1,), place.ring)
        piece = layers[j].exact_div(hi)
        if not piece.is_constant():
            pieces.append((piece.monic(), j))
    return pieces


def node_of_cubic(cubic: Poly):
    """(x0, x1) for a monic cubic (x - x0)^2 (x - x1), or None if it has no double root.

    Raises for a triple root (cusp).
    """
    g = poly_gcd(cubic, cubic.derivative())
    if g.is_constant():
        return None
    if g.degree != 1:
        raise ValueError("cubic has a triple root")
    x0 = -g[0]
    x1 = -cubic[2] - 2 * x0
    return x0, x1


def fiber_cubic(m: WeierstrassModel, values: Sequence) -> Poly:
    """Monic cubic in x after completing the square, given a1..a6 at a point."""
    a1, a2, a3, a4, a6 = values
    ring = m.ring
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    half = ring(Fraction(1, 2))
    return Poly((b6 * half * half, b4 * half, b2 * half * half, 1), ring)


def _is_square(x, ring) -> bool:
    if ring == QQ:
        return rational_is_square(x)
    return chi(x) == 1


def _split_from_values(m: WeierstrassModel, values) -> bool:
    node = node_of_cubic(fiber_cubic(m, values))
    if node is None:
        raise ValueError("specialized fibre is smooth")
    x0, x1 = node
    return _is_square(x0 - x1, m.ring)


def specialized_cubic_at_infinity(m: WeierstrassModel) -> Poly:
    """Cubic in xi = x/t^4 after s = 1/t and s = 0."""
    values = [a[i * CHI] for i, a in zip((1, 2, 3, 4, 6), m.coefficients)]
    return fiber_cubic(m, values)


def fiber_at_infinity(m: WeierstrassModel) -> tuple[KodairaFiber, bool]:
    for i, a in zip((1, 2, 3, 4, 6), m.coefficients):
        if a.degree > i * CHI:
            raise ValueError(f"a{i} exceeds its degree weight {i * CHI}")
    ord_d = ord_at(m.discriminant, None, 12 * CHI)
    if ord_d == 0:
        raise ValueError("fibre at infinity is smooth")
    ord_c4 = ord_at(m.c4, None, 4 * CHI)
    ord_c6 = ord_at(m.c6, None, 6 * CHI)
    kind = _kind(ord_c4, ord_c6, ord_d, m.characteristic)
    split = None
    if ord_c4 == 0:
        node = node_of_cubic(specialized_cubic_at_infinity(m))
        x0, x1 = node
        split = _is_square(x0 - x1, m.ring)
    comps, euler = fiber_numbers(kind)
    return KodairaFiber(None, kind, comps, euler, split), split


def classify_fibers(m: WeierstrassModel) -> list[KodairaFiber]:
    char = m.characteristic
    if char == 2:
        raise ValueError("characteristic 2 is not supported")
    disc = m.discriminant
    if not disc:
        raise NotEllipticError("discriminant vanishes identically")
    c4, c6 = m.c4, m.c6
    fibers = []
    for mult, place in sorted(squarefree_decomposition(disc).items()):
        for piece4, o4 in _uniform_pieces(place, c4):
            for piece, o6 in _uniform_pieces(piece4, c6):
                kind = _kind(o4, o6, mult, char)
                comps, euler = fiber_numbers(kind)
                split = None
                if o4 == 0 and piece.degree == 1:
                    root = -piece[0]
                    split = _split_from_values(m, [a(root) for a in m.coefficients])
                fibers.append(KodairaFiber(piece, kind, comps, euler, split, piece.degree))
    try:
        inf, _ = fiber_at_infinity(m)
        fibers.insert(0, inf)
    except ValueError as exc:
        if "smooth" not in str(exc):
            raise
    total = sum(f.euler * f.count for f in fibers)
    if total != K3_EULER:
        raise ArithmeticError(f"Euler numbers sum to {total}, not {K3_EULER}")
    return fibers


def fiber_multiset(fibers: Sequence[KodairaFiber]) -> Counter:
    out: Counter = Counter()
    for f in fibers:
        out[f.kind] += f.count
    return out


# -- sections ------------------------------------------------------------


def _lift(p: Poly, ring) -> Poly:
    return p if p.ring == ring else p.change_ring(ring)


def _as_fraction(v, ring) -> tuple[Poly, Poly]:
    if isinstance(v, tuple):
        num, den = v
        return _lift(num, ring), _lift(den, ring)
    if isinstance(v, Poly):
        return _lift(v, ring), Poly((1,), ring)
    raise TypeError("coordinate must be a Poly or a (numerator, denominator) pair")


def is_section(m: WeierstrassModel, x, y) -> bool:
    """Whether (x(t), y(t)) satisfies the Weierstrass equation identically.

    Coordinates are polynomials or (numerator, denominator) pairs over the
    model's field or an extension of it.
    """
    xn, xd = _as_fraction(x, _ring_of(x, m))
    ring = xn.ring
    yn, yd = _as_fraction(y, ring)
    model = m if m.ring == ring else m.change_ring(ring)
    a1, a2, a3, a4, a6 = model.coefficients
    lhs = yn * yn * xd ** 3 + a1 * xn * yn * yd * xd * xd + a3 * yn * yd * xd ** 3
    rhs = yd * yd * (xn ** 3 + a2 * xn * xn * xd + a4 * xn * xd * xd + a6 * xd ** 3)
    return lhs == rhs


def _ring_of(v, m: WeierstrassModel):
    if isinstance(v, tuple):
        v = v[0]
    return v.ring if isinstance(v, Poly) else m.ring


def section_P():
    """P = (t^2 + t, t - 1) on the char-3 model over F_3."""
    t = Poly.gen(FieldDesc(3))
    return t * t + t, t - 1


def section_Q():
    """Q over F_9 = F_3[i], i^2 = -1."""
    F9 = FieldDesc(3, 2)
    i = F9.gen()
    assert i * i == -1
    t = Poly.gen(F9)
    return -t * t + (1 + i) * t + 1, t**4 + i * t**3 + (1 + i) * t - i


def section_R():
    """R on the char-19 model over F_361, as (numerator, denominator) pairs."""
    F = FieldDesc(19, 2)
    sqrt_m1 = F.sqrt(F(-1))
    t = Poly.gen(F)
    den = t - 5
    return (2 * (t + 3) ** 10, den**6), (7 * sqrt_m1 * (t + 3) ** 15, den**9)
