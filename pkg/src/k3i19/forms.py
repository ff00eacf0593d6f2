"""Definite binary quadratic forms given by 2x2 Gram matrices.

Reduction is the classical Gauss algorithm on the Gram matrix
``(m11 m12; m12 m22)``; similarity allows rational rescaling and any
integral change of basis of determinant +-1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix2 = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Matrix2 = ((1, 0), (0, 1))


@dataclass(frozen=True)
class Gram2:
    m11: Fraction
    m12: Fraction
    m22: Fraction

    def __init__(self, m11, m12, m22):
        object.__setattr__(self, "m11", Fraction(m11))
        object.__setattr__(self, "m12", Fraction(m12))
        object.__setattr__(self, "m22", Fraction(m22))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Gram2":
        (a, b), (b2, c) = rows
        if Fraction(b) != Fraction(b2):
            raise ValueError("Gram matrix is not symmetric")
        return cls(a, b, c)

    @property
    def rows(self) -> list[list[Fraction]]:
        return [[self.m11, self.m12], [self.m12, self.m22]]

    @property
    def det(self) -> Fraction:
        return self.m11 * self.m22 - self.m12 * self.m12

    def scale(self, s) -> "Gram2":
        s = Fraction(s)
        return Gram2(self.m11 * s, self.m12 * s, self.m22 * s)

    __mul__ = scale
    __rmul__ = scale

    def __neg__(self) -> "Gram2":
        return self.scale(-1)

    def is_definite(self) -> bool:
        return self.det > 0

    def transform(self, u: Matrix2) -> "Gram2":
        """U^T G U."""
        (p, q), (r, s) = u
        a, b, c = self.m11, self.m12, self.m22
        return Gram2(
            a * p * p + 2 * b * p * r + c * r * r,
            a * p * q + b * (p * s + q * r) + c * r * s,
            a * q * q + 2 * b * q * s + c * s * s,
        )

    def content(self) -> Fraction:
        """Positive rational g with G / g integral and primitive."""
        den = math.lcm(*(x.denominator for x in (self.m11, self.m12, self.m22)))
        num = math.gcd(*(int(x * den) for x in (self.m11, self.m12, self.m22)))
        return Fraction(num, den)

    def is_reduced(self) -> bool:
        a, b, c = self.m11, self.m12, self.m22
        if not (2 * abs(b) <= a <= c):
            return False
        if (2 * abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __str__(self) -> str:
        return f"({self.m11} {self.m12}; {self.m12} {self.m22})"


def matmul(u: Matrix2, v: Matrix2) -> Matrix2:
    return (
        (u[0][0] * v[0][0] + u[0][1] * v[1][0], u[0][0] * v[0][1] + u[0][1] * v[1][1]),
        (u[1][0] * v[0][0] + u[1][1] * v[1][0], u[1][0] * v[0][1] + u[1][1] * v[1][1]),
    )


def mat_det(u: Matrix2) -> int:
    return u[0][0] * u[1][1] - u[0][1] * u[1][0]


def mat_inverse(u: Matrix2) -> Matrix2:
    d = mat_det(u)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return ((u[1][1] * d, -u[0][1] * d), (-u[1][0] * d, u[0][0] * d))


_S: Matrix2 = ((0, -1), (1, 0))


def _shear(k: int) -> Matrix2:
    return ((1, k), (0, 1))


def _round_half_down(x: Fraction) -> int:
    # nearest integer, ties toward -inf
    return math.ceil(x - Fraction(1, 2))


def gauss_reduce(g: Gram2) -> tuple[Gram2, Matrix2]:
    """Reduced form R and U in SL2(Z) with U^T G U = R.

    A negative definite input is negated first (then U^T (-G) U = R).
    """
    if g.det <= 0:
        raise ValueError(f"form {g} is not definite")
    if g.m11 < 0:
        g = -g
    u = IDENTITY
    cur = g
    while True:
        k = -_round_half_down(cur.m12 / cur.m11)
        if k:
            step = _shear(k)
            cur, u = cur.transform(step), matmul(u, step)
        if cur.m22 < cur.m11:
            cur, u = cur.transform(_S), matmul(u, _S)
            continue
        break
    if cur.m12 < 0 and (2 * abs(cur.m12) == cur.m11 or cur.m11 == cur.m22):
        step = _shear(1) if 2 * abs(cur.m12) == cur.m11 else _S
        cur, u = cur.transform(step), matmul(u, step)
    assert cur.is_reduced(), cur
    assert g.transform(u) == cur
    return cur, u


def primitive_positive(g: Gram2) -> tuple[Gram2, Fraction]:
    """(G * s, s) with G * s primitive integral and positive definite."""
    if g.det <= 0:
        raise ValueError(f"form {g} is degenerate or indefinite")
    s = 1 / g.content()
    if g.m11 < 0:
        s = -s
    return g.scale(s), s


@dataclass(frozen=True)
class Similarity:
    similar: bool
    scale: Fraction | None = None
    transform: Matrix2 | None = None


def _gl2_reduce(g: Gram2) -> tuple[Gram2, Matrix2]:
    red, u = gauss_reduce(g)
    if red.m12 < 0:
        flip = ((1, 0), (0, -1))
        red, u = red.transform(flip), matmul(u, flip)
    return red, u


def similar(g1: Gram2, g2: Gram2) -> Similarity:
    """Whether g2 = scale * V^T g1 V for a rational scale and V in GL2(Z).

    On success the witness satisfies ``g1.transform(V).scale(scale) == g2``;
    the scale is negative when the two forms have opposite signs.
    """
    p1, s1 = primitive_positive(g1)
    p2, s2 = primitive_positive(g2)
    r1, u1 = _gl2_reduce(p1)
    r2, u2 = _gl2_reduce(p2)
    if r1 != r2:
        return Similarity(False)
    v = matmul(u1, mat_inverse(u2))
    scale = s1 / s2
    assert g1.transform(v).scale(scale) == g2
    return Similarity(True, scale, v)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination (empty -> 1)."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det
