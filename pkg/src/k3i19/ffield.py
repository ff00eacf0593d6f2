"""Finite fields F_p[u]/(m(u)) of odd characteristic and the quadratic character."""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p: int) -> int:
    return next(d for d in range(2, p) if legendre(d, p) == -1)


def _polymod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    n = len(m) - 1
    for k in range(len(a) - 1, n - 1, -1):
        c = a[k]
        if c:
            for j in range(n + 1):
                a[k - n + j] = (a[k - n + j] - c * m[j]) % p
    return a[:n]


def _has_factor_of_degree(m: Sequence[int], p: int, k: int) -> bool:
    for tail in itertools.product(range(p), repeat=k):
        if not any(_polymod(list(m), list(tail) + [1], p)):
            return True
    return False


def _find_modulus(p: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    if n == 2:
        return (-smallest_nonresidue(p) % p, 0, 1)
    for tail in itertools.product(range(p), repeat=n):
        m = tuple(tail) + (1,)
        if m[0] and not any(_has_factor_of_degree(m, p, k) for k in range(1, n // 2 + 1)):
            return m
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class FieldDesc:
    """The field F_q, q = p**n, as F_p[u]/(modulus).

    For ``n == 2`` the modulus is ``u**2 - d`` with ``d`` the smallest
    quadratic non-residue mod p.  Elements have an integer index
    ``c0 + c1*p + c2*p**2 + ...`` used for table lookups.
    """

    def __init__(self, p: int, n: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = _find_modulus(p, n)
        self.characteristic = p
        self.zero = FF(self, (0,) * n)
        self.one = FF(self, (1,) + (0,) * (n - 1))

    @property
    def nonresidue(self) -> int | None:
        """d with modulus u^2 - d (n == 2 only)."""
        return (-self.modulus[0]) % self.p if self.n == 2 else None

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldDesc) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self) -> int:
        return hash((self.p, self.n))

    def __reduce__(self):
        return (FieldDesc, (self.p, self.n))

    def __call__(self, value) -> "FF":
        if isinstance(value, FF):
            if value.field == self:
                return value
            if value.field.p == self.p and value.field.n == 1:
                return FF(self, (value.c[0],) + (0,) * (self.n - 1))
            raise TypeError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, int):
            return FF(self, (value % self.p,) + (0,) * (self.n - 1))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {value} divisible by {self.p}")
            v = value.numerator * pow(value.denominator, -1, self.p)
            return FF(self, (v % self.p,) + (0,) * (self.n - 1))
        if isinstance(value, (tuple, list)):
            cs = [int(c) % self.p for c in value]
            if len(cs) > self.n:
                raise ValueError("too many coordinates")
            return FF(self, tuple(cs + [0] * (self.n - len(cs))))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def gen(self) -> "FF":
        """The class of u."""
        if self.n == 1:
            raise ValueError("prime field has no generator u")
        return self((0, 1))

    def element(self, index: int) -> "FF":
        cs = []
        for _ in range(self.n):
            index, c = divmod(index, self.p)
            cs.append(c)
        return FF(self, tuple(cs))

    def enumerate(self) -> Iterator["FF"]:
        for i in range(self.q):
            yield self.element(i)

    def __iter__(self):
        return self.enumerate()

    def __len__(self) -> int:
        return self.q

    @cached_property
    def chi_table(self) -> list[int]:
        """chi of every element, indexed by element index."""
        table = [-1] * self.q
        table[0] = 0
        for x in self.enumerate():
            if x:
                table[(x * x).index] = 1
        return table

    def sqrt(self, x: "FF") -> "FF":
        x = self(x)
        for y in self.enumerate():
            if y * y == x:
                return y
        raise ValueError(f"{x} is not a square in {self!r}")


class FF:
    __slots__ = ("field", "c")

    def __init__(self, field: FieldDesc, c: tuple[int, ...]):
        self.field = field
        self.c = c

    @property
    def index(self) -> int:
        p = self.field.p
        out = 0
        for v in reversed(self.c):
            out = out * p + v
        return out

    def __repr__(self) -> str:
        return f"FF({self}, {self.field!r})"

    def __str__(self) -> str:
        if self.field.n == 1:
            return str(self.c[0])
        terms = []
        for k, v in enumerate(self.c):
            if v:
                mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
                terms.append(f"{v}{'*' if mono else ''}{mono}")
        return " + ".join(reversed(terms)) or "0"

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, FF):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, Fraction)):
            try:
                return self.c == self.field(other).c
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.n, self.c))

    def _other(self, other) -> "FF":
        if isinstance(other, FF) and other.field is self.field:
            return other
        return self.field(other)

    def __add__(self, other) -> "FF":
        if not isinstance(other, (FF, int, Fraction)):
            return NotImplemented
        o = self._other(other)
        p = self.field.p
        return FF(self.field, tuple((a + b) % p for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self) -> "FF":
        p = self.field.p
        return FF(self.field, tuple(-a % p for a in self.c))

    def __sub__(self, other) -> "FF":
        if not isinstance(other, (FF, int, Fraction)):
            return NotImplemented
        return self + (-self._other(other))

    def __rsub__(self, other) -> "FF":
        return self._other(other) - self

    def __mul__(self, other) -> "FF":
        if not isinstance(other, (FF, int, Fraction)):
            return NotImplemented
        o = self._other(other)
        f = self.field
        p = f.p
        if f.n == 1:
            return FF(f, ((self.c[0] * o.c[0]) % p,))
        if f.n == 2:
            a0, a1 = self.c
            b0, b1 = o.c
            d = -f.modulus[0]
            return FF(f, ((a0 * b0 + d * a1 * b1) % p, (a0 * b1 + a1 * b0) % p))
        prod = [0] * (2 * f.n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    prod[i + j] += a * b
        return FF(f, tuple(_polymod(prod, f.modulus, p)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FF":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FF":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.q - 2)

    def __truediv__(self, other) -> "FF":
        return self * self._other(other).inverse()

    def __rtruediv__(self, other) -> "FF":
        return self._other(other) * self.inverse()

    def frobenius(self) -> "FF":
        return self ** self.field.p

    def pth_root(self) -> "FF":
        f = self.field
        return self ** (f.q // f.p)

    def is_square(self) -> bool:
        return chi(self) >= 0


def make_field(p: int, n: int = 1) -> FieldDesc:
    return FieldDesc(p, n)


def chi(x: FF) -> int:
    """Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise."""
    if not x:
        return 0
    f = x.field
    return 1 if x ** ((f.q - 1) // 2) == f.one else -1


def enumerate_field(field: FieldDesc) -> Iterator[FF]:
    return field.enumerate()
