"""Closed-form Frobenius data from the CM description over Q(sqrt(-19)).

At a split prime 4p = a^2 + 19 b^2 and Frobenius on the transcendental part
has characteristic polynomial X^2 - c X + p^2 with c = a^2 - 2p; at an inert
prime it is X^2 - p^2.  Everything here is exact integer arithmetic.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .ffield import is_prime

CONDUCTOR = 19
SPLIT_RESIDUES = frozenset({1, 4, 5, 6, 7, 9, 11, 16, 17})
WITNESS_PRIMES = (3, 5, 7, 31)


class InertPrimeError(ValueError):
    pass


class ConsistencyError(AssertionError):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def _check_good(p: int) -> None:
    if not is_prime(p) or p in (2, CONDUCTOR):
        raise ValueError(f"p = {p} must be a prime other than 2 and 19")


def epsilon(p: int) -> int:
    """Quadratic character of Q(sqrt(-19)) at the prime p."""
    if p % CONDUCTOR == 0:
        return 0
    return 1 if p % CONDUCTOR in SPLIT_RESIDUES else -1


def is_split(p: int) -> bool:
    return epsilon(p) == 1


@dataclass(frozen=True)
class SplitData:
    p: int
    a: int
    b: int
    c: int


def represent(p: int) -> SplitData:
    """The unique a, b > 0 with 4p = a^2 + 19 b^2."""
    if epsilon(p) != 1:
        raise InertPrimeError(f"{p} is not split in Q(sqrt(-19))")
    for b in range(1, math.isqrt(4 * p // 19) + 1):
        rest = 4 * p - 19 * b * b
        a = math.isqrt(rest)
        if a > 0 and a * a == rest:
            return SplitData(p, a, b, a * a - 2 * p)
    raise ArithmeticError(f"no representation 4*{p} = a^2 + 19 b^2 found")


@dataclass(frozen=True)
class CharPoly2:
    """X^2 - trace X + det."""

    p: int
    trace: int
    det: int
    source: str = "hecke"

    def coefficients(self) -> tuple[int, int, int]:
        """Lowest degree first."""
        return (self.det, -self.trace, 1)

    def power_trace(self, n: int) -> int:
        """Sum of n-th powers of the two roots (trace of Frob^n)."""
        s_prev, s = 2, self.trace
        if n == 0:
            return 2
        for _ in range(n - 1):
            s_prev, s = s, self.trace * s - self.det * s_prev
        return s

    def __str__(self) -> str:
        out = "X^2"
        if self.trace:
            out += f" {'-' if self.trace > 0 else '+'} {abs(self.trace)}X"
        out += f" {'+' if self.det > 0 else '-'} {abs(self.det)}"
        return out


def charpoly_T(p: int) -> CharPoly2:
    _check_good(p)
    eps = epsilon(p)
    if eps == -1:
        return CharPoly2(p, 0, -p * p)
    return CharPoly2(p, represent(p).c, p * p)


def hecke_trace(p: int, n: int = 1) -> int:
    return charpoly_T(p).power_trace(n)


def _divide_by_root(coeffs: list[int], r: int) -> list[int]:
    """Quotient of an exact division by X - r (coefficients lowest first)."""
    quot = [0] * (len(coeffs) - 1)
    carry = 0
    for k in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[k] + carry * r
        quot[k - 1] = carry
    return quot


def picard_rank(p: int) -> int:
    """Multiplicity of X - p in (X - p)^20 * charpoly on the transcendental part."""
    coeffs = list(charpoly_T(p).coefficients())
    mult = 20
    while len(coeffs) > 1 and sum(c * p**k for k, c in enumerate(coeffs)) == 0:
        coeffs = _divide_by_root(coeffs, p)
        mult += 1
    return mult


# -- zeta functions ------------------------------------------------------


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _power_sums(coeffs: tuple[int, ...], count: int) -> list[int]:
    """Power sums s_1..s_count of the reciprocal roots of 1 + e1 T + e2 T^2 + ...

    Newton's identities with coefficients of prod(1 - alpha T).
    """
    d = len(coeffs) - 1
    e = [coeffs[k] if k <= d else 0 for k in range(count + 1)]
    s = [0] * (count + 1)
    for k in range(1, count + 1):
        acc = -k * e[k]
        for i in range(1, k):
            acc -= e[i] * s[k - i]
        s[k] = acc
    return s[1:]


def _factor_str(coeffs: tuple[int, ...]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return f"({text})"


@dataclass(frozen=True)
class ZetaFunction:
    """Z(T) = prod factor**multiplicity, factors with integer coefficients lowest first.

    The first factor belongs to H^0, the last to H^4 and the rest to H^2.
    """

    p: int
    factors: tuple[tuple[tuple[int, ...], int], ...]

    def count(self, n: int) -> int:
        """#S(F_{p^n}) = -sum mult * s_n(factor) (exact)."""
        return -sum(m * _power_sums(f, n)[n - 1] for f, m in self.factors)

    def log_coefficients(self, terms: int) -> list[Fraction]:
        """Coefficients of T^1..T^terms in log Z(T), by power-series logarithm."""
        out = [Fraction(0)] * (terms + 1)
        for f, m in self.factors:
            series = [Fraction(f[k]) if k < len(f) else Fraction(0) for k in range(terms + 1)]
            # log P = integral of P'/P; with P(0) = 1
            deriv = [(k + 1) * series[k + 1] for k in range(terms)]
            quot = [Fraction(0)] * terms
            for k in range(terms):
                acc = deriv[k]
                for i in range(1, k + 1):
                    acc -= series[i] * quot[k - i]
                quot[k] = acc
            for k in range(1, terms + 1):
                out[k] += m * quot[k - 1] / k
        return out[1:]

    def h2_polynomial(self) -> list[int]:
        """prod (1 - alpha T) over the 22 reciprocal roots on H^2."""
        out = [1]
        for f, m in self.factors[1:-1]:
            for _ in range(-m):
                out = _poly_mul(out, list(f))
        return out

    def h2_closed_under_duality(self) -> bool:
        """Whether the H^2 reciprocal roots are stable under alpha -> p^2/alpha."""
        q = self.h2_polynomial()
        d = len(q) - 1
        p2 = self.p * self.p
        lead = q[d]
        dual = [Fraction(q[d - j] * p2**j, lead) for j in range(d + 1)]
        return dual == [Fraction(c) for c in q]

    def __str__(self) -> str:
        num, den = [], []
        for f, m in self.factors:
            body = _factor_str(f) + (f"^{abs(m)}" if abs(m) > 1 else "")
            (den if m < 0 else num).append(body)
        top = "".join(num) or "1"
        return f"{top}/({''.join(den)})" if den else top


def zeta(p: int) -> ZetaFunction:
    _check_good(p)
    p2 = p * p
    if epsilon(p) == -1:
        factors = (((1, -1), -1), ((1, p), -1), ((1, -p), -21), ((1, -p2), -1))
    else:
        c = represent(p).c
        factors = (((1, -1), -1), ((1, -c, p2), -1), ((1, -p), -20), ((1, -p2), -1))
    return ZetaFunction(p, factors)


# -- eigenvalue sequence -------------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def eigenvalues(bound: int) -> dict[int, int]:
    """a_n for 1 <= n <= bound with gcd(n, 38) = 1."""
    prime_powers: dict[tuple[int, int], int] = {}

    def a_pk(p: int, k: int) -> int:
        if (p, k) not in prime_powers:
            if k == 0:
                val = 1
            elif k == 1:
                val = charpoly_T(p).trace
            else:
                val = a_pk(p, 1) * a_pk(p, k - 1) - epsilon(p) * p * p * a_pk(p, k - 2)
            prime_powers[(p, k)] = val
        return prime_powers[(p, k)]

    out = {}
    for n in range(1, bound + 1):
        if math.gcd(n, 2 * CONDUCTOR) != 1:
            continue
        val = 1
        for p, k in _factorize(n).items():
            val *= a_pk(p, k)
        out[n] = val
    return out


# -- agreement with point counts -----------------------------------------


def good_primes(p_max: int) -> list[int]:
    return [p for p in range(3, p_max + 1) if is_prime(p) and p != CONDUCTOR]


def _trace_pc(p: int) -> int:
    from .pointcount import trace_T

    return trace_T(p, 1).trace


def consistency_check(p_max: int, *, workers: int = 1, cache=None) -> dict:
    """Compare point-count and closed-form traces for all good odd p <= p_max.

    Raises :class:`ConsistencyError` (carrying the report) on any mismatch.
    """
    from .pointcount import trace_T

    primes = good_primes(p_max)
    if cache is not None or workers <= 1:
        traces = [trace_T(p, 1, cache=cache).trace for p in primes]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(_trace_pc, primes))
    rows = []
    for p, tpc in zip(primes, traces):
        split = is_split(p)
        data = represent(p) if split else None
        th = charpoly_T(p).trace
        rows.append({
            "p": p,
            "split": split,
            "a": data.a if data else None,
            "b": data.b if data else None,
            "c": data.c if data else None,
            "trace_pc": tpc,
            "trace_hecke": th,
            "agree": tpc == th,
        })
    by_p = {r["p"]: r for r in rows}
    report = {
        "p_max": p_max,
        "primes": rows,
        "witnesses": {str(w): by_p[w]["agree"] for w in WITNESS_PRIMES if w in by_p},
        "all_agree": all(r["agree"] for r in rows),
    }
    if not report["all_agree"]:
        bad = [r["p"] for r in rows if not r["agree"]]
        raise ConsistencyError(f"point-count and Hecke traces disagree at p = {bad}", report)
    return report
