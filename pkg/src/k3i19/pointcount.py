"""Frobenius traces on the transcendental part by brute-force character sums.

For q = p**n the affine Weierstrass points number q**2 + S with
S = sum over x, t in F_q of chi(cubic_t(x)).  Adding q points at z = 0 and
19q points on the components over t = infinity and comparing with
``#S(F_q) = 1 + 20q + trace + q**2`` gives ``trace = S - 1``.
"""
from __future__ import annotations

import logging
import os
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import kernel
from .ffield import FieldDesc, is_prime
from .surface import WeierstrassModel, canonical_model, char3_model

log = logging.getLogger(__name__)

CACHE_ENV = "K3I19_CACHE"


class BadPrimeError(ValueError):
    pass


class CacheMismatchError(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceResult:
    p: int
    n: int
    trace: int
    count: int
    model_used: str

    @property
    def q(self) -> int:
        return self.p**self.n


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise BadPrimeError(f"{p} is not prime")
    if p == 2:
        raise BadPrimeError("no model with an I19 fibre exists in characteristic 2")
    if p == 19:
        raise BadPrimeError("bad reduction at 19")


def model_for_prime(p: int) -> tuple[str, WeierstrassModel]:
    if p == 3:
        return "char3", char3_model()
    return "canonical", canonical_model()


def cubic_table(model: WeierstrassModel, field: FieldDesc) -> array:
    """Six integers per t (by element index): coordinates of a2(t), a4(t), a6(t)."""
    if not model.is_short() and (model.a1 or model.a3):
        raise ValueError("kernel needs a1 = a3 = 0")
    if field.n > 2:
        raise ValueError("kernel supports extension degree 1 or 2")
    a2, a4, a6 = (a.change_ring(field) for a in (model.a2, model.a4, model.a6))
    out = array("q", [0]) * (6 * field.q)
    for j, t in enumerate(field.enumerate()):
        for slot, poly in enumerate((a2, a4, a6)):
            c = poly(t).c
            out[6 * j + 2 * slot] = c[0]
            if field.n == 2:
                out[6 * j + 2 * slot + 1] = c[1]
    return out


def _chunk(args):
    backend, p, n, d, chi, coeffs, lo, hi = args
    return kernel.get(backend)(p, n, d, chi, coeffs, lo, hi)


def _ranges(q: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, q))
    step, extra = divmod(q, chunks)
    out, lo = [], 0
    for k in range(chunks):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def affine_character_sum(
    p: int, n: int = 1, *, workers: int = 1, chunks: int | None = None, backend: str | None = None
) -> int:
    """The character sum S over all (x, t) in F_q^2 for the model used at p."""
    check_prime(p)
    _, model = model_for_prime(p)
    field = FieldDesc(p, n)
    coeffs = cubic_table(model, field)
    chi = array("q", field.chi_table)
    d = field.nonresidue or 0
    jobs = [
        (backend, p, n, d, chi, coeffs, lo, hi)
        for lo, hi in _ranges(field.q, chunks or workers)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk, jobs))
    else:
        parts = [_chunk(job) for job in jobs]
    return sum(parts)


class TraceCache:
    """Append-only text cache; one ``model p n trace`` record per line."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.records: dict[tuple[str, int, int], int] = {}
        if self.path.exists():
            for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
                if not line.strip():
                    continue
                try:
                    model, p, n, trace = line.split()
                    self.records[(model, int(p), int(n))] = int(trace)
                except ValueError:
                    raise ValueError(f"{self.path}:{lineno}: malformed cache record {line!r}")

    def get(self, model: str, p: int, n: int) -> int | None:
        return self.records.get((model, p, n))

    def put(self, model: str, p: int, n: int, trace: int) -> None:
        key = (model, p, n)
        if key in self.records:
            if self.records[key] != trace:
                raise CacheMismatchError(
                    f"cached trace {self.records[key]} for {key} disagrees with computed {trace}"
                )
            return
        self.records[key] = trace
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(f"{model} {p} {n} {trace}\n")


def default_cache() -> TraceCache | None:
    path = os.environ.get(CACHE_ENV)
    return TraceCache(path) if path else None


def trace_T(
    p: int,
    n: int = 1,
    *,
    cache: TraceCache | None = None,
    trust_cache: bool = False,
    workers: int = 1,
    backend: str | None = None,
) -> TraceResult:
    """Trace of Frob_p^n on the transcendental part, by point counting.

    With a cache, a fresh computation is validated against any stored record
    (mismatch raises); ``trust_cache`` skips the computation on a hit.
    """
    check_prime(p)
    name, _ = model_for_prime(p)
    q = p**n
    trace = cache.get(name, p, n) if (cache and trust_cache) else None
    if trace is None:
        trace = affine_character_sum(p, n, workers=workers, backend=backend) - 1
        if cache is not None:
            cache.put(name, p, n, trace)
    if abs(trace) > 2 * q:
        raise ArithmeticError(f"trace {trace} violates the Weil bound 2q = {2 * q}")
    log.debug("trace p=%d n=%d -> %d", p, n, trace)
    return TraceResult(p, n, trace, 1 + 20 * q + trace + q * q, name)


def count_points(p: int, n: int = 1, **kwargs) -> int:
    return trace_T(p, n, **kwargs).count
