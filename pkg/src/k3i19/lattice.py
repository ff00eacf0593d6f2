"""Néron-Severi lattice bookkeeping for elliptic K3 surfaces.

Divisors are formal rational combinations of the zero section ``O``, the
fibre class ``F``, fibre components ``Theta(v, i)`` and named sections.
Intersections follow from the fibre types and the declared incidence data of
each section; section incidences are inputs, never computed from
coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .forms import Gram2, determinant, similar

K3_CHI = 2


class Theta(NamedTuple):
    fiber: str
    index: int


@dataclass(frozen=True)
class FiberRecord:
    """A fibre: ``kind`` is "I" (cycle of n components) or "III" (two components)."""

    label: str
    kind: str
    components: int

    def __post_init__(self):
        if self.kind == "III" and self.components != 2:
            raise ValueError("a III fibre has two components")
        if self.kind not in ("I", "III", "II"):
            raise ValueError(f"unsupported fibre kind {self.kind!r}")


@dataclass(frozen=True)
class SectionRecord:
    label: str
    components: Mapping[str, int] = field(default_factory=dict)
    dot_zero: int = 0
    dots: Mapping[str, int] = field(default_factory=dict)

    def component(self, fiber: str) -> int:
        return self.components.get(fiber, 0)


@dataclass(frozen=True)
class SurfaceConfig:
    fibers: tuple[FiberRecord, ...]
    sections: tuple[SectionRecord, ...] = ()
    chi: int = K3_CHI

    def __post_init__(self):
        labels = {f.label for f in self.fibers}
        for s in self.sections:
            for v, k in s.components.items():
                if v not in labels:
                    raise KeyError(f"section {s.label} refers to unknown fibre {v}")
                if not 0 <= k < self.fiber(v).components:
                    raise ValueError(f"component index {k} out of range at fibre {v}")
            if s.dot_zero < 0:
                raise ValueError("(P.O) must be non-negative")

    def fiber(self, label: str) -> FiberRecord:
        for f in self.fibers:
            if f.label == label:
                return f
        raise KeyError(f"undeclared fibre {label!r}")

    def section(self, label: str) -> SectionRecord:
        for s in self.sections:
            if s.label == label:
                return s
        raise KeyError(f"undeclared section {label!r}")

    def section_dot(self, a: str, b: str) -> int:
        if a == b:
            return -self.chi
        sa, sb = self.section(a), self.section(b)
        if b in sa.dots:
            return sa.dots[b]
        if a in sb.dots:
            return sb.dots[a]
        raise KeyError(f"intersection of sections {a} and {b} not declared")

    def reducible_fibers(self) -> list[FiberRecord]:
        return [f for f in self.fibers if f.components > 1]

    def theta_basis(self) -> list[Theta]:
        """Non-identity fibre components."""
        return [Theta(f.label, i) for f in self.reducible_fibers() for i in range(1, f.components)]


class Divisor:
    """Finitely supported rational combination of basis symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def of(cls, symbol) -> "Divisor":
        return cls({symbol: 1})

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out)

    def __neg__(self) -> "Divisor":
        return Divisor({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, scalar) -> "Divisor":
        return Divisor({k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __getitem__(self, symbol) -> Fraction:
        return self.terms.get(symbol, Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.terms == other.terms

    def __repr__(self) -> str:
        parts = []
        for k, v in self.terms.items():
            if isinstance(k, Theta):
                name = f"Theta[{k.fiber},{k.index}]"
            else:
                name = k if k in ("O", "F") else f"({k})"
            parts.append(f"{v}*{name}")
        return "Divisor(" + " + ".join(parts) + ")"


O = Divisor.of("O")
F = Divisor.of("F")


def _component_dot(f: FiberRecord, i: int, j: int) -> int:
    n = f.components
    if i == j:
        return -2 if n > 1 else 0
    if f.kind == "III":
        return 2
    if n == 2:
        return 2
    return 1 if (i - j) % n in (1, n - 1) else 0


def _basis_dot(a, b, cfg: SurfaceConfig) -> int:
    if isinstance(a, Theta) and not isinstance(b, Theta):
        a, b = b, a
    if a == "O":
        if b == "O":
            return -cfg.chi
        if b == "F":
            return 1
        if isinstance(b, Theta):
            cfg.fiber(b.fiber)
            return 1 if b.index == 0 else 0
        return cfg.section(b).dot_zero
    if a == "F":
        if b == "O":
            return 1
        if b == "F":
            return 0
        if isinstance(b, Theta):
            cfg.fiber(b.fiber)
            return 0
        cfg.section(b)
        return 1
    if isinstance(a, Theta):  # both components
        if a.fiber != b.fiber:
            cfg.fiber(a.fiber), cfg.fiber(b.fiber)
            return 0
        return _component_dot(cfg.fiber(a.fiber), a.index, b.index)
    # a is a section
    if b in ("O", "F"):
        return _basis_dot(b, a, cfg)
    if isinstance(b, Theta):
        cfg.fiber(b.fiber)
        return 1 if cfg.section(a).component(b.fiber) == b.index else 0
    return cfg.section_dot(a, b)


def ns_intersection(d1: Divisor, d2: Divisor, cfg: SurfaceConfig) -> Fraction:
    total = Fraction(0)
    for a, x in d1.terms.items():
        for b, y in d2.terms.items():
            total += x * y * _basis_dot(a, b, cfg)
    return total


def _correction(f: FiberRecord, k: int, i: int) -> Fraction:
    n = f.components
    if f.kind == "III":
        return Fraction(k * i, 2)
    if i <= k:
        return Fraction(i * (n - k), n)
    return Fraction(k * (n - i), n)


def phi(label: str, cfg: SurfaceConfig) -> Divisor:
    """(P) - (O) - (chi + P.O) F + fibre corrections; orthogonal to the trivial lattice."""
    s = cfg.section(label)
    out = Divisor.of(label) - O - F * (cfg.chi + s.dot_zero)
    for f in cfg.reducible_fibers():
        k = s.component(f.label)
        if k:
            for i in range(1, f.components):
                out = out + Divisor.of(Theta(f.label, i)) * _correction(f, k, i)
    return out


def contribution(kind: str, n: int, i: int, j: int) -> Fraction:
    """Local height correction at a reducible fibre for components i <= j."""
    if i > j:
        i, j = j, i
    if kind == "III":
        if (i, j) != (1, 1):
            raise ValueError("III fibres only have component 1 besides the identity")
        return Fraction(1, 2)
    if kind != "I":
        raise ValueError(f"unsupported fibre kind {kind!r}")
    if not 1 <= i <= j <= n - 1:
        raise ValueError(f"component indices ({i}, {j}) out of range for I{n}")
    return Fraction(i * (n - j), n)


def height(p: str, q: str, cfg: SurfaceConfig) -> Fraction:
    sp, sq = cfg.section(p), cfg.section(q)
    if p == q:
        value = Fraction(2 * cfg.chi + 2 * sp.dot_zero)
    else:
        value = Fraction(cfg.chi + sp.dot_zero + sq.dot_zero - cfg.section_dot(p, q))
    for f in cfg.reducible_fibers():
        i, j = sp.component(f.label), sq.component(f.label)
        if i and j:
            value -= contribution(f.kind, f.components, i, j)
    return value


def height_by_phi(p: str, q: str, cfg: SurfaceConfig) -> Fraction:
    return -ns_intersection(phi(p, cfg), phi(q, cfg), cfg)


def height_gram(labels: Sequence[str], cfg: SurfaceConfig) -> list[list[Fraction]]:
    return [[height(a, b, cfg) for b in labels] for a in labels]


def shioda_tate_rank(cfg: SurfaceConfig, mw_rank: int) -> int:
    return 2 + sum(f.components - 1 for f in cfg.fibers) + mw_rank


def sublattice_gram(generators: Sequence[Divisor], cfg: SurfaceConfig) -> list[list[Fraction]]:
    return [[ns_intersection(a, b, cfg) for b in generators] for a in generators]


def root_lattice_det(f: FiberRecord) -> int:
    """|det| of the root lattice spanned by the non-identity components."""
    # A_{n-1} for I_n, A_1 for III
    return f.components


def trivial_discriminant(cfg: SurfaceConfig) -> int:
    out = 1
    for f in cfg.reducible_fibers():
        out *= root_lattice_det(f)
    return -out


def shioda_tate_disc(trivial_disc, mw_height_gram: Sequence[Sequence] = ()) -> Fraction:
    if not trivial_disc:
        raise ValueError("trivial lattice discriminant must be non-zero")
    return Fraction(trivial_disc) * determinant(mw_height_gram)


def full_ns_basis(cfg: SurfaceConfig) -> list[Divisor]:
    """O, F, non-identity components and the declared sections."""
    basis = [O, F] + [Divisor.of(t) for t in cfg.theta_basis()]
    return basis + [Divisor.of(s.label) for s in cfg.sections]


def artin_invariant(disc, p: int) -> int:
    disc = Fraction(disc)
    if disc >= 0 or disc.denominator != 1:
        raise ValueError(f"discriminant {disc} is not of the form -p^(2 sigma)")
    value, sigma = -disc.numerator, 0
    while value % (p * p) == 0:
        value //= p * p
        sigma += 1
    if value != 1 or not 1 <= sigma <= 10:
        raise ValueError(f"discriminant {disc} is not of the form -{p}^(2 sigma), 1 <= sigma <= 10")
    return sigma


def transcendental_gram() -> Gram2:
    return Gram2(2, 1, 10)


# -- the configurations used for the verification at 3 and 19 ----------


def char0_config() -> SurfaceConfig:
    fibers = (FiberRecord("inf", "I", 19),) + tuple(FiberRecord(f"q{k}", "I", 1) for k in range(1, 6))
    return SurfaceConfig(fibers)


def char3_config() -> SurfaceConfig:
    """Sections P (over F_3) and Q (over F_9) meeting components 5 and 17 of I19."""
    base = char0_config()
    sections = (
        SectionRecord("P", {"inf": 5}, 0, {"Q": 1}),
        SectionRecord("Q", {"inf": 17}, 0, {"P": 1}),
    )
    return SurfaceConfig(base.fibers, sections)


def char19_config() -> SurfaceConfig:
    """R meets the identity component of I19 and the non-identity component of III."""
    fibers = (FiberRecord("inf", "I", 19), FiberRecord("-3", "III", 2), FiberRecord("5", "II", 1))
    sections = (SectionRecord("R", {"-3": 1}, 3),)
    return SurfaceConfig(fibers, sections)


def l3_generators(cfg: SurfaceConfig | None = None) -> list[Divisor]:
    cfg = cfg or char3_config()
    p, q = phi("P", cfg), phi("Q", cfg)
    return [q * 19, p - q * 7]


def l19_generators(cfg: SurfaceConfig | None = None) -> list[Divisor]:
    return [Divisor.of(Theta("-3", 1)), Divisor.of("R") - O - F * 5]


# -- verification bundles ----------------------------------------------


def _rows(rows) -> list[list[str]]:
    return [[str(x) for x in row] for row in rows]


def verify_p3() -> dict:
    from .surface import char3_model, reduce_model, is_section, section_P, section_Q

    cfg = char3_config()
    model = reduce_model(char3_model(), 3)
    heights = height_gram(["P", "Q"], cfg)
    heights_phi = [[height_by_phi(a, b, cfg) for b in "PQ"] for a in "PQ"]
    gram = Gram2.from_rows(sublattice_gram(l3_generators(cfg), cfg))
    sim = similar(transcendental_gram(), gram)
    disc = shioda_tate_disc(trivial_discriminant(cfg), heights)
    try:
        sigma = artin_invariant(disc, 3)
    except ValueError:
        sigma = None
    checks = {
        "P_on_model": is_section(model, *section_P()),
        "Q_on_model": is_section(model, *section_Q()),
        "heights": heights == [[Fraction(6, 19), Fraction(9, 19)], [Fraction(9, 19), Fraction(42, 19)]],
        "height_paths_agree": heights == heights_phi,
        "gram": gram == Gram2(266, -95, 34).scale(-3),
        "similar": sim.similar,
        "discriminant": disc == -9,
        "artin_invariant": sigma == 1,
    }
    return {
        "p": 3,
        "heights": _rows(heights),
        "gram": _rows(gram.rows),
        "similar": sim.similar,
        "scale": str(sim.scale),
        "transform": sim.transform,
        "discriminant": str(disc),
        "artin_invariant": sigma,
        "checks": checks,
        "ok": all(checks.values()),
    }


def verify_p19() -> dict:
    from .surface import char19_model, is_section, section_R

    cfg = char19_config()
    gram = Gram2.from_rows(sublattice_gram(l19_generators(cfg), cfg))
    doubled = Gram2.from_rows(
        sublattice_gram([Divisor.of(Theta("-3", 1)), phi("R", cfg) * 2], cfg)
    )
    sim = similar(transcendental_gram(), gram)
    sim_doubled = similar(transcendental_gram(), doubled)
    h = height("R", "R", cfg)
    disc = shioda_tate_disc(trivial_discriminant(cfg), [[h]])
    full_det = determinant(sublattice_gram(full_ns_basis(cfg), cfg))
    try:
        sigma = artin_invariant(disc, 19)
    except ValueError:
        sigma = None
    checks = {
        "R_on_model": is_section(char19_model(), *section_R()),
        "height": h == Fraction(19, 2) == height_by_phi("R", "R", cfg),
        "gram": gram == Gram2(2, -1, 10).scale(-1),
        "similar": sim.similar,
        "doubled_gram": doubled == Gram2(-2, 0, -38),
        "doubled_not_similar": not sim_doubled.similar,
        "discriminant": disc == -361 == full_det,
        "artin_invariant": sigma == 1,
    }
    return {
        "p": 19,
        "height": str(h),
        "gram": _rows(gram.rows),
        "similar": sim.similar,
        "scale": str(sim.scale),
        "transform": sim.transform,
        "doubled_gram": _rows(doubled.rows),
        "doubled_similar": sim_doubled.similar,
        "discriminant": str(disc),
        "artin_invariant": sigma,
        "checks": checks,
        "ok": all(checks.values()),
    }
