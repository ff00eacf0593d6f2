"""Weierstrass models, fibre classification and explicit sections."""
from collections import Counter
from fractions import Fraction

import pytest

from k3i19.ffield import FieldDesc
from k3i19.poly import Poly, poly_gcd, ord_at
from k3i19.surface import (
    A3_COEFFS,
    C3_COEFFS,
    NotEllipticError,
    UnsupportedFiberError,
    WeierstrassModel,
    canonical_model,
    char3_model,
    char3_model_by_substitution,
    char19_model,
    classify_fibers,
    f_poly,
    fiber_at_infinity,
    fiber_multiset,
    g_poly,
    is_section,
    model_from_dict,
    model_to_dict,
    quintic,
    reduce_model,
    section_P,
    section_Q,
    section_R,
    short_invariants,
    specialized_cubic_at_infinity,
    verify_quintic_identity,
)

t = Poly.gen()


def test_printed_coefficients():
    f, g = f_poly(), g_poly()
    assert f.degree == 8 and f.lead == 1 and f[0] == 28
    assert g[0] == Fraction(299, 2)
    assert Poly(A3_COEFFS) == t**4 + 3 * t**3 + 3 * t**2 + 4 * t + 4
    assert C3_COEFFS[0] == 1


def test_quintic_identity():
    f, g = f_poly(), g_poly()
    diff = g * g - f * f * f
    c = verify_quintic_identity()
    assert diff == quintic() * c
    assert c == diff.lead / 4
    assert diff % quintic() == Poly()


@pytest.mark.parametrize("build", [canonical_model, char3_model, char19_model])
def test_discriminant_identity(build):
    m = build()
    assert m.discriminant * 1728 == m.c4**3 - m.c6**2
    inv = short_invariants(m)
    assert inv.discriminant == m.discriminant


def test_canonical_fibres():
    fibers = classify_fibers(canonical_model())
    assert sum(f.count for f in fibers) == 6
    inf = fibers[0]
    assert inf.place is None and inf.kind == "I19" and inf.split is True
    (rest,) = fibers[1:]
    assert rest.kind == "I1" and rest.count == 5
    assert rest.place == quintic().monic()


def test_specialized_cubic_at_infinity():
    xi = Poly.gen()
    assert specialized_cubic_at_infinity(canonical_model()) == (xi - 3) ** 2 * (xi + 6)
    fib, split = fiber_at_infinity(canonical_model())
    assert fib.kind == "I19" and split


def test_char19_fibres():
    m = char19_model()
    F = m.ring
    s = Poly.gen(F)
    assert ord_at(m.a4, s + 3) == 1
    assert ord_at(m.a6, s + 3) == 11
    fibers = classify_fibers(m)
    by_place = {None if f.place is None else f.place: f.kind for f in fibers}
    assert by_place == {None: "I19", s + 3: "III", s - 5: "II"}
    assert sum(f.euler * f.count for f in fibers) == 24


def test_char3_reduction_matches_char0_multiset():
    m3 = reduce_model(char3_model(), 3)
    char0 = fiber_multiset(classify_fibers(canonical_model()))
    assert fiber_multiset(classify_fibers(m3)) == char0 == Counter({"I19": 1, "I1": 5})


def test_char3_model_is_the_shifted_canonical_model():
    assert char3_model_by_substitution().coefficients == char3_model().coefficients


def test_char19_model_is_reduction_of_canonical():
    assert reduce_model(canonical_model(), 19).coefficients == char19_model().coefficients


@pytest.mark.parametrize("p", [5, 7, 11, 13, 23])
def test_good_reduction_keeps_fibres(p):
    red = reduce_model(canonical_model(), p)
    assert red.discriminant
    ms = fiber_multiset(classify_fibers(red))
    assert ms["I19"] == 1 and sum(ms.values()) == 6


def test_reduce_model_errors():
    with pytest.raises(ValueError):
        reduce_model(canonical_model(), 3)
    with pytest.raises(ValueError):
        reduce_model(canonical_model(), 2)
    with pytest.raises(ValueError):
        reduce_model(canonical_model(), 9)


def test_vanishing_discriminant_is_rejected():
    m = WeierstrassModel.short(Poly(), Poly())
    with pytest.raises(NotEllipticError):
        classify_fibers(m)


def test_additive_fibres_in_char_3_unsupported():
    F = FieldDesc(3)
    s = Poly.gen(F)
    m = WeierstrassModel.short(Poly((1,), F) * s, s * s * (s + 1))
    with pytest.raises(UnsupportedFiberError):
        classify_fibers(m)


def test_additive_kodaira_table():
    """Cusp and tangency fibres from their valuation data in large characteristic."""
    F = FieldDesc(101)
    s = Poly.gen(F)
    one = Poly((1,), F)
    # y^2 = x^3 + s x  (ord a4 = 1) gives III at 0; y^2 = x^3 + s gives II at 0
    kinds = {}
    for label, (a4, a6) in {"III": (s, Poly((), F)), "II": (Poly((), F), s)}.items():
        m = WeierstrassModel.short(a4 * one, a6 * one)
        fibers = classify_fibers_finite(m)
        kinds[label] = fibers[s]
    assert kinds == {"III": "III", "II": "II"}


def classify_fibers_finite(m):
    from k3i19.surface import _kind, _uniform_pieces
    from k3i19.poly import squarefree_decomposition

    out = {}
    for mult, place in squarefree_decomposition(m.discriminant).items():
        for piece4, o4 in _uniform_pieces(place, m.c4):
            for piece, o6 in _uniform_pieces(piece4, m.c6):
                out[piece] = _kind(o4, o6, mult, m.characteristic)
    return out


def test_sections():
    m3 = reduce_model(char3_model(), 3)
    assert is_section(m3, *section_P())
    assert is_section(m3, *section_Q())
    assert is_section(char19_model(), *section_R())
    x, y = section_P()
    assert not is_section(m3, x, y + 1)


def test_json_round_trip():
    for m in (canonical_model(), char3_model(), char19_model()):
        back = model_from_dict(model_to_dict(m))
        assert back.coefficients == m.coefficients
        assert back.characteristic == m.characteristic


def test_json_rejects_extension_fields():
    F = FieldDesc(3, 2)
    with pytest.raises(ValueError):
        model_to_dict(WeierstrassModel.short(Poly((1,), F), Poly((1,), F)))


@pytest.mark.parametrize(
    "ords,kind",
    [
        ((0, 0, 5), "I5"),
        ((1, 1, 2), "II"),
        ((1, 2, 3), "III"),
        ((2, 2, 4), "IV"),
        ((2, 3, 6), "I0*"),
        ((2, 3, 8), "I2*"),
        ((3, 4, 8), "IV*"),
        ((3, 5, 9), "III*"),
        ((4, 5, 10), "II*"),
    ],
)
def test_valuation_table(ords, kind):
    from k3i19.surface import _kind, fiber_numbers

    assert _kind(*ords, 101) == kind
    comps, euler = fiber_numbers(kind)
    assert euler == ords[2]


def test_non_minimal_place_rejected():
    from k3i19.surface import _kind

    with pytest.raises(UnsupportedFiberError):
        _kind(4, 6, 12, 101)
