import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3i19.forms import Gram2, determinant, gauss_reduce, mat_det, matmul, similar

T_S = Gram2(2, 1, 10)


def brute_force_reduced(g):
    """Smallest reduced form reachable by unimodular matrices with small entries."""
    found = set()
    rng = range(-20, 21)
    for p, q, r, s in itertools.product(rng, repeat=4):
        if p * s - q * r == 1:
            h = g.transform(((p, q), (r, s)))
            if h.is_reduced():
                found.add(h)
    return found


def test_already_reduced_forms_are_fixed():
    assert gauss_reduce(T_S)[0] == T_S
    assert gauss_reduce(Gram2(4, 2, 20))[0] == Gram2(4, 2, 20)
    assert T_S.is_reduced()


def test_reduce_l3_form():
    red, u = gauss_reduce(Gram2(266, -95, 34))
    assert red == T_S
    assert Gram2(266, -95, 34).transform(u) == red
    assert mat_det(u) == 1


@pytest.mark.slow
def test_reduce_l3_form_by_exhaustive_search():
    assert brute_force_reduced(Gram2(266, -95, 34)) == {T_S}


forms = st.tuples(
    st.integers(1, 60), st.integers(-60, 60), st.integers(1, 60)
).filter(lambda abc: abc[0] * abc[2] - abc[1] ** 2 > 0).map(lambda abc: Gram2(*abc))


def _word_to_matrix(word):
    u = ((1, 0), (0, 1))
    for k in word:
        step = ((0, -1), (1, 0)) if k == 0 else ((1, k), (0, 1))
        u = matmul(u, step)
    return u


# products of the generators S and T^k of SL2(Z)
unimodular = st.lists(st.integers(-3, 3), max_size=6).map(_word_to_matrix)


@settings(max_examples=150, deadline=None)
@given(forms)
def test_gauss_reduce_conjugation_and_idempotence(g):
    red, u = gauss_reduce(g)
    assert mat_det(u) == 1
    assert g.transform(u) == red
    assert red.is_reduced()
    assert red.det == g.det
    assert gauss_reduce(red)[0] == red


@settings(max_examples=150, deadline=None)
@given(forms, unimodular)
def test_equivalent_forms_reduce_identically(g, u):
    assert gauss_reduce(g.transform(u))[0] == gauss_reduce(g)[0]


@settings(max_examples=100, deadline=None)
@given(forms, unimodular, st.fractions(min_value=-5, max_value=5).filter(bool))
def test_similar_detects_scaled_transforms(g, u, lam):
    h = g.transform(u).scale(lam)
    res = similar(g, h)
    assert res.similar
    assert g.transform(res.transform).scale(res.scale) == h


def test_similarity_verdicts():
    assert similar(T_S, Gram2(266, -95, 34).scale(-3)).similar
    assert similar(T_S, Gram2(2, -1, 10).scale(-1)).similar
    res = similar(T_S, Gram2(2, 0, 38))
    assert not res.similar and res.scale is None


def test_negative_definite_input_is_negated():
    red, u = gauss_reduce(Gram2(-266, 95, -34))
    assert red == T_S
    assert Gram2(266, -95, 34).transform(u) == red


def test_indefinite_rejected():
    with pytest.raises(ValueError):
        gauss_reduce(Gram2(1, 3, 1))


def test_transcendental_form_invariants():
    assert T_S.det == 19
    # 2x^2 + 2xy + 10y^2 has discriminant b^2 - 4ac = 4 - 80
    a, b, c = T_S.m11, 2 * T_S.m12, T_S.m22
    assert b * b - 4 * a * c == -76


def test_determinant():
    assert determinant([]) == 1
    assert determinant([[2, 1], [1, 10]]) == 19
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    m = [[Fraction(i + j * j, 1 + i) for j in range(4)] for i in range(4)]
    perm_sum = Fraction(0)
    for perm in itertools.permutations(range(4)):
        sign = 1
        for a in range(4):
            for b in range(a + 1, 4):
                if perm[a] > perm[b]:
                    sign = -sign
        prod = Fraction(sign)
        for i, j in enumerate(perm):
            prod *= m[i][j]
        perm_sum += prod
    assert determinant(m) == perm_sum
