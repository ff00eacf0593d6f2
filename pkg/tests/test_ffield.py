import pickle

import pytest

from k3i19.ffield import FieldDesc, chi, enumerate_field, is_prime, legendre, make_field


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 1)


def test_f9_is_f3_adjoin_i():
    F = make_field(3, 2)
    i = F.gen()
    assert i * i == F(-1)
    assert F.nonresidue == 2


def test_enumeration_sizes():
    assert [x.index for x in enumerate_field(make_field(3))] == [0, 1, 2]
    assert len(list(enumerate_field(make_field(3, 2)))) == 9
    assert len({x.index for x in make_field(5, 3).enumerate()}) == 125


def test_chi_examples():
    F5 = make_field(5)
    assert chi(F5(0)) == 0
    assert chi(F5(4)) == 1
    F9 = make_field(3, 2)
    squares = {(x * x).index for x in F9.enumerate() if x}
    i = F9.gen()
    assert len(squares) == 4
    # i = (i(1+i))^2, so i is a square in F_9
    assert (i * (1 + i)) ** 2 == i
    assert chi(i) == (1 if i.index in squares else -1) == 1
    F7 = make_field(7)
    assert sum(1 for x in F7.enumerate() if chi(x) == 1) == 3


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_chi_is_multiplicative_and_balanced(p, n):
    F = make_field(p, n)
    elems = list(F.enumerate())
    assert sum(chi(x) for x in elems) == 0
    for x in elems[:: max(1, len(elems) // 12)]:
        for y in elems:
            assert chi(x * y) == chi(x) * chi(y)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 2), (3, 3)])
def test_chi_table_matches_exponentiation(p, n):
    F = make_field(p, n)
    assert F.chi_table == [chi(x) for x in F.enumerate()]


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_chi_on_prime_field_is_legendre(p):
    F = make_field(p)
    assert [chi(F(a)) for a in range(p)] == [legendre(a, p) for a in range(p)]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_frobenius_fixes_exactly_prime_field(p):
    F = make_field(p, 2)
    fixed = [x for x in F.enumerate() if x.frobenius() == x]
    assert sorted(x.index for x in fixed) == list(range(p))
    images = {x.frobenius().index for x in F.enumerate()}
    assert len(images) == F.q


@pytest.mark.parametrize("p,n", [(5, 1), (3, 2), (7, 2)])
def test_field_axioms(p, n):
    F = make_field(p, n)
    for x in F.enumerate():
        if x:
            assert x * x.inverse() == F.one
        assert x + (-x) == F.zero
        assert x.pth_root() ** p == x


def test_coercions():
    F = make_field(7, 2)
    from fractions import Fraction

    assert F(Fraction(1, 2)) * 2 == F.one
    assert F(make_field(7)(3)) == F(3)
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))
    with pytest.raises(TypeError):
        make_field(5)(make_field(7)(1))


def test_sqrt_of_minus_one_in_f361():
    F = FieldDesc(19, 2)
    r = F.sqrt(F(-1))
    assert r * r == F(-1)


def test_field_pickles():
    F = make_field(11, 2)
    G = pickle.loads(pickle.dumps(F))
    assert G == F and G.modulus == F.modulus
