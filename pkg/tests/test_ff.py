import itertools

import pytest
from hypothesis import given, settings, strategies as st

from skewk.errors import FieldBoundExceeded, NoEmbedding, NonPrime
from skewk.ff import (build_field, embed, frobenius_pow, is_prime, l_valuation,
                      mult_order, root_of_unity, splitting_degree)


def _irreducible_brute(p, d, mod):
    """No root-free factorisation check: brute force over all monic factors of degree <= d/2."""
    from skewk.ff import _pdivmod
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            r = _pdivmod(list(mod), list(tail) + [1], p)[1]
            if not any(r):
                return False
    return True


def test_prime_field_modulus_is_x():
    assert build_field(2, 1).modulus == (0, 1)


def test_f4_modulus():
    assert build_field(2, 2).modulus == (1, 1, 1)


@pytest.mark.parametrize("p,d", [(3, 2), (2, 3), (5, 2), (2, 4), (3, 3)])
def test_modulus_is_lex_least_irreducible(p, d):
    mod = build_field(p, d).modulus
    assert mod[-1] == 1 and len(mod) == d + 1
    assert _irreducible_brute(p, d, mod)
    for tail in itertools.product(range(p), repeat=d):
        cand = tail + (1,)
        if cand == mod:
            break
        assert not _irreducible_brute(p, d, cand)


def test_build_field_deterministic():
    assert build_field(3, 4) == build_field(3, 4)


def test_build_field_errors():
    with pytest.raises(NonPrime):
        build_field(4, 1)
    with pytest.raises(FieldBoundExceeded):
        build_field(2, 21)
    assert build_field(2, 21, bound=2**21).d == 21


def test_frobenius_f4():
    F = build_field(2, 2)
    x = F.gen()
    assert frobenius_pow(x, 1) == F.element([1, 1])
    assert frobenius_pow(x, 0) == x
    assert frobenius_pow(x, 2) == x


def test_frobenius_prime_field_fixed():
    F = build_field(7, 1)
    for x in F.elements():
        assert frobenius_pow(x, 3) == x


@pytest.mark.parametrize("p,d", [(2, 4), (3, 3), (5, 2)])
def test_frobenius_is_additive_and_multiplicative(p, d):
    F = build_field(p, d)
    xs = list(F.elements())[:40]
    for a, b in zip(xs, reversed(xs)):
        assert frobenius_pow(a + b, 1) == frobenius_pow(a, 1) + frobenius_pow(b, 1)
        assert frobenius_pow(a * b, 1) == frobenius_pow(a, 1) * frobenius_pow(b, 1)
        assert frobenius_pow(a, d) == a


def test_field_axioms_small():
    F = build_field(3, 2)
    els = list(F.elements())
    for a in els:
        if not a.is_zero():
            assert a * a.inverse() == F.one()
    for a, b, c in itertools.islice(itertools.product(els, repeat=3), 0, 729, 7):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


def test_embed_prime_subfield():
    e = embed(build_field(2, 1), build_field(2, 2))
    F2, F4 = build_field(2, 1), build_field(2, 2)
    assert e(F2.zero()) == F4.zero()
    assert e(F2.one()) == F4.one()


def test_embed_f4_f16_order_three():
    e = embed(build_field(2, 2), build_field(2, 4))
    assert e(build_field(2, 2).gen()).multiplicative_order() == 3


def test_embed_identity():
    F = build_field(3, 2)
    e = embed(F, F)
    for x in F.elements():
        assert e(x) == x


def test_embed_picks_least_root():
    small, big = build_field(2, 2), build_field(2, 4)
    img = embed(small, big).image
    roots = [y for y in big.elements()
             if (y * y + y + big.one()).is_zero()]
    assert img == min(roots)


@pytest.mark.parametrize("p,a,b,c", [(2, 1, 2, 4), (2, 2, 4, 8), (3, 1, 2, 4), (3, 2, 4, 4)])
def test_embed_chain_homomorphism(p, a, b, c):
    A, B, C = build_field(p, a), build_field(p, b), build_field(p, c)
    ab, bc = embed(A, B), embed(B, C)
    comp = bc.compose(ab)
    els = list(A.elements())
    for x, y in zip(els, reversed(els)):
        assert comp(x + y) == comp(x) + comp(y)
        assert comp(x * y) == comp(x) * comp(y)
        assert comp(x) == bc(ab(x))


def test_embed_errors():
    with pytest.raises(NoEmbedding):
        embed(build_field(2, 2), build_field(2, 3))
    with pytest.raises(NoEmbedding):
        embed(build_field(2, 1), build_field(3, 2))


def test_mult_order_examples():
    assert mult_order(2, 7) == 3
    assert mult_order(5, 1) == 1
    assert mult_order(7, 9) == 3


def test_l_valuation_examples():
    assert l_valuation(48, 3) == 1
    assert l_valuation(1, 5) == 0
    assert l_valuation(342, 3) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**30), st.sampled_from([2, 3, 5, 7, 11]))
def test_l_valuation_property(n, ell):
    v = l_valuation(n, ell)
    assert n % ell ** v == 0 and n % ell ** (v + 1) != 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(1, 500))
def test_mult_order_property(p, m):
    from math import gcd
    if gcd(p, m) != 1:
        return
    k = mult_order(p, m)
    assert pow(p, k, m) == 1 % m
    assert all(pow(p, j, m) != 1 % m for j in range(1, k))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p,d,m", [(2, 1, 3), (2, 2, 5), (3, 1, 4), (7, 1, 9), (5, 2, 8)])
def test_root_of_unity(p, d, m):
    D = splitting_degree(p, d, m)
    assert D % d == 0 and (p ** D - 1) % m == 0
    F = build_field(p, D)
    z = root_of_unity(F, m)
    assert z.multiplicative_order() == m
    others = [y for y in F.elements() if not y.is_zero() and y.multiplicative_order() == m]
    assert z == min(others)
