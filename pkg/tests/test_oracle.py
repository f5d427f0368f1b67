import numpy as np
import pytest

from conftest import desc
from skewk.abgroup import AbGroup, Character, GroupRingElem
from skewk.errors import OracleBoundExceeded
from skewk.oracle import (SkewAlgebra, TableAlgebra, center, character_data, factor_structure,
                          oracle_decompose, primitive_idempotents, regular_algebra, rho_oracle,
                          tensor_oracle)
from skewk.skewring import SkewRingDesc

Z3 = AbGroup((3,))


def _f2_z3_elem(a0, a1, a2):
    return np.array([a0, a1, a2], dtype=np.int64)


def test_group_algebra_dim(f2_z3):
    A = regular_algebra(f2_z3)
    assert A.dim == 3
    # group elements multiply like Z/3
    g = [A.monomial(i) for i in range(3)]
    assert np.array_equal(A.mul(g[1], g[2]), g[0])
    assert np.array_equal(A.mul(g[2], g[2]), g[1])


def test_skew_relation(f4_s3):
    A = regular_algebra(f4_s3)
    assert A.dim_F == 12 and A.dim == 12
    x = A.monomial(0, [0, 1])
    phi = A.monomial(A.component_index((0,), 1))
    # phi x = x^2 phi
    assert np.array_equal(A.mul(phi, x), A.mul(A.power(x, 2), phi))
    assert not np.array_equal(A.mul(phi, x), A.mul(x, phi))


def test_laws_exhaustive_small(f4_s3):
    A = regular_algebra(f4_s3)
    T = A.structure_constants()
    I = np.eye(A.dim, dtype=np.int64)
    for i in range(A.dim):
        assert np.array_equal(A.mul(A.unit, I[i]), I[i])
        assert np.array_equal(A.mul(I[i], A.unit), I[i])
    lhs = np.einsum("ijk,klm->ijlm", T, T) % 2
    rhs = np.einsum("jlk,ikm->ijlm", T, T) % 2
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("args", [(3, 2, 2, (4,), ((3,),)), (5, 1, 4, (2, 2), ((0, 1), (1, 0))),
                                  (7, 2, 2, (3,), ((2,),))])
def test_fast_paths_match_generic(args):
    A = regular_algebra(desc(*args))
    rng = np.random.default_rng(0)
    u = rng.integers(0, A.p, A.dim)
    V = rng.integers(0, A.p, (12, A.dim))
    generic = np.array([A.mul(u, v) for v in V])
    assert np.array_equal(A.mul_many(np.repeat(u[None], 12, 0), V), generic)
    assert np.array_equal(V @ A.left_matrix(u).T % A.p, generic)
    generic_r = np.array([A.mul(v, u) for v in V])
    assert np.array_equal(A.mul_many(V, np.repeat(u[None], 12, 0)), generic_r)


def test_oracle_bound():
    with pytest.raises(OracleBoundExceeded):
        regular_algebra(desc(5, 1, 4, (32,)))


def test_center_commutative():
    # F_3[t]/(t^2 - 1) is commutative: center is everything
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0, 0] = table[0, 1, 1] = table[1, 0, 1] = table[1, 1, 0] = 1
    A = TableAlgebra(3, table, [1, 0])
    assert center(A).dim == 2


def test_center_dims(f2_z3, f4_s3):
    assert center(regular_algebra(f2_z3)).dim == 3
    Z = center(regular_algebra(f4_s3))
    assert Z.dim == 3 and Z.mu_check


def test_idempotents_f2_z3(f2_z3):
    A = regular_algebra(f2_z3)
    es = {tuple(e) for e in primitive_idempotents(center(A))}
    assert es == {(1, 1, 1), (0, 1, 1)}


def test_idempotents_f4_s3(f4_s3):
    A = regular_algebra(f4_s3)
    assert len(primitive_idempotents(center(A))) == 3


def test_trivial_center_single_idempotent():
    A = regular_algebra(SkewRingDesc.cyclic(3, 1, 2, 1))
    Z = center(A)
    assert Z.dim == 1
    es = list(primitive_idempotents(Z))
    assert len(es) == 1 and np.array_equal(es[0], A.unit)


def test_factor_structure_examples(f2_z3, f4_s3):
    A = regular_algebra(f2_z3)
    Z = center(A)
    shapes = sorted((s.d, s.center_degree) for s in
                    (factor_structure(A, e, Z) for e in primitive_idempotents(Z)))
    assert shapes == [(1, 1), (1, 2)]
    A = regular_algebra(f4_s3)
    Z = center(A)
    sts = [factor_structure(A, e, Z) for e in primitive_idempotents(Z)]
    assert [(s.d, s.center_degree, s.dim_F) for s in sts] == [(2, 1, 4)] * 3


@pytest.mark.parametrize("p,f,n", [(2, 1, 3), (3, 2, 2), (5, 1, 4), (7, 2, 3)])
def test_trivial_n_is_matrix_ring(p, f, n):
    od = oracle_decompose(SkewRingDesc.cyclic(p, f, n, 1))
    assert [(fa.structure.d, fa.structure.center_degree) for fa in od.factors] == [(n, 1)]


def test_rho_oracle_f2_z3(f2_z3):
    A = regular_algebra(f2_z3)
    Z = center(A)
    rhos = sorted((rho_oracle(A, e, f2_z3, Z) for e in primitive_idempotents(Z)), key=repr)
    assert GroupRingElem.basis(Character(Z3, (0,))) in rhos
    assert GroupRingElem.from_dict(Z3, {(1,): 1, (2,): 1}) in rhos


def test_character_data_detects_each_character_once(f4_s3):
    cd = character_data(regular_algebra(f4_s3))
    assert sorted(cd.char_to_idem) == [(0,), (1,), (2,)]
    assert len(set(cd.char_to_idem.values())) == 3


def test_tensor_oracle_examples(f2_z3):
    od = oracle_decompose(f2_z3)
    assert tensor_oracle(od, (1,), (0,)) == {(1,): 1}
    assert tensor_oracle(od, (1,), (1,)) == {(0,): 2, (1,): 1}


@pytest.mark.parametrize("args", [(2, 1, 2, (3,), ((2,),)), (3, 1, 4, (2, 2), ((0, 1), (1, 0))),
                                  (5, 1, 2, (4,), ((3,),)), (3, 2, 2, (5,), ((4,),))])
def test_tensor_oracle_symmetric(args):
    od = oracle_decompose(desc(*args))
    labs = [fa.label for fa in od.factors]
    for a in labs:
        for b in labs:
            assert tensor_oracle(od, a, b) == tensor_oracle(od, b, a)


@pytest.mark.parametrize("args", [(2, 1, 2, (3,), ((2,),)), (3, 2, 2, (2, 4), ((1, 0), (0, 3))),
                                  (7, 1, 3, (2, 2), ((0, 1), (1, 1)))])
def test_oracle_dimension_sums(args):
    d = desc(*args)
    od = oracle_decompose(d)
    assert sum(fa.structure.dim_F for fa in od.factors) == d.n * d.group_order
    assert sum(fa.structure.center_degree for fa in od.factors) * d.f == od.Z.dim
    for fa in od.factors:
        assert all(k == 1 for _, k in fa.rho.coeffs)
