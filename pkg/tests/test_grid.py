import itertools

import numpy as np

from skewk.abgroup import AbGroup, Automorphism
from skewk.grid import (GridBounds, GridItem, _automorphism_data, abelian_groups,
                        automorphism_classes, compare, grid_items, run_item, summary_line)
from skewk.skewring import SkewRingDesc


def test_abelian_group_count():
    # number of abelian groups of order 1..16
    counts = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]
    gs = abelian_groups(16)
    assert len(gs) == sum(counts)
    for m, c in enumerate(counts, start=1):
        assert sum(g.order == m for g in gs) == c


def test_automorphism_counts():
    # |Aut| of Z/8, Z/2 x Z/4, (Z/2)^3
    for factors, size in [((8,), 4), ((2, 4), 8), ((2, 2, 2), 168)]:
        mats, _, _ = _automorphism_data(factors)
        assert len(mats) == size


def test_v4_classes():
    # Aut(V4) = S3: classes of elements of order 1, 2, 3
    assert len(automorphism_classes((2, 2), 2)) == 2
    assert len(automorphism_classes((2, 2), 3)) == 2
    assert len(automorphism_classes((2, 2), 6)) == 3


def test_classes_are_lex_least_and_distinct():
    for factors in [(3,), (2, 4), (8,), (2, 2, 2)]:
        N = AbGroup(factors)
        reps = automorphism_classes(factors, 4)
        mats, perm, order = _automorphism_data(factors)
        allm = [tuple(tuple(int(x) for x in r) for r in m) for m in mats]
        for r in reps:
            th = Automorphism(N, r)
            assert th.power(4).is_identity()
            conj = set()
            for s in allm:
                a = Automorphism(N, s)
                conj.add(a.compose(th).compose(a.inverse()).matrix)
            assert r == min(conj)
        assert len(set(reps)) == len(reps)


def test_grid_shape():
    items = grid_items(GridBounds())
    assert len(items) == 2000
    assert sum(it.skip is None for it in items) == 1166
    assert sum(it.skip == "SKIP_BOUND" for it in items) == 102
    assert sum(it.skip == "SKIP_MASCHKE" for it in items) == 732
    for it in items:
        if it.skip == "SKIP_MASCHKE":
            assert (it.n * np.prod(it.factors, dtype=int)) % it.p == 0
        assert it.n ** 2 * int(np.prod(it.factors, dtype=int)) <= 256


def test_compare_small():
    assert compare(SkewRingDesc.cyclic(2, 1, 1, 3)) == (True, "")
    assert compare(SkewRingDesc.cyclic(2, 1, 2, 3, theta=2)) == (True, "")


def test_run_item_skip_and_summary():
    it = GridItem(3, 1, 1, (3,), ((1,),), "SKIP_MASCHKE")
    v = run_item(it)
    assert v.status == "SKIP_MASCHKE"
    assert v.line() == "SKIP_MASCHKE p=3 f=1 n=1 N=[3] theta=1"
    ok = run_item(GridItem(2, 1, 1, (3,), ((1,),)))
    assert ok.status == "AGREE"
    assert summary_line([v, ok]) == "AGREE 1/1"
    assert summary_line([]) == "AGREE 0/0"
