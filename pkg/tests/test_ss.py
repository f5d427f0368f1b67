import pytest

from skewk.errors import ElPrimeEqualsP
from skewk.ktheory import LComplGroup, k_F_completed
from skewk.ss import dc_homotopy, e1_page, verify_main


@pytest.mark.parametrize("p,ell,t0,t1", [(7, 3, -5, 0), (2, 3, -3, 1), (3, 2, -4, -1), (2, 7, 0, 0)])
def test_support_is_two_diagonals(p, ell, t0, t1):
    pg = e1_page(p, ell, t0, t1)
    for (s, t), g in pg.entries.items():
        if s + 2 * t not in (0, 1):
            assert g.is_zero()
    assert set(pg.nonzero()) <= {(s, t) for s, t in pg.support()}
    assert all(s + 2 * t in (0, 1) for s, t in pg.support())


def test_corner_and_entries():
    pg = e1_page(7, 3, -3, 0)
    assert pg.entry(0, 0) == LComplGroup(3, 1)
    assert pg.entry(2, 0).is_zero()
    assert pg.entry(2, -1) == LComplGroup(3, 0, (3,))
    assert pg.entry(3, -1) == LComplGroup(3, 0, (3,))
    assert pg.differential(2, -1) == 0


def test_render_shape():
    text = e1_page(7, 3, -2, 0).render()
    lines = text.splitlines()
    assert "Z_3" in lines[-3] and "Z/3" in lines[-6]
    assert len({len(l) for l in lines}) == 1


def test_dc_homotopy_examples():
    dc = dc_homotopy(7, 3, 3)
    assert dc[0] == LComplGroup(3, 1)
    assert dc[1] == LComplGroup(3, 1, (3,))
    assert dc[2] == LComplGroup(3, 0, (3,))


def test_verify_main_p7_l3():
    rep = verify_main(7, 3, 40)
    assert rep.verdict == "PASS"
    assert all(ok for *_, ok in rep.rows)
    assert rep.rows[0][1] == rep.rows[0][2] == LComplGroup(3, 1)


def test_verify_main_conditional():
    rep = verify_main(2, 7, 10)
    assert rep.verdict == "CONDITIONAL"
    assert (1, 3) in rep.stability.pairs()


def test_verify_main_rejects_equal_primes():
    with pytest.raises(ElPrimeEqualsP):
        verify_main(3, 3, 5)


@pytest.mark.parametrize("p,ell", [(7, 3), (2, 3), (5, 2), (3, 5), (2, 7), (3, 2), (11, 5), (13, 3)])
def test_clean_stability_means_agreement(p, ell):
    rep = verify_main(p, ell, 15)
    if rep.stability.clean:
        assert rep.verdict == "PASS"
        dc = dc_homotopy(p, ell, 15)
        assert all(dc[n] == k_F_completed(p, ell, n) for n in range(16))
    else:
        assert rep.verdict == "CONDITIONAL"
