import pytest
from hypothesis import given, settings, strategies as st

from skewk.errors import ElPrimeEqualsP, InvalidDegree
from skewk.ff import l_valuation
from skewk.ktheory import (FgAbGroup, LComplGroup, approximant_q, k_F_completed, k_finite_field,
                           k_rep_groups, l_complete, stability_check)


def test_fg_normalises():
    assert FgAbGroup(0, (2, 3)).torsion == (6,)
    assert FgAbGroup(1, (4, 6)).torsion == (2, 12)
    assert str(FgAbGroup(1, (6,))) == "Z + Z/6"
    assert FgAbGroup().is_zero()


def test_lcompl_rejects_non_powers():
    with pytest.raises(ValueError):
        LComplGroup(3, 0, (6,))


def test_k_finite_field_examples():
    assert k_finite_field(7, 0) == FgAbGroup(1)
    assert k_finite_field(7, 1) == FgAbGroup(0, (6,))
    assert k_finite_field(7, 3) == FgAbGroup(0, (48,))
    assert k_finite_field(7, 4).is_zero()
    with pytest.raises(InvalidDegree):
        k_finite_field(7, -1)


def test_l_complete_examples():
    assert l_complete(FgAbGroup(1), 5) == LComplGroup(5, 1)
    assert l_complete(FgAbGroup(0, (6,)), 3) == LComplGroup(3, 0, (3,))
    assert l_complete(FgAbGroup(0, (48,)), 3) == LComplGroup(3, 0, (3,))


def test_completed_table_p7_l3():
    def pi(n):
        return l_complete(k_finite_field(7, n), 3)
    assert pi(1) == LComplGroup(3, 0, (3,))
    assert pi(3) == LComplGroup(3, 0, (3,))
    assert pi(5) == LComplGroup(3, 0, (9,))
    for n in (2, 4, 6, 8):
        assert pi(n).is_zero()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.sampled_from([2, 3, 5, 7]), st.integers(1, 30))
def test_completion_matches_valuation(q, ell, j):
    if q == ell:
        return
    g = l_complete(k_finite_field(q, 2 * j - 1), ell)
    v = l_valuation(q ** j - 1, ell)
    assert g == LComplGroup(ell, 0, (ell ** v,) if v else ())


def test_stability_examples():
    assert stability_check(7, 3, 6, 8).clean
    rep = stability_check(2, 7, 1, 3)
    assert (1, 3) in rep.pairs()
    assert all(m != 1 for _, m in stability_check(2, 7, 6, 10).pairs())


def test_stability_exact_flags():
    rep = stability_check(2, 7, 6, 10)
    want = [(j, m) for j in range(1, 7) for m in range(1, 11)
            if m % 7 and l_valuation(2 ** (m * j) - 1, 7) != l_valuation(2 ** j - 1, 7)]
    assert rep.pairs() == want


def test_stability_rejects_equal_primes():
    with pytest.raises(ElPrimeEqualsP):
        stability_check(3, 3, 2, 2)


def test_k_rep_groups():
    q = approximant_q(7, 3)
    r = k_rep_groups(7, 3, 0, 3)
    assert (r.k0_rank, r.coefficient) == (27, FgAbGroup(1))
    r = k_rep_groups(7, 3, 1, 2)
    assert (r.k0_rank, r.coefficient) == (9, FgAbGroup(0, (q - 1,)))
    assert k_rep_groups(7, 3, 4, 2).coefficient.is_zero()


def test_k_rep_groups_warns_on_unstable_pair():
    assert k_rep_groups(2, 7, 1, 1).warnings


def test_k_F_completed_examples():
    assert k_F_completed(7, 3, 0) == LComplGroup(3, 1)
    assert k_F_completed(7, 3, 1) == LComplGroup(3, 1, (3,))
    assert k_F_completed(7, 3, 2) == LComplGroup(3, 0, (3,))
