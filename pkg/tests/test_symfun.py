from itertools import combinations_with_replacement
from collections import Counter

import pytest

from dycklab.seqcore import QtPoly, di, distinct_permutations, is_affine, is_dual
from dycklab.symfun import (
    AFFINE,
    DUAL,
    Partition,
    TruncPoly,
    all_dyck_tableaux,
    dyck_symmetric_function,
    enumerate_dyck_tableaux,
    fundamental_complement_check,
    partitions_of,
    schur,
    schur_qt,
    verify_schur_expansion,
)


def factor_count_oracle(multiset, d, mode, n_vars):
    """Sum over words w with di(w)=d and splittings of w into n_vars
    consecutive factors (empties allowed) that are all dual/affine."""
    ok = is_dual if mode == DUAL else is_affine
    acc = Counter()

    def split(w, k, lens):
        if k == 1:
            if ok(w):
                acc[tuple(lens + [len(w)])] += 1
            return
        for cut in range(len(w) + 1):
            if ok(w[:cut]):
                split(w[cut:], k - 1, lens + [cut])

    for w in distinct_permutations(multiset):
        if di(w) == d:
            split(w, n_vars, [])
    return TruncPoly(n_vars, dict(acc))


def test_schur_small():
    assert schur((1,), 2).terms == {(1, 0): 1, (0, 1): 1}
    assert schur_qt((1, 1)) == QtPoly.monomial(1, 1)
    assert str(schur_qt((2,))) == "q^2 + q*t + t^2"
    assert schur((2, 1), 2).terms == {(2, 1): 1, (1, 2): 1}


@pytest.mark.parametrize("size", range(1, 6))
def test_schur_symmetric(size):
    for lam in partitions_of(size):
        assert schur(lam, 3).is_symmetric()


def test_partition_conjugate():
    assert Partition((3, 1)).conjugate().parts == (2, 1, 1)
    assert Partition(()).conjugate().parts == ()


def test_ds_examples():
    for mode in (AFFINE, DUAL):
        assert dyck_symmetric_function((0,), 0, mode, 2).terms == {(1, 0): 1, (0, 1): 1}
    assert dyck_symmetric_function((0, 2), 0, DUAL, 2).coefficient((2, 0)) >= 1


@pytest.mark.parametrize("ms", [(0, 1), (0, 0, 1), (0, 1, 1, 2), (0, 2, 4), (1, 1, 1), (0, 1, 2, 3)])
@pytest.mark.parametrize("mode", [AFFINE, DUAL])
def test_ds_matches_factor_count(ms, mode):
    for d in range(len(ms) * (len(ms) - 1) // 2 + 1):
        assert dyck_symmetric_function(ms, d, mode, 3) == factor_count_oracle(ms, d, mode, 3)


def test_ds_seven_letter_symmetry():
    ms = (0, 0, 1, 1, 2, 3, 3)
    for d in range(8):
        p = dyck_symmetric_function(ms, d, AFFINE, 2)
        assert p.coefficient((4, 3)) == p.coefficient((3, 4))


def test_enumerate_tableaux_examples():
    assert [t.rows for t in enumerate_dyck_tableaux((0,), 0)] == [((0,),)]
    assert ((0, 2),) in [t.rows for t in enumerate_dyck_tableaux((0, 2), 0)]


def test_tableaux_count_matches_schur_total():
    ms = (0, 1, 1, 2)
    for d in range(7):
        tabs = list(enumerate_dyck_tableaux(ms, d))
        # with N = |S| variables the coefficient of x0 x1 x2 x3 counts standard fillings
        lhs = dyck_symmetric_function(ms, d, DUAL, 4).coefficient((1, 1, 1, 1))
        rhs = sum(schur(Partition(t.shape), 4).coefficient((1, 1, 1, 1)) for t in tabs)
        assert lhs == rhs


def test_all_tableaux_are_valid_and_distinct():
    tabs = [t.rows for t in all_dyck_tableaux((0, 0, 1, 2, 2))]
    assert len(tabs) == len(set(tabs)) > 0


def test_verify_expansion_examples():
    for mode in (AFFINE, DUAL):
        assert verify_schur_expansion((0, 1), 0, 2, mode).ok
    for d in range(7):
        if list(enumerate_dyck_tableaux((0, 1, 1, 2), d)):
            for mode in (AFFINE, DUAL):
                assert verify_schur_expansion((0, 1, 1, 2), d, 4, mode).ok
    rep = verify_schur_expansion((), 0, 1, DUAL)
    assert rep.ok and rep.tableaux == 1


def test_complement_examples():
    assert fundamental_complement_check((0, 1), 0).ok
    assert fundamental_complement_check((3,), 0).ok
    for d in range(4):
        assert fundamental_complement_check((0, 0, 1), d, 3).ok


def test_small_domain_exhaustive():
    for size in range(4):
        for ms in combinations_with_replacement(range(4), size):
            for d in range(size * (size - 1) // 2 + 1):
                for mode in (AFFINE, DUAL):
                    assert verify_schur_expansion(ms, d, max(size, 1), mode).ok
