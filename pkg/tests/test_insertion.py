import pytest
from hypothesis import given, strategies as st

from dycklab.insertion import (
    DualFactorization,
    DyckTableau,
    RecordingTableau,
    TableauError,
    extract_factorization,
    insert_factorization,
    max_chain,
    rowsert,
    tabsert,
    worsert,
)
from dycklab.seqcore import adjoint, di
from dycklab.verify.suites import dual_factorizations, dual_words

EXAMPLE_FACTORS = ((0, 2, 4), (1, 3), (1, 3, 5), (0, 6))
EXAMPLE_P = ((0, 3, 6), (0, 2, 5), (1, 4), (1, 3))
EXAMPLE_Q = ((0, 0, 0), (1, 1, 2), (2, 2), (3, 3))


def test_max_chain():
    assert max_chain((0, 2, 4), 0, "start") == 3
    assert max_chain((0, 2, 3), 0, "start") == 2
    assert max_chain((1, 3, 5), 2, "end") == 3


def test_rowsert_case3_pass_through():
    e, r, tr = rowsert((0, 2, 4), (1, 3), trace=True)
    assert (e, r) == ((1, 3), (0, 2, 4))
    assert [s.case for s in tr.steps] == [3]


def test_rowsert_case2_displaces_row():
    e, r, _ = rowsert((0, 2, 4), (1, 3, 5))
    assert (e, r) == ((0, 2, 4), (1, 3, 5))


def test_rowsert_case1_then_append():
    e, r, tr = rowsert((1, 3), (0, 2, 4), trace=True)
    assert (e, r) == ((1, 3), (0, 2, 4))
    assert [s.case for s in tr.steps] == [1, 1, 0]


def test_worsert_undoes_example():
    e, r, _ = rowsert((0, 2, 4), (1, 3, 5))
    r0, f0, _ = worsert(e, r)
    assert (r0, f0) == ((0, 2, 4), (1, 3, 5))


def test_worsert_empty():
    assert worsert((), (0, 2))[:2] == ((0, 2), ())


def test_rowsert_rejects_non_dual():
    with pytest.raises(Exception):
        rowsert((0, 1), (2,))


def test_rowsert_roundtrip_small_box():
    words = dual_words(4, 3)
    checked = 0
    for r in words:
        for f in words:
            e, r2, tr = rowsert(r, f, trace=True)
            assert sorted(e + r2) == sorted(r + f)
            if tr.has_case0:
                continue
            assert worsert(e, r2)[:2] == (r, f)
            checked += 1
    assert checked > 100


_dual = st.lists(st.integers(0, 3), max_size=4).map(lambda gaps: tuple(
    sum(g + 2 for g in gaps[:i]) for i in range(len(gaps))))


@given(_dual, _dual)
def test_worsert_is_adjointed_rowsert(e, r):
    try:
        back = worsert(e, r)[:2]
    except Exception:
        return
    e_adj, r_adj, _ = rowsert(adjoint(r), adjoint(e))
    assert back == (adjoint(r_adj), adjoint(e_adj))


def test_tabsert_example_chain():
    p = tabsert(DyckTableau(), (0, 2, 4))
    assert p.rows == ((0, 2, 4),)
    p, q = insert_factorization(DualFactorization(EXAMPLE_FACTORS[:3]))
    assert p.rows == ((1, 3, 5), (0, 2, 4), (1, 3))
    assert tabsert(p, (0, 6)).rows == EXAMPLE_P


def test_insert_factorization_example():
    p, q = insert_factorization(DualFactorization(EXAMPLE_FACTORS))
    assert p.rows == EXAMPLE_P
    assert q.rows == EXAMPLE_Q


def test_insert_trivial():
    p, q = insert_factorization(DualFactorization(((0, 2),)))
    assert p.rows == ((0, 2),) and q.rows == ((0, 0),)
    p, q = insert_factorization(DualFactorization(((), ())))
    assert p.rows == () and q.rows == ()


def test_extract_example():
    fac = extract_factorization(DyckTableau(EXAMPLE_P), RecordingTableau(EXAMPLE_Q))
    assert fac.factors == EXAMPLE_FACTORS
    assert extract_factorization(DyckTableau(), RecordingTableau()).factors == ()


def _factorings(multiset, slots):
    """All tuples of `slots` dual factors (empties allowed) whose union is multiset."""
    pieces = [w for w in dual_words(max(multiset), len(multiset))
              if all(w.count(v) <= multiset.count(v) for v in set(w))]

    def rec(left, k):
        if k == 0:
            if not left:
                yield ()
            return
        for w in pieces:
            if all(w.count(v) <= left.count(v) for v in set(w)):
                rest = list(left)
                for v in w:
                    rest.remove(v)
                for tail in rec(tuple(rest), k - 1):
                    yield (w,) + tail

    yield from rec(tuple(multiset), slots)


def test_extract_insert_exhaustive_small_multiset():
    seen = set()
    for fs in _factorings((0, 0, 1, 1, 2), 5):
        fac = DualFactorization(fs)
        if fac.factors in seen:
            continue
        seen.add(fac.factors)
        p, q = insert_factorization(fac)
        assert sorted(p.reading_word()) == [0, 0, 1, 1, 2]
        assert extract_factorization(p, q).factors == fac.factors
    assert len(seen) > 50


def test_insertion_preserves_di_of_reading_word():
    for fac in dual_factorizations(5, 3):
        p, _ = insert_factorization(fac)
        word = tuple(x for f in fac.factors for x in f)
        assert di(word) == di(p.reading_word())


def test_tableau_validation():
    with pytest.raises(TableauError):
        DyckTableau(((0, 1),))
    with pytest.raises(TableauError):
        DyckTableau(((0,), (0, 2)))
