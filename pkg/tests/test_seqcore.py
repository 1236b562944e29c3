from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from dycklab.seqcore import (
    DomainError,
    InjectionError,
    QtPoly,
    SeqParseError,
    adjoint,
    brute_force_catalan,
    classify,
    deficit_pairs,
    defc,
    enumerate_dyck,
    find_extractable,
    format_seq,
    inject,
    is_full_skeleton,
    omega,
    epsilon,
    parse_seq,
    skeleton_tests,
    special_words,
    statistics,
    suffix_corrected_bound,
)


# naive oracles, written from the definitions only

def naive_stats(s):
    n = len(s)
    di = sum(1 for i in range(n) for j in range(i + 1, n) if s[i] == s[j] + 1)
    nv = sum(1 for i in range(n) for j in range(i + 1, n) if s[i] == s[j])
    area = sum(s)
    return area, di, nv, di + nv, comb(n, 2) - area - di - nv


def naive_dyck(n):
    for w in product(range(n), repeat=n):
        if w[0] == 0 and all(w[i + 1] <= w[i] + 1 for i in range(n - 1)):
            yield w


def test_classify_examples():
    c = classify(())
    assert c.affine and c.dual and c.reverse and not c.ordinary_dyck
    assert not classify((0, 1, 0, 2)).affine
    c = classify((0, 2, 4))
    assert c.dual and not c.affine


def test_classify_interval():
    assert classify((0, 1, 2), 0, 2).interval_ok
    assert not classify((0, 1, 3), 0, 2).interval_ok


def test_statistics_examples():
    s = statistics((0,))
    assert (s.area, s.di, s.nv, s.dinv, s.defc) == (0, 0, 0, 0, 0)
    s = statistics(omega(9))
    assert (s.area, s.dinv, s.defc) == (1, 28, 7)
    s = statistics(epsilon(9))
    assert (s.area, s.dinv, s.defc) == (2, 27, 7)


@pytest.mark.parametrize("n", range(1, 8))
def test_statistics_match_pair_loops(n):
    for s in enumerate_dyck(n):
        st_ = statistics(s)
        assert (st_.area, st_.di, st_.nv, st_.dinv, st_.defc) == naive_stats(s)
        assert st_.defc >= 0


def test_deficit_pairs_examples():
    r = deficit_pairs((0, 0, 0))
    assert r.type_a == () and r.type_b == () and r.missing_correction == 0
    r = deficit_pairs((0, 2))
    assert r.type_a == () and r.type_b == () and r.missing_correction == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_deficit_pairs_zero_correction_on_dyck(n):
    for s in enumerate_dyck(n):
        r = deficit_pairs(s)
        assert r.missing_correction == 0
        assert len(r.type_a) + len(r.type_b) == defc(s)


def test_enumerate_dyck_counts():
    assert list(enumerate_dyck(1)) == [(0,)]
    assert sum(1 for _ in enumerate_dyck(4)) == 14
    for n in range(1, 7):
        assert sorted(enumerate_dyck(n)) == sorted(naive_dyck(n))


def test_find_extractable_examples():
    assert find_extractable((0, 0, 0)) is None
    assert find_extractable((0, 1, 1)) == (1, 1)
    assert find_extractable(epsilon(9)) is None


def test_inject_examples():
    assert inject((0, 0, 1), 2) == (0, 0, 1, 2)
    assert inject((0, 0, 1), 1) == (0, 1, 0, 1)
    with pytest.raises(InjectionError):
        inject((0,), 2)


@pytest.mark.parametrize("n", range(2, 8))
def test_extract_then_inject_restores(n):
    for s in enumerate_dyck(n):
        hit = find_extractable(s)
        if hit is None:
            continue
        j, x = hit
        rest = s[:j] + s[j + 1:]
        assert inject(rest, x) == s


def test_skeleton_tests_examples():
    f = skeleton_tests(epsilon(9))
    assert f.full and not f.special
    f = skeleton_tests((0, 0, 0, 0))
    assert f.full and f.special
    assert not skeleton_tests((0, 1, 0, 1)).full


def test_special_words():
    w, e = special_words(9)
    assert w == (0,) * 8 + (1,)
    assert e == (0, 0, 1) + (0,) * 5 + (1,)
    assert special_words(4)[1] == (0, 0, 1, 1)
    with pytest.raises(DomainError):
        special_words(3)


def test_adjoint_examples():
    assert adjoint(()) == ()
    assert adjoint((0, 2, 4)) == (-4, -2, 0)
    assert classify(adjoint((0, 2, 4))).dual


@given(st.lists(st.integers(-5, 5), max_size=8))
def test_adjoint_involution(s):
    assert adjoint(adjoint(tuple(s))) == tuple(s)


def test_suffix_bound_is_a_lower_bound():
    checked = 0
    for n in range(2, 8):
        for t in enumerate_dyck(n):
            pairs = deficit_pairs(t)
            for k in range(1, n):
                r, s = t[:-k], t[-k:]
                if s[-1] not in r or not classify(s).reverse:
                    continue
                bound = suffix_corrected_bound(t, k)
                assert bound <= defc(t)
                if k == 1:
                    assert bound == len(pairs.type_a) + len(pairs.type_b)
                checked += 1
    assert checked > 0


def test_suffix_bound_rejects_bad_split():
    with pytest.raises(DomainError):
        suffix_corrected_bound((0, 1, 2), 1)
    with pytest.raises(DomainError):
        suffix_corrected_bound((0, 1), 0)


def test_brute_force_small():
    c3 = brute_force_catalan(3)
    assert str(c3) == "q^3 + q^2*t + q*t^2 + t^3 + q*t"
    assert brute_force_catalan(1) == QtPoly.monomial(0, 0)
    # deficit-zero slice of C_4 is the full geometric row q^6 .. t^6
    assert brute_force_catalan(4, max_defc=0) == QtPoly.geometric(0, 6, 6)


@pytest.mark.parametrize("n", range(1, 8))
def test_brute_force_matches_naive(n):
    want = QtPoly()
    for s in naive_dyck(n):
        a, _, _, dv, _ = naive_stats(s)
        want.add_term(a, dv)
    assert brute_force_catalan(n) == want


def test_poly_print_order():
    p = QtPoly({(0, 0): 1, (1, 2): -3, (2, 1): 1, (0, 3): 2})
    assert str(p) == "q^2*t - 3*q*t^2 + 2*t^3 + 1"
    assert str(QtPoly()) == "0"


def test_parse_format_roundtrip():
    assert parse_seq("[0,1,2]") == (0, 1, 2)
    assert parse_seq("[0, 1, 2]") == (0, 1, 2)
    assert parse_seq("[]") == ()
    assert format_seq((0, -1, 2)) == "[0,-1,2]"


@pytest.mark.parametrize("text,pos", [("[0,x,2]", 3), ("[0,1", 4), ("[0,,1]", 3)])
def test_parse_error_position(text, pos):
    with pytest.raises(SeqParseError) as ei:
        parse_seq(text)
    assert ei.value.pos == pos


def test_full_skeleton_area_bound_small():
    for n in range(1, 8):
        for s in enumerate_dyck(n):
            if is_full_skeleton(s):
                assert sum(s) <= defc(s)
