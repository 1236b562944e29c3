from itertools import combinations_with_replacement, product
import random

import pytest

from dycklab.bijections import (
    Triple1,
    Triple2,
    Triple3,
    Triple4,
    affine_fiber,
    phi,
    phi1,
    phi1_inverse,
    phi2,
    phi2_inverse,
    phi3,
    phi3_inverse,
    phi4,
    phi4_inverse,
    phi_image_count,
    phi_inverse,
    rank_transport,
    tableau_fiber,
    triple_stats,
    two_column_catalan,
)
from dycklab.insertion import DyckTableau
from dycklab.seqcore import (
    DomainError,
    area,
    brute_force_catalan,
    di,
    dinv,
    enumerate_dyck,
    is_affine,
    is_reverse,
    m_skeleton,
)


def test_triple_stats_examples():
    assert triple_stats(Triple1((1,), (0, 0, 1), (), 1)) == (2, 3)
    f = (0, 0, 1)
    t4 = Triple4(f, DyckTableau(), (), 1)
    assert triple_stats(t4) == (area(f), dinv(f))
    assert triple_stats(Triple2(f, (0,), (0,), 1)) == triple_stats(Triple3(f, (0,), (0,), 1))


def test_phi1_examples():
    t = phi1((0, 1, 0, 1))
    assert (t.E, t.F, t.G) == ((1,), (0, 0, 1), ())
    s = (0, 0, 1)
    t = phi1(s)
    assert (t.E, t.F, t.G) == ((), s, ())


def test_phi1_rejects_non_dyck():
    with pytest.raises(DomainError):
        phi1((1, 0))


@pytest.mark.parametrize("n", range(1, 9))
def test_phi1_roundtrip_and_stats(n):
    for d in enumerate_dyck(n):
        t = phi1(d)
        assert phi1_inverse(t) == d
        assert triple_stats(t) == (area(d), dinv(d))
        assert m_skeleton(t.F) == t.m


def test_phi2_examples():
    t = Triple1((1,), (0, 0, 1), (), 1)
    assert phi2(t).E == (0,)
    t = Triple1((), (0, 0, 1), (), 1)
    assert phi2(t).E == ()


def test_phi2_random_stats():
    rng = random.Random(7)
    dycks = [d for n in range(1, 9) for d in enumerate_dyck(n)]
    for d in rng.sample(dycks, 2000):
        t = phi1(d)
        t2 = phi2(t)
        assert triple_stats(t2) == triple_stats(t)
        assert phi2_inverse(t2) == t


def test_rank_transport_examples():
    assert rank_transport((0, 2), 2, "fw") == (2, 0)
    for n in range(5):
        for w in product(range(2), repeat=n):
            if is_reverse(w):
                assert rank_transport(w, 1, "fw") == w


def test_rank_transport_preserves_di_and_inverts():
    for n in range(6):
        for w in product(range(4), repeat=n):
            if is_reverse(w):
                x = rank_transport(w, 3, "fw")
                assert is_affine(x) and sorted(x) == sorted(w) and di(x) == di(w)
                assert rank_transport(x, 3, "bk") == w


def test_rank_transport_domain():
    with pytest.raises(DomainError):
        rank_transport((3, 0), 3, "fw")
    with pytest.raises(ValueError):
        rank_transport((0,), 3, "sideways")


def test_phi3_small_m():
    t = Triple2((0, 1), (0,), (0, 0), 1)
    assert phi3(t).E == (0, 0)
    t = Triple2((0,), (), (), 0)
    assert phi3(t).E == ()


@pytest.mark.parametrize("n", range(1, 8))
def test_phi3_stats(n):
    for d in enumerate_dyck(n):
        t2 = phi2(phi1(d))
        t3 = phi3(t2)
        assert triple_stats(t3) == triple_stats(t2)
        assert phi3_inverse(t3) == t2


def test_phi4_empty():
    t = phi4(Triple3((0,), (), (), 0))
    assert t.P.rows == () and t.Q == ()


def test_fiber_sizes_agree():
    for size in range(6):
        for ms in combinations_with_replacement(range(4), size):
            for d in range(size * (size - 1) // 2 + 1):
                for g in range(size + 1):
                    assert len(affine_fiber(ms, d, g, size - g)) == len(tableau_fiber(ms, d, size - g))


@pytest.mark.parametrize("n", range(1, 8))
def test_phi_chain_roundtrip(n):
    images = set()
    for d in enumerate_dyck(n):
        t = phi(d)
        assert triple_stats(t) == (area(d), dinv(d))
        assert phi_inverse(t) == d
        images.add((t.F, t.P.rows, t.Q))
    assert len(images) == phi_image_count(n)


def test_two_column_examples():
    assert str(two_column_catalan(3)) == "q^3 + q^2*t + q*t^2 + t^3 + q*t"
    assert two_column_catalan(1) == brute_force_catalan(1)


@pytest.mark.parametrize("n", range(4, 9))
def test_two_column_matches_brute(n):
    assert two_column_catalan(n) == brute_force_catalan(n)
