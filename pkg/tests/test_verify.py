import pytest

from dycklab import skeleton
from dycklab.seqcore import is_dyck
from dycklab.verify import (
    CheckReport,
    SuiteBudget,
    east7_window_check,
    limited_nonzero_check,
    load_golden,
    prefix_form_check,
    residual_check,
    roundtrip_suites,
)
from dycklab.verify.east7 import compute_nk_case1, get_ew
from dycklab.skeleton import is_far_apart
from dycklab.verify.report import ordered_map, resolve_threads
from dycklab.verify.suites import shrink_seq, window_suite


def test_goldens_parse():
    res = load_golden("residual")
    assert res["up skeleton"] == 42 and res["up East3"] == 152
    assert load_golden("limited")["eligible down calls"] == 9486
    pre = load_golden("prefix")
    assert any(v == 504 for v in pre.values()) and any(v == 32760 for v in pre.values())
    e7 = load_golden("east7")
    assert e7["|EW|"] == 7194 and e7["case1 id=10 N"] == 33 and e7["case1 id=14 N"] is None


def test_report_compare_and_render():
    r = CheckReport("demo", counters={"a": 1, "b": (1, 2)})
    r.compare({"a": 1, "b": (1, 2)})
    assert r.ok and r.render().endswith("status: PASS")
    r.compare({"a": 2, "c": 0})
    assert not r.ok and r.mismatches == [("a", 1, 2)]
    assert r.render().endswith("status: FAIL")
    assert r.to_json()["counters"]["b"] == [1, 2]


def test_residual_check():
    rep = residual_check()
    assert rep.ok, rep.render()
    for label in ("up skeleton", "up East3", "up special", "up East5 case 2b"):
        assert rep.counters[label] == {"up skeleton": 42, "up East3": 152,
                                       "up special": 2, "up East5 case 2b": 4}[label]
    assert rep.counters["n=4 up skeleton"] == 1 and rep.counters["n=4 up East3"] == 2
    assert rep.render().splitlines()[-1] == "status: PASS"


def test_residual_is_deterministic():
    assert residual_check().to_json() == residual_check().to_json()


def test_limited_check():
    rep = limited_nonzero_check()
    assert rep.ok, rep.render()
    assert rep.counters["eligible down calls"] == 9486
    assert rep.counters["generated n=9"] == 3432
    assert rep.counters["position-bound or image failures"] == 0


def test_prefix_check():
    rep = prefix_form_check(threads=2)
    assert rep.ok, rep.render()


def test_east7_fast_mode():
    rep = east7_window_check(fast=True, threads=2)
    assert rep.ok, rep.render()
    assert rep.counters["|EW|"] == 7194
    assert rep.counters["min id_mid"] == 10
    assert rep.counters["min id_mid window"] == (1, 2, 3, 4, 1, 1, 0)
    assert compute_nk_case1(10) == (33, 23)
    assert all(is_far_apart(w) for w in list(get_ew())[:200])


def test_tiny_suites_fast():
    rep = roundtrip_suites(SuiteBudget.tiny(3))
    assert rep.ok, rep.render()


def test_case4_mutation_is_caught(monkeypatch):
    assert window_suite(4).ok
    monkeypatch.setitem(skeleton.CASE4A, (3, 3, 4, 1, 2), (1, 2, 4, 3, 2))
    res = window_suite(4)
    assert not res.ok
    assert "mismatch" in res.counterexample


def test_shrink_seq():
    # smallest Dyck word containing a 2
    small = shrink_seq((0, 1, 2, 1, 0, 1), lambda s: is_dyck(s) and 2 in s)
    assert small == (0, 1, 2)


def test_threads_env(monkeypatch):
    monkeypatch.setenv("DYCKLAB_THREADS", "3")
    assert resolve_threads() == 3
    assert resolve_threads(2) == 2
    monkeypatch.delenv("DYCKLAB_THREADS")
    assert resolve_threads() == 1
    assert ordered_map(abs, [-3, 1, -2], threads=2) == [3, 1, 2]
