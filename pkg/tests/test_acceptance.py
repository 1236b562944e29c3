"""Acceptance criteria 1-8, each printing one PASS/FAIL line."""

from math import comb
import time

from dycklab import (
    brute_force_catalan,
    down,
    enumerate_dyck,
    low_deficit_catalan,
    make_strings,
    partition_formula,
    two_column_catalan,
    up,
)
from dycklab.seqcore import QtPoly, area, defc, deficit_pairs, dinv, is_full_skeleton
from dycklab.verify import (
    east7_window_check,
    limited_nonzero_check,
    prefix_form_check,
    residual_check,
)
from dycklab.verify.suites import (
    guaranteed_down,
    guaranteed_up,
    phi_suite,
    rowsert_suite,
    schur_suite,
    tableau_suite,
    updown_suite,
    window_suite,
)

from test_skeleton import _marks, load_string_table


def _timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


def test_criterion_1_catalan_equalities(verdict):
    bad, secs = _timed(lambda: [n for n in range(1, 10) if brute_force_catalan(n) != two_column_catalan(n)])
    ok = not bad and secs < 120
    verdict(1, "brute force = two-column formula, n=1..9", ok, f"{secs:.1f}s, mismatches {bad}")
    assert ok


def test_criterion_2_skeleton_formula(verdict):
    def run():
        return [n for n in range(4, 11)
                if low_deficit_catalan(n) != brute_force_catalan(n).restrict_degree(comb(n, 2) - (2 * n - 8))]
    bad, secs = _timed(run)
    ok = not bad and secs < 120
    verdict(2, "skeleton formula = degree-restricted brute force, n=4..10", ok, f"{secs:.1f}s, mismatches {bad}")
    assert ok


def test_criterion_3_partition_formula(verdict):
    bad = [n for n in range(1, 11) if partition_formula(n) != brute_force_catalan(n, max_defc=n - 3)]
    # (q^7-t^7)/(q-t) + (q^5 t - q t^5)/(q-t)
    n4 = QtPoly.geometric(0, 6, 6) + QtPoly.geometric(1, 4, 5)
    ok = not bad and partition_formula(4) == n4
    verdict(3, "partition formula = deficit <= n-3 brute force, n=1..10, n=4 closed form", ok, f"mismatches {bad}")
    assert ok


def test_criterion_4_golden_counts(verdict):
    reports = [residual_check(), limited_nonzero_check(threads=2), prefix_form_check(threads=2),
               east7_window_check(fast=False, threads=4)]
    failed = [r.name for r in reports if not r.ok]
    e7 = reports[-1].counters
    ok = (not failed and e7["|EW|"] == 7194 and e7["min id_mid"] == 10
          and reports[1].counters["eligible up calls"] == 11879)
    verdict(4, "golden counts (residual, limited, prefix, east7 full)", ok,
            "all bit-exact" if ok else f"failed: {failed}")
    for r in reports:
        assert r.ok, r.render()
    assert ok


def test_criterion_5_string_decomposition(verdict):
    recs = make_strings(9, 10)
    counts = (len(recs), sum(len(r.chain) for r in recs))
    marks = _marks(recs)
    got = sorted((ci, area(s), s, marks[(ci, s)]) for ci, r in enumerate(recs, 1) for s in r.chain)
    want = sorted((i, a, s, m) for n, d, i, a, s, m in load_string_table() if (n, d) == (9, 10))
    ok = counts == (31, 274) and got == want
    verdict(5, "strings (9,10): 31 strings / 274 sequences, table rows and level marks", ok, f"{counts}")
    assert ok


def test_criterion_6_bijection_round_trips(verdict):
    results = [rowsert_suite(6, 4), tableau_suite(6, 5), phi_suite(8), window_suite(6), updown_suite(10)]
    slow = [r.name for r in results if r.seconds > 300]
    bad = [f"{r.name}: {r.counterexample}" for r in results if not r.ok]
    ok = not bad and not slow
    detail = ", ".join(f"{r.name} {r.checked}" for r in results)
    verdict(6, "rowsert, tableau, phi chain, east/west, up/down round trips", ok, detail if ok else "; ".join(bad))
    assert ok, bad


def test_criterion_7_schur_positivity(verdict):
    res = schur_suite(5, 4)
    ok = res.ok and res.seconds < 300
    verdict(7, "Schur expansions (both modes) and descent complement, |S|<=5 in [0,4]", ok,
            f"{res.checked} cases, {res.seconds:.1f}s" if ok else str(res.counterexample))
    assert ok


def test_criterion_8_statistic_laws(verdict):
    problems = []
    counted = 0
    for n in range(1, 11):
        for s in enumerate_dyck(n):
            counted += 1
            if deficit_pairs(s).value != defc(s):
                problems.append(("pairs", s))
            if is_full_skeleton(s) and area(s) > defc(s):
                problems.append(("area", s))
            for fn, domain, sign in ((up, guaranteed_up, 1), (down, guaranteed_down, -1)):
                if domain(s):
                    img, _ = fn(s)
                    if (area(img) - area(s), dinv(img) - dinv(s)) != (sign, -sign):
                        problems.append(("delta", s))
        if not brute_force_catalan(n).is_symmetric():
            problems.append(("symmetry", n))
    ok = not problems
    verdict(8, "pair-count identity, area <= defc on full skeletons, up/down deltas, q,t symmetry, n<=10",
            ok, f"{counted} sequences" if ok else str(problems[:3]))
    assert ok
