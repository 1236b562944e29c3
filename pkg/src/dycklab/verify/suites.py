"""Cross-module round-trip and property batteries.

Each suite is exhaustive over a configurable box and returns a SuiteResult
carrying the number of cases checked and a minimized counterexample on
failure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields
from itertools import product
from math import comb
from typing import Callable, Iterator, Optional, Sequence

from ..bijections import phi, phi1, phi2, phi3, phi_image_count, phi_inverse, triple_stats, two_column_catalan
from ..insertion import DualFactorization, extract_factorization, insert_factorization, rowsert, worsert
from ..seqcore import (
    DomainError,
    IntSeq,
    area,
    brute_force_catalan,
    defc,
    deficit_pairs,
    di,
    dinv,
    enumerate_dyck,
    format_seq,
    is_dual,
    is_dyck,
    is_full_skeleton,
    is_special_skeleton,
)
from ..skeleton import (
    StageError,
    east,
    in_l_form,
    in_r_form,
    l_form_windows,
    lower_half_limit,
    low_deficit_catalan,
    make_strings,
    partition_formula,
    premature_branch,
    r_form_windows,
    try_down,
    try_up,
    west,
)
from ..symfun import AFFINE, DUAL, fundamental_complement_check, verify_schur_expansion
from .report import CheckReport


@dataclass
class SuiteBudget:
    rowsert_max_value: int = 6
    rowsert_max_len: int = 4
    tableau_max_size: int = 6
    tableau_max_value: int = 5
    phi_max_n: int = 8
    window_top: int = 6
    updown_max_n: int = 10
    strings_max_n: int = 10
    schur_max_size: int = 5
    schur_max_value: int = 4
    catalan_max_n: int = 9
    skeleton_max_n: int = 10
    partition_max_n: int = 10
    laws_max_n: int = 10

    @classmethod
    def tiny(cls, n: int = 3) -> "SuiteBudget":
        """Everything capped at size n."""
        return cls(**{f.name: min(getattr(cls(), f.name), n) for f in fields(cls)})


@dataclass
class SuiteResult:
    name: str
    ok: bool
    checked: int
    seconds: float = 0.0
    counterexample: Optional[str] = None
    notes: list[str] = field(default_factory=list)


def shrink_seq(seq: Sequence[int], still_fails: Callable[[IntSeq], bool], limit: int = 200) -> IntSeq:
    """Greedy shrink: delete entries or lower values while the failure persists."""
    cur = tuple(seq)
    for _ in range(limit):
        progress = False
        for cand in _shrink_candidates(cur):
            try:
                fails = still_fails(cand)
            except Exception:
                fails = False
            if fails:
                cur = cand
                progress = True
                break
        if not progress:
            break
    return cur


def _shrink_candidates(s: IntSeq) -> Iterator[IntSeq]:
    for i in range(len(s)):
        yield s[:i] + s[i + 1:]
    for i in range(len(s)):
        if s[i] > 0:
            yield s[:i] + (s[i] - 1,) + s[i + 1:]


class _Fail(Exception):
    pass


def _run(name: str, body: Callable[[], int]) -> SuiteResult:
    t0 = time.perf_counter()
    try:
        checked = body()
    except _Fail as exc:
        return SuiteResult(name, False, 0, time.perf_counter() - t0, str(exc))
    return SuiteResult(name, True, checked, time.perf_counter() - t0)


def dual_words(max_value: int, max_len: int) -> list[IntSeq]:
    out = []
    for length in range(max_len + 1):
        out.extend(w for w in product(range(max_value + 1), repeat=length) if is_dual(w))
    return out


# ---------------------------------------------------------------------------
# suites

def rowsert_suite(max_value: int = 6, max_len: int = 4) -> SuiteResult:
    def body() -> int:
        words = dual_words(max_value, max_len)
        checked = 0
        for r0 in words:
            for f0 in words:
                e, r1, tr = rowsert(r0, f0, trace=True)
                if tr.has_case0:
                    continue
                checked += 1
                if sorted(e + r1) != sorted(r0 + f0) or not is_dual(r1) or not is_dual(e):
                    raise _Fail(f"rowsert({format_seq(r0)}, {format_seq(f0)}) broke the multiset or duality")
                back_r, back_f, _ = worsert(e, r1)
                if (back_r, back_f) != (r0, f0):
                    raise _Fail(f"worsert(rowsert({format_seq(r0)}, {format_seq(f0)})) = "
                                f"({format_seq(back_r)}, {format_seq(back_f)})")
                if len(r1) != len(r0) or len(e) != len(f0):
                    raise _Fail(f"no-Case-0 rowsert changed lengths on {format_seq(r0)}, {format_seq(f0)}")
        return checked
    return _run("rowsert/worsert", body)


def dual_factorizations(max_size: int, max_value: int) -> Iterator[DualFactorization]:
    """All factorizations into nonempty dual factors of words with entries in
    [0, max_value] and length <= max_size."""
    def cuts(w: IntSeq) -> Iterator[tuple[IntSeq, ...]]:
        if not w:
            yield ()
            return
        for k in range(1, len(w) + 1):
            head = w[:k]
            if not is_dual(head):
                break
            for rest in cuts(w[k:]):
                yield (head,) + rest

    for length in range(max_size + 1):
        for w in product(range(max_value + 1), repeat=length):
            for fs in cuts(w):
                yield DualFactorization(fs)


def tableau_suite(max_size: int = 6, max_value: int = 5) -> SuiteResult:
    def body() -> int:
        seen: dict = {}
        checked = 0
        for fac in dual_factorizations(max_size, max_value):
            p, q = insert_factorization(fac)
            checked += 1
            key = (p, q)
            if key in seen:
                raise _Fail(f"insertion not injective: {fac} and {seen[key]} give the same pair")
            seen[key] = fac
            if sorted(p.reading_word()) != sorted(fac.word()):
                raise _Fail(f"insertion changed the multiset for {fac}")
            if di(p.reading_word()) != fac.di_value:
                raise _Fail(f"insertion changed di for {fac}")
            if q.shape != p.shape or q.content() != {i: len(x) for i, x in enumerate(fac.factors) if x}:
                raise _Fail(f"recording tableau has the wrong shape or content for {fac}")
            back = extract_factorization(p, q)
            if back != fac:
                raise _Fail(f"extract(insert({fac})) = {back}")
        # empty factors only shift labels
        gap = DualFactorization(((0, 2), (), (1,)))
        if extract_factorization(*insert_factorization(gap)) != gap:
            raise _Fail(f"empty middle factor lost in {gap}")
        return checked
    return _run("tableau/factorization", body)


def phi_suite(max_n: int = 8) -> SuiteResult:
    def body() -> int:
        checked = 0
        for n in range(1, max_n + 1):
            images = set()
            for d in enumerate_dyck(n):
                stats = (area(d), dinv(d))
                t1 = phi1(d)
                t2 = phi2(t1)
                t3 = phi3(t2)
                t4 = phi(d)
                for stage, t in (("phi1", t1), ("phi2", t2), ("phi3", t3), ("phi4", t4)):
                    if triple_stats(t) != stats:
                        raise _Fail(f"{stage} changed (area, dinv) on {format_seq(d)}")
                if phi_inverse(t4) != d:
                    raise _Fail(f"phi_inverse(phi({format_seq(d)})) != input")
                images.add(t4)
                checked += 1
            if len(images) != phi_image_count(n):
                raise _Fail(f"phi is not onto the Type 4 set for n={n}")
        return checked
    return _run("phi chain", body)


def window_suite(top: int = 6) -> SuiteResult:
    def body() -> int:
        checked = 0
        for direction, windows, move, inverse, out_form in (
            ("east", l_form_windows(top), east, west, in_r_form),
            ("west", r_form_windows(top), west, east, in_l_form),
        ):
            for w in windows:
                try:
                    mv = move(w)
                    o = mv.output
                    ok = (sorted(o) == sorted(w) and di(o) == di(w) and out_form(o)
                          and o[0] == w[0] and o[-1] == w[-1] and inverse(o).output == w)
                except DomainError as exc:
                    raise _Fail(f"{direction} failed on {format_seq(w)}: {exc}") from None
                if not ok:
                    raise _Fail(f"{direction}/inverse mismatch on {format_seq(w)} -> {format_seq(o)}")
                hit = premature_branch(mv, direction)
                if hit:
                    raise _Fail(f"level-{mv.level} {direction} output {format_seq(o)} fires a lower level-{hit} test")
                checked += 1
        return checked
    return _run("east/west windows", body)


def guaranteed_up(s: IntSeq) -> bool:
    n = len(s)
    d = defc(s)
    return n >= 4 and d <= 2 * n - 8 and area(s) <= lower_half_limit(n, d) - 1


def guaranteed_down(s: IntSeq) -> bool:
    n = len(s)
    d = defc(s)
    return (n >= 4 and d <= 2 * n - 8 and area(s) <= lower_half_limit(n, d)
            and not is_special_skeleton(s))


def _updown_failure(s: IntSeq, direction: str) -> Optional[str]:
    first, back = (try_up, try_down) if direction == "up" else (try_down, try_up)
    sign = 1 if direction == "up" else -1
    res = first(s)
    if isinstance(res, StageError):
        return str(res)
    img, _ = res
    if not is_dyck(img) or len(img) != len(s):
        return f"{direction}({format_seq(s)}) = {format_seq(img)} is not a Dyck sequence of the same length"
    if (area(img) - area(s), dinv(img) - dinv(s)) != (sign, -sign):
        return f"{direction}({format_seq(s)}) has the wrong statistic deltas"
    res2 = back(img)
    if isinstance(res2, StageError) or res2[0] != s:
        return f"{direction} is not inverted on {format_seq(s)}"
    return None


def updown_suite(max_n: int = 10) -> SuiteResult:
    def body() -> int:
        checked = 0
        for n in range(4, max_n + 1):
            for s in enumerate_dyck(n):
                for direction, domain in (("up", guaranteed_up), ("down", guaranteed_down)):
                    if not domain(s):
                        continue
                    msg = _updown_failure(s, direction)
                    if msg:
                        small = shrink_seq(s, lambda c: is_dyck(c) and domain(c)
                                           and _updown_failure(c, direction) is not None)
                        raise _Fail(f"{msg}; minimized: {format_seq(small)}")
                    checked += 1
        return checked
    return _run("up/down", body)


def strings_suite(max_n: int = 10) -> SuiteResult:
    def body() -> int:
        checked = 0
        for n in range(4, max_n + 1):
            for d in range(0, 2 * n - 7):
                try:
                    recs = make_strings(n, d)
                except AssertionError as exc:
                    raise _Fail(f"strings ({n},{d}): {exc}") from None
                checked += sum(len(r.chain) for r in recs)
        return checked
    return _run("string decomposition", body)


def schur_suite(max_size: int = 5, max_value: int = 4) -> SuiteResult:
    def body() -> int:
        checked = 0
        for size in range(max_size + 1):
            for ms in _multisets(size, max_value):
                big = comb(size, 2)
                for d in range(big + 1):
                    for mode in (AFFINE, DUAL):
                        rep = verify_schur_expansion(ms, d, max(size, 1), mode)
                        if not rep.ok:
                            raise _Fail(f"Schur expansion fails for {ms}, d={d}, {mode}")
                        checked += 1
                    if not fundamental_complement_check(ms, d).ok:
                        raise _Fail(f"descent complement fails for {ms}, d={d}")
                    checked += 1
        return checked
    return _run("schur expansions", body)


def _multisets(size: int, max_value: int) -> Iterator[tuple[int, ...]]:
    def rec(lo: int, left: int) -> Iterator[tuple[int, ...]]:
        if not left:
            yield ()
            return
        for v in range(lo, max_value + 1):
            for rest in rec(v, left - 1):
                yield (v,) + rest
    yield from rec(0, size)


def catalan_suite(budget: "SuiteBudget") -> SuiteResult:
    def body() -> int:
        checked = 0
        for n in range(1, budget.catalan_max_n + 1):
            if brute_force_catalan(n) != two_column_catalan(n):
                raise _Fail(f"two-column formula differs from brute force at n={n}")
            checked += 1
        for n in range(4, budget.skeleton_max_n + 1):
            big = comb(n, 2)
            if low_deficit_catalan(n) != brute_force_catalan(n).restrict_degree(big - (2 * n - 8)):
                raise _Fail(f"skeleton formula differs at n={n}")
            checked += 1
        for n in range(1, budget.partition_max_n + 1):
            big = comb(n, 2)
            if partition_formula(n) != brute_force_catalan(n).restrict_degree(big - (n - 3)):
                raise _Fail(f"partition formula differs at n={n}")
            checked += 1
        return checked
    return _run("catalan formulas", body)


def laws_suite(max_n: int = 10) -> SuiteResult:
    def body() -> int:
        checked = 0
        for n in range(1, max_n + 1):
            for s in enumerate_dyck(n):
                if deficit_pairs(s).value != defc(s):
                    raise _Fail(f"pair count differs from defc on {format_seq(s)}")
                if is_full_skeleton(s) and area(s) > defc(s):
                    raise _Fail(f"full skeleton with area > defc: {format_seq(s)}")
                checked += 1
            if not brute_force_catalan(n).is_symmetric():
                raise _Fail(f"C_{n}(q,t) is not q,t-symmetric")
        return checked
    return _run("statistic laws", body)


def roundtrip_suites(budget: Optional[SuiteBudget] = None) -> CheckReport:
    budget = budget or SuiteBudget()
    results = [
        rowsert_suite(budget.rowsert_max_value, budget.rowsert_max_len),
        tableau_suite(budget.tableau_max_size, budget.tableau_max_value),
        phi_suite(budget.phi_max_n),
        window_suite(budget.window_top),
        updown_suite(budget.updown_max_n),
        strings_suite(budget.strings_max_n),
        schur_suite(budget.schur_max_size, budget.schur_max_value),
        catalan_suite(budget),
        laws_suite(budget.laws_max_n),
    ]
    report = CheckReport("suites")
    for r in results:
        report.counters[f"{r.name} checked"] = r.checked
        report.lines.append(f"{r.name}: {'PASS' if r.ok else 'FAIL'} ({r.checked} cases, {r.seconds:.1f}s)")
        if not r.ok:
            report.fail(f"{r.name}: {r.counterexample}")
    return report
