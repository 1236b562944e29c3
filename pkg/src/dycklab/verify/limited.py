"""Position bounds and injection success for words with few nonzero entries.

Runs the full up/down maps with the position-bound assertions on every Dyck
sequence with 4 <= n <= 13 and at most seven nonzero entries that satisfies
the fixed-deficit and area hypotheses.
"""

from __future__ import annotations

from collections import Counter
from math import comb
from typing import Iterator, Optional

from ..seqcore import (
    area,
    defc,
    epsilon,
    find_extractable,
    inject,
    inject_right_to_left,
    is_dyck,
    is_full_skeleton,
    is_special_skeleton,
    omega,
    remove_at,
)
from ..skeleton import east3, east5, east7, is_far_apart, west3, west5, west7
from .report import CheckReport, load_golden, ordered_map

N_MIN, N_MAX = 4, 13
MAX_NONZERO = 7


def require(test: bool, message: str) -> None:
    if not test:
        raise AssertionError(message)


def dycks_with_few_nonzeros(n: int, max_nonzero: int = MAX_NONZERO) -> Iterator[tuple[int, ...]]:
    """Dyck sequences of length n with at most max_nonzero nonzero entries,
    in the same order as the unrestricted generator."""
    word = [0]

    def rec(budget: int) -> Iterator[tuple[int, ...]]:
        if len(word) == n:
            yield tuple(word)
            return
        for x in range(word[-1] + 2):
            if x and not budget:
                continue
            word.append(x)
            yield from rec(budget - (x != 0))
            word.pop()

    yield from rec(max_nonzero)


def ell_value(n: int, d: int) -> int:
    return (comb(n, 2) - d) // 2


def _extract(s):
    hit = find_extractable(s, check=False)
    require(hit is not None, f"extraction failed on {s}")
    return hit


def check_image(source, image, n: int, d: int, delta: int) -> None:
    require(is_dyck(image), f"non-Dyck image: {source} -> {image}")
    require(len(image) == n, f"length changed: {source} -> {image}")
    require(defc(image) == d, f"deficit changed: {source} -> {image}")
    require(area(image) == area(source) + delta, f"wrong area change: {source} -> {image}")


def checked_up(S, n: int, d: int, ell: int) -> tuple[str, int]:
    S = tuple(S)
    if S == omega(n):
        check_image(S, epsilon(n), n, d, 1)
        return "up special", 3
    if is_full_skeleton(S):
        image = inject(S[:-1], S[-1] + 1)
        check_image(S, image, n, d, 1)
        return "up skeleton", 3
    j1, e1 = _extract(S)
    C1 = remove_at(S, j1)
    sigma1 = C1 + (e1 - 1,)
    if east3(sigma1[-3:]) is not None:
        require(j1 < n - 2, f"up East3 position bound: {S}")
        image = inject_right_to_left(sigma1[:-2], (sigma1[-2] + 1, sigma1[-1] + 1))
        check_image(S, image, n, d, 1)
        return "up East3", 3
    j2, e2 = _extract(C1)
    C2 = remove_at(C1, j2)
    sigma2 = C2 + (e1 - 1, e2 - 1)
    E5 = east5(sigma2[-5:])
    if E5 is not None:
        require(j1 < n - 3 and j2 < len(C1) - 3, f"up East5 position bound: {S}")
        image = inject_right_to_left(sigma2[:-5] + E5[:2], tuple(x + 1 for x in E5[2:]))
        check_image(S, image, n, d, 1)
        return "up East5", 5
    j3, e3 = _extract(C2)
    C3 = remove_at(C2, j3)
    sigma3 = C3 + (e1 - 1, e2 - 1, e3 - 1)
    W7 = sigma3[-7:]
    require(not is_far_apart(W7), f"bad East7 window: {S}")
    require(j1 < n - 3 and j2 < len(C1) - 3 and j3 < len(C2) - 3, f"up East7 position bound: {S}")
    E7 = east7(W7)
    image = inject_right_to_left(sigma3[:-7] + E7[:-4], tuple(x + 1 for x in E7[-4:]))
    check_image(S, image, n, d, 1)
    return "up East7", 7


def checked_down(S, n: int, d: int, ell: int) -> tuple[str, int]:
    S = tuple(S)
    if S == epsilon(n):
        check_image(S, omega(n), n, d, -1)
        return "down special", 3
    j1, f1 = _extract(S)
    D1 = remove_at(S, j1)
    candidate = D1 + (f1 - 1,)
    if find_extractable(candidate, check=False) is None:
        check_image(S, candidate, n, d, -1)
        return "down skeleton", 3
    j2, f2 = _extract(D1)
    D2 = remove_at(D1, j2)
    tau1 = D2 + (f1 - 1, f2 - 1)
    if west3(tau1[-3:]) is not None:
        require(j1 < n - 1 and j2 < len(D1) - 1, f"down West3 position bound: {S}")
        image = inject(tau1[:-1], tau1[-1] + 1)
        check_image(S, image, n, d, -1)
        return "down West3", 3
    j3, f3 = _extract(D2)
    D3 = remove_at(D2, j3)
    tau2 = D3 + (f1 - 1, f2 - 1, f3 - 1)
    W5 = west5(tau2[-5:])
    if W5 is not None:
        require(j1 < n - 2 and j2 < len(D1) - 2 and j3 < len(D2) - 2,
                f"down West5 position bound: {S}")
        image = inject_right_to_left(tau2[:-5] + W5[:3], tuple(x + 1 for x in W5[3:]))
        check_image(S, image, n, d, -1)
        return "down West5", 5
    j4, f4 = _extract(D3)
    D4 = remove_at(D3, j4)
    tau3 = D4 + (f1 - 1, f2 - 1, f3 - 1, f4 - 1)
    W7 = tau3[-7:]
    require(not is_far_apart(W7), f"bad West7 window: {S}")
    require(j1 < n - 2 and j2 < len(D1) - 2 and j3 < len(D2) - 2 and j4 < len(D3) - 2,
            f"down West7 position bound: {S}")
    E7 = west7(W7)
    image = inject_right_to_left(tau3[:-7] + E7[:-3], tuple(x + 1 for x in E7[-3:]))
    check_image(S, image, n, d, -1)
    return "down West7", 7


def _run_length(n: int) -> tuple[int, Counter, Counter, Counter, list]:
    generated = 0
    eligible: Counter = Counter()
    branches: Counter = Counter()
    levels: Counter = Counter()
    failures = []
    for S in dycks_with_few_nonzeros(n):
        generated += 1
        d = defc(S)
        if d > 2 * n - 8:
            continue
        ell = ell_value(n, d)
        try:
            if area(S) < ell:
                branch, level = checked_up(S, n, d, ell)
                eligible["up"] += 1
                branches[("up", branch)] += 1
                levels[("up", level)] += 1
            if area(S) <= ell and not is_special_skeleton(S):
                branch, level = checked_down(S, n, d, ell)
                eligible["down"] += 1
                branches[("down", branch)] += 1
                levels[("down", level)] += 1
        except Exception as exc:  # the listing records any failure
            failures.append((n, S, f"{type(exc).__name__}: {exc}"))
    return generated, eligible, branches, levels, failures


def limited_nonzero_check(threads: Optional[int] = None, n_max: int = N_MAX) -> CheckReport:
    report = CheckReport("limited")
    results = ordered_map(_run_length, list(range(N_MIN, n_max + 1)), threads)
    branches: Counter = Counter()
    levels: Counter = Counter()
    failures = []
    up_total = down_total = 0
    for n, (generated, eligible, br, lv, fl) in zip(range(N_MIN, n_max + 1), results):
        report.counters[f"generated n={n}"] = generated
        report.counters[f"eligible n={n} up"] = eligible["up"]
        report.counters[f"eligible n={n} down"] = eligible["down"]
        up_total += eligible["up"]
        down_total += eligible["down"]
        branches.update(br)
        levels.update(lv)
        failures.extend(fl)
    report.counters["eligible up calls"] = up_total
    report.counters["eligible down calls"] = down_total
    for (side, branch), v in sorted(branches.items()):
        report.counters[f"branch {branch}"] = v
    for (side, level), v in sorted(levels.items()):
        report.counters[f"level {side} {level}"] = v
    report.counters["position-bound or image failures"] = len(failures)
    if failures:
        report.fail(f"first failure: {failures[0]}")
    golden = load_golden("limited")
    if n_max == N_MAX:
        report.compare(golden)
    else:
        report.compare(golden, [f"generated n={n}" for n in range(N_MIN, n_max + 1)]
                       + ["position-bound or image failures"])
    return report
