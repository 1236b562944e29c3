"""Excluded prefix forms 0,1,...,e,P,Q and 0,0,1,...,e,P,Q for 9 <= n <= 16.

Every word in the finite suffix domains must meet the deficit contradiction
(defc > 2n-8) or the area contradiction.
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from math import comb
from typing import Iterator, Optional

from ..seqcore import area, defc
from .report import CheckReport, load_golden, ordered_map

N_MIN, N_MAX = 9, 16
CLAIMS = (1, 2)
SUBCASES = ("pq_lt_4", "pq_eq_4")


def bounded_product(bounds) -> Iterator[tuple[int, ...]]:
    return product(*(range(bound + 1) for bound in bounds))


def claim_words(n: int, claim: int, subcase: str) -> Iterator[tuple[int, ...]]:
    if claim == 1 and subcase == "pq_lt_4":
        prefix = tuple(range(0, n - 3))
        bounds = (n - 3, n - 2, n - 1)
    elif claim == 1 and subcase == "pq_eq_4":
        prefix = tuple(range(0, n - 4))
        bounds = (n - 4, n - 3, n - 2, n - 1)
    elif claim == 2 and subcase == "pq_lt_4":
        prefix = (0,) + tuple(range(0, n - 4))
        bounds = (n - 4, n - 3, n - 2)
    elif claim == 2 and subcase == "pq_eq_4":
        prefix = (0,) + tuple(range(0, n - 5))
        bounds = (n - 5, n - 4, n - 3, n - 2)
    else:
        raise ValueError("unknown claim/subcase")
    for stars in bounded_product(bounds):
        yield prefix + stars


def area_adjustment(subcase: str) -> int:
    # p+q=4 boundary: q+1 for up at (2,2), q for down at (1,3); both are 3
    return 3 if subcase == "pq_eq_4" else 0


def _run_length(n: int) -> tuple[Counter, list]:
    counts: Counter = Counter()
    failures = []
    big_m = comb(n, 2)
    for claim in CLAIMS:
        for subcase in SUBCASES:
            adjustment = area_adjustment(subcase)
            for word in claim_words(n, claim, subcase):
                counts[(n, claim, subcase)] += 1
                D = defc(word)
                A = area(word)
                deficit_contradiction = D > 2 * n - 8
                area_contradiction = 2 * A > big_m - D - 2 * adjustment
                if not (deficit_contradiction or area_contradiction):
                    failures.append((n, claim, subcase, word, D, A))
    return counts, failures


def prefix_form_check(threads: Optional[int] = None) -> CheckReport:
    report = CheckReport("prefix")
    counts: Counter = Counter()
    failures = []
    for c, f in ordered_map(_run_length, list(range(N_MIN, N_MAX + 1)), threads):
        counts.update(c)
        failures.extend(f)
    for (n, claim, subcase), v in sorted(counts.items()):
        report.counters[f"n={n} claim={claim} {subcase}"] = v
    report.counters["failures"] = len(failures)
    if failures:
        report.fail(f"first failure: {failures[0]}")
    golden = load_golden("prefix")
    extra = sorted(set(report.counters) - set(golden))
    if extra:
        report.fail(f"word counts do not match: unexpected labels {extra}")
    report.compare(golden)
    return report
