"""Seven-window checker for the East7/West7 stage.

Regenerates the far-apart East patterns that survive the three- and
five-window tests (EW) and their reversals (WW), rebuilds both threshold
tables, checks id_mid >= 10 over EW and WW, and runs the gap-expanded finite
search over (child, n, m) triples.
"""

from __future__ import annotations

import math
from functools import lru_cache
from math import comb
from typing import Optional

from ..seqcore import distinct_permutations
from ..skeleton import is_far_apart
from .report import CheckReport, load_golden, ordered_map

Table = dict[int, tuple[Optional[int], Optional[int]]]

CASE1_IDS = range(10, 22)
CASE2_IDS = range(0, 22)
FAST_STRIDE = 16


def east3_fails(p: tuple[int, ...]) -> bool:
    return p[3] > p[4] + 1


def east5_fails(p: tuple[int, ...]) -> bool:
    """Neither Case 2a nor Case 2b of East5 applies."""
    x_m1, x_0, x_1, x_2 = p[2], p[3], p[4], p[5]
    y_0 = x_m1 if x_m1 > x_0 + 1 else x_0
    case2a = (x_m1 > x_1 + 1) and (y_0 <= x_2 + 1)
    case2b = (x_m1 <= x_1 + 1) and (x_m1 <= x_2 + 1)
    return not case2a and not case2b


def is_valid_l_element(p: tuple[int, ...]) -> bool:
    return all(p[i + 1] <= p[i] + 1 for i in range(3)) and all(p[i] <= p[i + 1] + 1 for i in range(4, 6))


@lru_cache(maxsize=1)
def get_ew() -> frozenset[tuple[int, ...]]:
    """Normalized East patterns reaching the seven-window stage."""
    base_sequences: list[tuple[int, ...]] = []

    def gen_base(seq: tuple[int, ...]) -> None:
        if len(seq) == 7:
            base_sequences.append(seq)
            return
        for step in (0, 1, 2):
            gen_base(seq + (seq[-1] + step,))

    gen_base((0,))
    valid = set()
    for base in base_sequences:
        for perm in distinct_permutations(base):
            if (is_valid_l_element(perm) and east3_fails(perm) and east5_fails(perm)
                    and is_far_apart(perm)):
                valid.add(perm)
    return frozenset(valid)


def get_ww(ew) -> frozenset[tuple[int, ...]]:
    return frozenset(tuple(reversed(w)) for w in ew)


def window_stats(window: tuple[int, ...], m: int, suffix_len: int) -> tuple[int, int]:
    """Corrected local id and q0 for a window and prefix maximum m."""
    seen: dict[int, int] = {}
    win_first = []
    for i, value in enumerate(window):
        if value not in seen:
            seen[value] = i
            win_first.append(True)
        else:
            win_first.append(False)
    is_initial = [win_first[i] and window[i] > m for i in range(len(window))]

    pair_count = 0
    for i in range(len(window)):
        for j in range(i + 1, len(window)):
            vi, vj = window[i], window[j]
            if vi > vj + 1:
                pair_count += 1
            elif vi < vj and not is_initial[i]:
                pair_count += 1

    suffix_correction = 0
    for j in range(len(window) - suffix_len, len(window)):
        for value in range(m + 1, window[j]):
            if value not in window[:j]:
                suffix_correction += 1

    q0 = sum(max(0, (m - 1) - value) for i, value in enumerate(window) if not is_initial[i])
    return pair_count - suffix_correction, q0


def compute_id_mid(window: tuple[int, ...], suffix_len: int) -> tuple[int, int]:
    mid_value = sorted(window, reverse=True)[3]
    m = max(window[0] - 1, window[6] - 1, mid_value)
    return window_stats(window, m, suffix_len)[0], m


def compute_id_base(window: tuple[int, ...], suffix_len: int) -> int:
    return window_stats(window, max(window[0] - 1, window[6] - 1), suffix_len)[0]


def compute_k_from_n(n_value: int) -> int:
    """Largest K with C(K,2) <= C(n,2)/2."""
    half = comb(n_value, 2) // 2
    test = 0
    while comb(test + 1, 2) <= half:
        test += 1
    return test


def compute_nk_case1(id_val: int) -> tuple[Optional[int], Optional[int]]:
    """Case 1 thresholds N(id), K(id), with the -4 area penalty."""
    max_n = None
    for n_value in range(8, 300):
        m0 = math.ceil((n_value + id_val - 16) / 3)
        q_star = 3 * m0 - (n_value + id_val - 16)
        lhs_twice = 2 * (comb(m0 + 1, 2) + (m0 - 1) * (n_value - m0 - 1) - q_star)
        rhs_twice = comb(n_value, 2) - id_val - q_star - 3 * (n_value - m0 - 8) - 8
        if lhs_twice <= rhs_twice:
            max_n = n_value
    if max_n is None:
        return None, None
    return max_n, compute_k_from_n(max_n)


def compute_nk_case2(id_val: int) -> tuple[Optional[int], Optional[int]]:
    """Case 2 thresholds N(id), K(id), with the -4 area penalty."""
    max_n = None
    for n_value in range(8, 300):
        chi_numer = 2 * n_value + id_val - 24
        m0 = max(0, math.ceil(chi_numer / 4))
        q_star = max(0, min(4 * m0 - chi_numer, 3))
        lhs_twice = 2 * (comb(m0 + 1, 2) + (m0 - 1) * (n_value - m0 - 1) - q_star)
        rhs_twice = comb(n_value, 2) - id_val - q_star - 4 * (n_value - m0 - 8) - 8
        if lhs_twice <= rhs_twice:
            max_n = n_value
    if max_n is None:
        return None, None
    return max_n, compute_k_from_n(max_n)


def build_threshold_table(case_num: int) -> Table:
    if case_num == 1:
        return {i: compute_nk_case1(i) for i in CASE1_IDS}
    return {i: compute_nk_case2(i) for i in CASE2_IDS}


def get_groups(window: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Sorted values split into maximal blocks separated by gaps >= 2."""
    sorted_vals = sorted(window)
    groups: list[tuple[int, ...]] = []
    current = [sorted_vals[0]]
    for i in range(1, len(sorted_vals)):
        if sorted_vals[i] - sorted_vals[i - 1] <= 1:
            current.append(sorted_vals[i])
        else:
            groups.append(tuple(current))
            current = [sorted_vals[i]]
    groups.append(tuple(current))
    return groups


@lru_cache(maxsize=None)
def get_children_absolute(window: tuple[int, ...], k_limit: int) -> tuple[tuple[int, ...], ...]:
    """Gap-expanded and translated children with max value <= k_limit."""
    extra = k_limit - max(window)
    if extra < 0:
        return ()
    groups = get_groups(window)
    num_gaps = len(groups) + 1
    children = set()

    def gen_compositions(remaining: int, num_parts: int, current: tuple[int, ...] = ()):
        if num_parts == 1:
            yield current + (remaining,)
            return
        for part in range(remaining + 1):
            yield from gen_compositions(remaining - part, num_parts - 1, current + (part,))

    for composition in gen_compositions(extra, num_gaps):
        cumulative_shift = 0
        group_shifts = []
        for gap_index in range(len(groups)):
            cumulative_shift += composition[gap_index]
            group_shifts.append(cumulative_shift)
        value_map = {}
        for group_index, group in enumerate(groups):
            for value in group:
                value_map.setdefault(value, value + group_shifts[group_index])
        children.add(tuple(value_map[value] for value in window))
    return tuple(sorted(children))


def gen_partitions(total: int, max_parts: int, max_val: int):
    """Partitions of exactly total with <= max_parts parts in [1, max_val]."""
    if total == 0:
        yield ()
        return
    if max_parts == 0 or max_val <= 0:
        return
    for first in range(min(total, max_val), 0, -1):
        for rest in gen_partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


def gen_partitions_upto(max_total: int, max_parts: int, max_val: int):
    yield ()
    if max_total <= 0 or max_parts <= 0 or max_val <= 0:
        return
    for total in range(1, max_total + 1):
        yield from gen_partitions(total, max_parts, max_val)


@lru_cache(maxsize=None)
def cached_partitions_upto(max_total: int, max_parts: int, max_val: int) -> tuple[tuple[int, ...], ...]:
    return tuple(gen_partitions_upto(max_total, max_parts, max_val))


def compute_defc_and_area(seq: list[int]) -> tuple[int, int]:
    dinv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j] or seq[i] == seq[j] + 1:
                dinv += 1
    area = sum(seq)
    return comb(len(seq), 2) - area - dinv, area


@lru_cache(maxsize=None)
def m_max_for_n(n_value: int) -> int:
    """Largest m with C(m,2) <= floor(C(n,2)/2)."""
    half = comb(n_value, 2) // 2
    value = 0
    while comb(value + 1, 2) <= half:
        value += 1
    return value


@lru_cache(maxsize=None)
def first_n_with_m_allowed(m_value: int) -> int:
    n_value = 8
    while m_value > m_max_for_n(n_value):
        n_value += 1
    return n_value


def deficit_n_upper(coeff: int, m_value: int, int_defc: int, q0: int, n_limit: int) -> int:
    """Largest n surviving the deficit lower bound with q' = 0."""
    numerator = coeff * m_value + 8 * coeff - 8 - int_defc - q0
    if coeff == 2:
        return n_limit
    return min(n_limit, numerator // (coeff - 2))


def check_window_single(*, case_label: str, side_label: str, base_window, child, id_val: int,
                        n_value: int, m_value: int, g_value: int, coeff: int,
                        int_defc_q0: tuple[int, int], child_area: int) -> Optional[dict]:
    """First counterexample for one (child, n, m) triple, if any."""
    target_defc = 2 * n_value - 8
    total_free = n_value - m_value - 8
    if total_free < 0:
        return None
    int_defc, q0 = int_defc_q0
    q_prime_max = target_defc - int_defc - q0 - coeff * total_free
    if q_prime_max < 0:
        return None

    max_part = max(0, m_value - 1)
    prefix = list(range(m_value + 1))
    prefix_area = comb(m_value + 1, 2)
    window_list = list(child)
    m_choose = comb(n_value, 2)

    for repeat_count in range(total_free + 1):
        if m_value == 0 and repeat_count < total_free:
            continue
        middle_len = total_free - repeat_count
        base_area = prefix_area + repeat_count * m_value + child_area
        max_partition_sum = min(q_prime_max, middle_len * max_part)
        min_possible_area = base_area + middle_len * (m_value - 1) - max_partition_sum
        if 2 * min_possible_area > m_choose - 8:
            continue
        for partition in cached_partitions_upto(q_prime_max, middle_len, max_part):
            extended = list(partition) + [0] * (middle_len - len(partition))
            middle = [m_value - 1 - deficit for deficit in reversed(extended)]
            seq = prefix + [m_value] * repeat_count + middle + window_list
            defc, area = compute_defc_and_area(seq)
            if defc > target_defc:
                continue
            if 2 * area > m_choose - defc - 8:
                continue
            return {
                "case": case_label, "side": side_label, "base_window": base_window,
                "child": child, "id": id_val, "n": n_value, "m": m_value, "g": g_value,
                "coeff": coeff, "repeat_count": repeat_count, "middle_len": middle_len,
                "partition": partition, "seq": seq, "defc": defc, "area": area,
                "target_defc": target_defc,
            }
    return None


def run_case(args: tuple) -> tuple[list[dict], dict[str, int]]:
    """One finite case; args = (case_num, side_label, windows, table, stride)."""
    case_num, side_label, windows, table, stride = args
    case_label = f"Case {case_num}"
    problems: list[dict] = []
    suffix_len = 3 if side_label == "East" else 4
    windows_checked = children_generated = active_children = triples_checked = 0

    for index, base_window in enumerate(sorted(windows)):
        if index % stride:
            continue
        windows_checked += 1
        if case_num == 1:
            id_val, _ = compute_id_mid(base_window, suffix_len)
        else:
            id_val = compute_id_base(base_window, suffix_len)
        if id_val not in table:
            raise ValueError(f"Unexpected id in {case_label} {side_label}: id={id_val}, window={base_window}")
        n_limit, k_limit = table[id_val]
        if n_limit is None or k_limit is None:
            continue

        children = get_children_absolute(base_window, k_limit)
        children_generated += len(children)
        for child in children:
            child_has_checked_triple = False
            child_area = sum(child)
            fourth_largest = sorted(child, reverse=True)[3]
            if case_num == 1:
                m_start = max(0, child[0] - 1, child[6] - 1, fourth_largest)
                m_stop = m_max_for_n(n_limit)
            else:
                m_start = max(0, child[0] - 1, child[6] - 1)
                m_stop = min(m_max_for_n(n_limit), fourth_largest - 1)
            if m_start > m_stop:
                continue
            for m_value in range(m_start, m_stop + 1):
                g_value = sum(1 for value in child if value > m_value)
                if case_num == 1:
                    if g_value > 3:
                        continue
                    coeff = 3
                else:
                    if g_value < 4:
                        continue
                    coeff = g_value
                stats = window_stats(child, m_value, suffix_len)
                n_start = max(8, m_value + 8, first_n_with_m_allowed(m_value))
                n_stop = deficit_n_upper(coeff, m_value, stats[0], stats[1], n_limit)
                for n_value in range(n_start, n_stop + 1):
                    triples_checked += 1
                    child_has_checked_triple = True
                    problem = check_window_single(
                        case_label=case_label, side_label=side_label, base_window=base_window,
                        child=child, id_val=id_val, n_value=n_value, m_value=m_value,
                        g_value=g_value, coeff=coeff, int_defc_q0=stats, child_area=child_area)
                    if problem is not None:
                        problems.append(problem)
                        return problems, {"windows": windows_checked, "children": children_generated,
                                          "active_children": active_children, "triples": triples_checked}
            if child_has_checked_triple:
                active_children += 1

    return problems, {"windows": windows_checked, "children": children_generated,
                      "active_children": active_children, "triples": triples_checked}


def _table_text(label: str, table: Table) -> list[str]:
    out = [label, f"{'id':>4} {'N':>8} {'K':>8}"]
    for id_val in sorted(table):
        n_value, k_value = table[id_val]
        out.append(f"{id_val:>4} {'--' if n_value is None else n_value:>8} {'--' if k_value is None else k_value:>8}")
    return out


def east7_window_check(fast: bool = False, threads: Optional[int] = None) -> CheckReport:
    """Full mode is the acceptance gate; fast mode runs the finite search on
    every FAST_STRIDE-th sorted base window and skips the search-count goldens."""
    report = CheckReport("east7-fast" if fast else "east7")
    ew = get_ew()
    ww = get_ww(ew)
    report.counters["|EW|"] = len(ew)
    report.counters["|WW|"] = len(ww)
    report.counters["|EW union WW|"] = len(ew | ww)

    tables = {1: build_threshold_table(1), 2: build_threshold_table(2)}
    for case_num, table in tables.items():
        report.lines.extend(_table_text(f"Case {case_num} threshold table", table))
        for id_val, (n_value, k_value) in table.items():
            report.counters[f"case{case_num} id={id_val} N"] = n_value
            report.counters[f"case{case_num} id={id_val} K"] = k_value

    distribution: dict[int, int] = {}
    min_record = None
    for suffix_len, side_label, side_windows in ((3, "East", ew), (4, "West", ww)):
        for window in side_windows:  # set order, as in the listing
            id_val, threshold = compute_id_mid(window, suffix_len)
            distribution[id_val] = distribution.get(id_val, 0) + 1
            if min_record is None or id_val < min_record[0]:
                min_record = (id_val, threshold, side_label, window)
    assert min_record is not None
    report.counters["min id_mid"] = min_record[0]
    report.counters["min id_mid threshold"] = min_record[1]
    report.counters["min id_mid side"] = min_record[2]
    report.counters["min id_mid window"] = min_record[3]
    for id_val in sorted(distribution):
        report.counters[f"id_mid={id_val}"] = distribution[id_val]
    if min_record[0] < 10:
        report.fail(f"id_mid structural check fails at {min_record}")

    stride = FAST_STRIDE if fast else 1
    jobs = [(1, "East", ew, tables[1], stride), (1, "West", ww, tables[1], stride),
            (2, "East", ew, tables[2], stride), (2, "West", ww, tables[2], stride)]
    problems_total = 0
    for (case_num, side, *_), (problems, counts) in zip(jobs, ordered_map(run_case, jobs, threads)):
        for key in ("windows", "children", "active_children", "triples"):
            report.counters[f"Case {case_num} {side} {key}"] = counts[key]
        report.counters[f"Case {case_num} {side} problems"] = len(problems)
        problems_total += len(problems)
        if problems:
            report.fail(f"counterexample: {problems[0]}")
    report.counters["problems"] = problems_total

    golden = load_golden("east7")
    if fast:
        golden = {k: v for k, v in golden.items() if not k.startswith("Case ")}
    report.compare(golden)
    return report
