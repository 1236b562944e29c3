"""Local window maps, the global up/down maps, strings, and skeleton formulas.

East moves the boundary between an affine block and a reverse block of a
window one step to the right; West is its reversal conjugate.  up and down
combine leftmost extraction, one local move and right-to-left injection to
change the area of a Dyck sequence by one while keeping its deficit.  Repeated
up from each special skeleton partitions the low-area half of a fixed-deficit
slice into strings, which yields the skeleton formula for the high-degree part
of C_n(q,t).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable, Optional

from .seqcore import (
    DEFAULT_CAP,
    DomainError,
    InjectionError,
    IntSeq,
    QtPoly,
    ResourceError,
    area,
    brute_force_catalan,
    defc,
    di,
    dinv,
    distinct_permutations,
    enumerate_dyck,
    epsilon as _epsilon,
    find_extractable,
    format_seq,
    inject,
    inject_right_to_left,
    is_affine,
    is_dyck,
    is_full_skeleton,
    is_reverse,
    is_special_skeleton,
    omega,
    remove_at,
)


# ---------------------------------------------------------------------------
# small affine/reverse helpers

def rev(w: Iterable[int]) -> IntSeq:
    return tuple(reversed(tuple(w)))


def bk2(a: int, b: int) -> tuple[int, int]:
    return (b, a) if a > b + 1 else (a, b)


def fw2(a: int, b: int) -> tuple[int, int]:
    return (b, a) if b > a + 1 else (a, b)


def bk3(a: int, b: int, c: int) -> tuple[int, int, int]:
    if a > b + 1:
        a, b = b, a
    if b > c + 1:
        b, c = c, b
    if a > b + 1:
        a, b = b, a
    return a, b, c


# ---------------------------------------------------------------------------
# Case 4 tables, on the middle five entries normalized so max(x_1, x_2) = 2

CASE4A: dict[IntSeq, IntSeq] = {
    (3, 3, 4, 1, 2): (1, 2, 4, 3, 3),
    (3, 4, 4, 1, 2): (1, 2, 4, 3, 4),
    (4, 3, 4, 1, 2): (1, 2, 4, 4, 3),
    (2, 3, 4, 1, 2): (1, 2, 4, 3, 2),
}
CASE4B: dict[IntSeq, IntSeq] = {
    (3, 3, 4, 2, 1): (2, 1, 4, 3, 3),
    (3, 4, 4, 2, 1): (2, 1, 4, 3, 4),
    (4, 3, 4, 2, 1): (2, 1, 4, 4, 3),
    (2, 3, 4, 2, 1): (2, 1, 4, 3, 2),
}
CASE4C: dict[IntSeq, IntSeq] = {
    (3, 4, 4, 2, 2): (2, 2, 4, 4, 3),
    (3, 4, 5, 2, 2): (2, 2, 5, 4, 3),
}
# keyed by the first three normalized entries; the fourth is a free o <= 0
CASE4D: dict[IntSeq, Callable[[int], IntSeq]] = {
    (3, 3, 4): lambda o: (2, o, 4, 3, 3),
    (3, 4, 4): lambda o: (2, o, 4, 3, 4),
    (4, 3, 4): lambda o: (2, o, 4, 4, 3),
    (2, 3, 4): lambda o: (2, o, 2, 4, 3),
    (3, 4, 2): lambda o: (2, o, 4, 3, 2),
}


class LocalMoveError(DomainError):
    """East7/West7 called outside its domain or with no matching case."""


@dataclass(frozen=True)
class LocalMove:
    level: int
    case_tag: str
    output: IntSeq


def is_far_apart(w: Iterable[int]) -> bool:
    """Three disjoint pairs with gap >= 2 exist among the seven entries."""
    w = tuple(w)
    if len(w) != 7:
        raise ValueError(f"far-apart test needs 7 entries, got {len(w)}")
    indices = list(range(7))
    for p1 in combinations(indices, 2):
        if abs(w[p1[0]] - w[p1[1]]) < 2:
            continue
        r1 = [i for i in indices if i not in p1]
        for p2 in combinations(r1, 2):
            if abs(w[p2[0]] - w[p2[1]]) < 2:
                continue
            r2 = [i for i in r1 if i not in p2]
            for p3 in combinations(r2, 2):
                if abs(w[p3[0]] - w[p3[1]]) >= 2:
                    return True
    return False


def east3(w: Iterable[int]) -> Optional[IntSeq]:
    w = tuple(w)
    if len(w) != 3:
        raise ValueError("East3 needs 3 entries")
    return w if w[1] <= w[2] + 1 else None


def _east5_tagged(w: IntSeq) -> Optional[tuple[str, IntSeq]]:
    x_m2, x_m1, x_0, x_1, x_2 = w
    y_m1, y_0 = bk2(x_m1, x_0)
    if x_m1 > x_1 + 1 and y_0 <= x_2 + 1:
        return "2a", (x_m2, x_1, y_m1, y_0, x_2)
    if x_m1 <= x_1 + 1 and x_m1 <= x_2 + 1:
        return "2b", (x_m2, x_1, x_0, x_m1, x_2)
    return None


def east5(w: Iterable[int]) -> Optional[IntSeq]:
    w = tuple(w)
    if len(w) != 5:
        raise ValueError("East5 needs 5 entries")
    hit = _east5_tagged(w)
    return None if hit is None else hit[1]


def _east7_tagged(w: IntSeq) -> tuple[str, IntSeq]:
    x_m3, x_m2, x_m1, x_0, x_1, x_2, x_3 = w
    if x_0 <= x_1 + 1:
        return "identity", w
    hit = _east5_tagged(w[1:6])
    if hit is not None:
        return hit[0], (x_m3,) + hit[1] + (x_3,)
    if min(x_m2, x_m1, x_0) > max(x_1, x_2) + 1:
        return "3", (x_m3,) + fw2(x_1, x_2) + bk3(x_m2, x_m1, x_0) + (x_3,)
    shift = max(x_1, x_2) - 2
    reduced = (x_m2 - shift, x_m1 - shift, x_0 - shift, x_1 - shift, x_2 - shift)
    for tag, table in (("4a", CASE4A), ("4b", CASE4B), ("4c", CASE4C)):
        if reduced in table:
            return tag, (x_m3,) + tuple(y + shift for y in table[reduced]) + (x_3,)
    if reduced[4] == 2 and reduced[3] <= 0 and reduced[:3] in CASE4D:
        out = CASE4D[reduced[:3]](reduced[3])
        return "4d", (x_m3,) + tuple(y + shift for y in out) + (x_3,)
    raise LocalMoveError(f"East7 undefined on {format_seq(w)}")


def east7(w: Iterable[int]) -> IntSeq:
    w = tuple(w)
    if len(w) != 7:
        raise ValueError("East7 needs 7 entries")
    return _east7_tagged(w)[1]


def west3(w: Iterable[int]) -> Optional[IntSeq]:
    ans = east3(rev(w))
    return None if ans is None else rev(ans)


def west5(w: Iterable[int]) -> Optional[IntSeq]:
    ans = east5(rev(w))
    return None if ans is None else rev(ans)


def west7(w: Iterable[int]) -> IntSeq:
    return rev(east7(rev(w)))


_LEVEL_OF_TAG = {"identity": 3, "2a": 5, "2b": 5, "3": 7, "4a": 7, "4b": 7, "4c": 7, "4d": 7}


def east(w: Iterable[int]) -> Optional[LocalMove]:
    """Tagged East move on a 3-, 5- or 7-window.

    3- and 5-windows return None when the stage does not apply.  On a
    7-window the far-apart hypothesis is checked and a missing case raises.
    """
    w = tuple(w)
    if len(w) == 3:
        out = east3(w)
        return None if out is None else LocalMove(3, "identity", out)
    if len(w) == 5:
        hit = _east5_tagged(w)
        return None if hit is None else LocalMove(5, hit[0], hit[1])
    if len(w) == 7:
        if is_far_apart(w):
            raise LocalMoveError(f"East7 precondition: {format_seq(w)} is far-apart decomposable")
        tag, out = _east7_tagged(w)
        return LocalMove(_LEVEL_OF_TAG[tag], tag, out)
    raise ValueError(f"window length must be 3, 5 or 7, got {len(w)}")


def west(w: Iterable[int]) -> Optional[LocalMove]:
    mv = east(rev(w))
    return None if mv is None else LocalMove(mv.level, mv.case_tag, rev(mv.output))


# ---------------------------------------------------------------------------
# seven-window forms

def in_l_form(w: IntSeq) -> bool:
    return is_affine(w[:4]) and is_reverse(w[4:])


def in_r_form(w: IntSeq) -> bool:
    return is_affine(w[:3]) and is_reverse(w[3:])


def window_count_symmetry(multiset: Iterable[int], k: int) -> tuple[int, int]:
    s = tuple(multiset)
    if len(s) != 7:
        raise ValueError("window sets are defined for 7-element multisets")
    n_left = n_right = 0
    for w in distinct_permutations(s):
        if di(w) != k:
            continue
        n_left += in_l_form(w)
        n_right += in_r_form(w)
    if n_left != n_right:
        raise AssertionError(f"|L|={n_left} != |R|={n_right} for {s}, k={k}")
    return n_left, n_right


def l_form_windows(top: int = 6) -> list[IntSeq]:
    """Normalized (min 0) L-form seven-windows with entries in [0, top]
    that are not far-apart decomposable."""
    out = []
    for w in product(range(top + 1), repeat=7):
        if min(w) != 0 or not in_l_form(w):
            continue
        if is_far_apart(w):
            continue
        out.append(w)
    return out


def r_form_windows(top: int = 6) -> list[IntSeq]:
    out = []
    for w in product(range(top + 1), repeat=7):
        if min(w) != 0 or not in_r_form(w):
            continue
        if is_far_apart(w):
            continue
        out.append(w)
    return out


def premature_branch(move: LocalMove, direction: str = "east") -> Optional[str]:
    """Name of a lower opposite-side test that fires on a centered proper
    subwindow of a level-5 or level-7 output, or None."""
    out = move.output
    if len(out) != 7 or move.level == 3:
        return None
    lower3 = west3 if direction == "east" else east3
    lower5 = west5 if direction == "east" else east5
    if lower3(out[2:5]) is not None:
        return "3"
    if move.level == 7 and lower5(out[1:6]) is not None:
        return "5"
    return None


# ---------------------------------------------------------------------------
# up and down

class StageError(DomainError):
    """A stage of up/down could not be carried out."""

    def __init__(self, direction: str, stage: str, level: int, word: IntSeq, detail: str = ""):
        self.direction = direction
        self.stage = stage
        self.level = level
        self.word = word
        self.detail = detail
        msg = f"{direction} failed at stage {stage!r} (level {level}) on {format_seq(word)}"
        super().__init__(msg + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class StepRecord:
    """Everything the staged algorithm looked at on one call."""

    image: IntSeq
    level: int
    branch: str
    indices: tuple[int, ...]
    child_lengths: tuple[int, ...]
    window: Optional[IntSeq] = None


def _extract(direction: str, stage: str, level: int, word: IntSeq) -> tuple[int, int]:
    hit = find_extractable(word, check=False)
    if hit is None:
        raise StageError(direction, stage, level, word, "no extractable element")
    return hit


def _inject(direction: str, level: int, word: IntSeq, fn, *args) -> IntSeq:
    try:
        return fn(*args)
    except InjectionError as exc:
        raise StageError(direction, "inject", level, word, str(exc)) from None


def up_step(s: Iterable[int]) -> StepRecord:
    s = tuple(s)
    n = len(s)
    if not is_dyck(s):
        raise StageError("up", "input", 0, s, "not an ordinary Dyck sequence")
    if n >= 4 and s == omega(n):
        return StepRecord(_epsilon(n), 3, "special", (), ())
    if is_full_skeleton(s):
        img = _inject("up", 3, s, inject, s[:-1], s[-1] + 1)
        return StepRecord(img, 3, "skeleton", (), ())
    j1, e1 = _extract("up", "extract1", 3, s)
    c1 = remove_at(s, j1)
    sigma1 = c1 + (e1 - 1,)
    if east3(sigma1[-3:]) is not None:
        img = _inject("up", 3, s, inject_right_to_left, sigma1[:-2], (sigma1[-2] + 1, sigma1[-1] + 1))
        return StepRecord(img, 3, "East3", (j1,), (n,), sigma1[-3:])
    j2, e2 = _extract("up", "extract2", 5, c1)
    c2 = remove_at(c1, j2)
    sigma2 = c2 + (e1 - 1, e2 - 1)
    hit5 = _east5_tagged(sigma2[-5:]) if len(sigma2) >= 5 else None
    if hit5 is not None:
        w5 = hit5[1]
        base = sigma2[:-5] + w5[:2]
        img = _inject("up", 5, s, inject_right_to_left, base, tuple(x + 1 for x in w5[2:]))
        return StepRecord(img, 5, "East5 case " + hit5[0], (j1, j2), (n, len(c1)), sigma2[-5:])
    if len(sigma2) < 7:
        raise StageError("up", "extract3", 7, s, "sequence too short for a seven-window")
    j3, e3 = _extract("up", "extract3", 7, c2)
    c3 = remove_at(c2, j3)
    sigma3 = c3 + (e1 - 1, e2 - 1, e3 - 1)
    w7 = sigma3[-7:]
    if is_far_apart(w7):
        raise StageError("up", "far-apart", 7, s, f"window {format_seq(w7)}")
    try:
        tag, e7 = _east7_tagged(w7)
    except LocalMoveError as exc:
        raise StageError("up", "East7", 7, s, str(exc)) from None
    new_sigma3 = sigma3[:-7] + e7
    img = _inject("up", 7, s, inject_right_to_left, new_sigma3[:-4], tuple(x + 1 for x in new_sigma3[-4:]))
    return StepRecord(img, 7, "East7 case " + tag, (j1, j2, j3), (n, len(c1), len(c2)), w7)


def down_step(s: Iterable[int]) -> StepRecord:
    s = tuple(s)
    n = len(s)
    if not is_dyck(s):
        raise StageError("down", "input", 0, s, "not an ordinary Dyck sequence")
    if n >= 4 and s == _epsilon(n):
        return StepRecord(omega(n), 3, "special", (), ())
    j1, f1 = _extract("down", "extract1", 3, s)
    d1 = remove_at(s, j1)
    candidate = d1 + (f1 - 1,)
    if find_extractable(candidate, check=False) is None:
        if not is_dyck(candidate):
            raise StageError("down", "skeleton", 3, s, f"candidate {format_seq(candidate)} not Dyck")
        return StepRecord(candidate, 3, "skeleton", (j1,), (n,))
    j2, f2 = _extract("down", "extract2", 3, d1)
    d2 = remove_at(d1, j2)
    tau1 = d2 + (f1 - 1, f2 - 1)
    if west3(tau1[-3:]) is not None:
        img = _inject("down", 3, s, inject, tau1[:-1], tau1[-1] + 1)
        return StepRecord(img, 3, "West3", (j1, j2), (n, len(d1)), tau1[-3:])
    j3, f3 = _extract("down", "extract3", 5, d2)
    d3 = remove_at(d2, j3)
    tau2 = d3 + (f1 - 1, f2 - 1, f3 - 1)
    hit5 = _east5_tagged(rev(tau2[-5:])) if len(tau2) >= 5 else None
    if hit5 is not None:
        w5 = rev(hit5[1])
        base = tau2[:-5] + w5[:3]
        img = _inject("down", 5, s, inject_right_to_left, base, tuple(x + 1 for x in w5[3:]))
        return StepRecord(img, 5, "West5 case " + hit5[0], (j1, j2, j3), (n, len(d1), len(d2)), tau2[-5:])
    if len(tau2) < 7:
        raise StageError("down", "extract4", 7, s, "sequence too short for a seven-window")
    j4, f4 = _extract("down", "extract4", 7, d3)
    d4 = remove_at(d3, j4)
    tau3 = d4 + (f1 - 1, f2 - 1, f3 - 1, f4 - 1)
    w7 = tau3[-7:]
    if is_far_apart(w7):
        raise StageError("down", "far-apart", 7, s, f"window {format_seq(w7)}")
    try:
        tag, out = _east7_tagged(rev(w7))
    except LocalMoveError as exc:
        raise StageError("down", "West7", 7, s, str(exc)) from None
    new_tau3 = tau3[:-7] + rev(out)
    img = _inject("down", 7, s, inject_right_to_left, new_tau3[:-3], tuple(x + 1 for x in new_tau3[-3:]))
    return StepRecord(img, 7, "West7 case " + tag, (j1, j2, j3, j4),
                      (n, len(d1), len(d2), len(d3)), w7)


def up(s: Iterable[int]) -> tuple[IntSeq, int]:
    rec = up_step(s)
    return rec.image, rec.level


def down(s: Iterable[int]) -> tuple[IntSeq, int]:
    rec = down_step(s)
    return rec.image, rec.level


def try_up(s: Iterable[int]) -> tuple[IntSeq, int] | StageError:
    try:
        return up(s)
    except StageError as exc:
        return exc


def try_down(s: Iterable[int]) -> tuple[IntSeq, int] | StageError:
    try:
        return down(s)
    except StageError as exc:
        return exc


# ---------------------------------------------------------------------------
# strings

@lru_cache(maxsize=16)
def dyck_by_defc(n: int) -> dict[int, tuple[IntSeq, ...]]:
    groups: dict[int, list[IntSeq]] = {}
    for s in enumerate_dyck(n):
        groups.setdefault(defc(s), []).append(s)
    return {d: tuple(v) for d, v in groups.items()}


def lower_half_limit(n: int, d: int) -> int:
    return (comb(n, 2) - d) // 2


@dataclass(frozen=True)
class StringRecord:
    start: IntSeq
    chain: tuple[IntSeq, ...]
    levels: tuple[int, ...]


def make_strings(n: int, d: int) -> list[StringRecord]:
    """Lower-half up-strings of the deficit-d slice in length n."""
    if n < 4:
        raise DomainError(f"strings need n >= 4, got {n}")
    if d > 2 * n - 8:
        raise DomainError(f"deficit {d} exceeds 2n-8 = {2 * n - 8}")
    ell = lower_half_limit(n, d)
    target = {s for s in dyck_by_defc(n).get(d, ()) if area(s) <= ell}
    starts = sorted((s for s in target if is_special_skeleton(s)), key=lambda s: (area(s), s))
    out = []
    for start in starts:
        chain = [start]
        levels = []
        current = start
        while area(current) < ell:
            nxt, level = up(current)
            if defc(nxt) != d or area(nxt) != area(current) + 1:
                raise AssertionError(f"up left the slice: {format_seq(current)} -> {format_seq(nxt)}")
            chain.append(nxt)
            levels.append(level)
            current = nxt
        out.append(StringRecord(start, tuple(chain), tuple(levels)))
    covered = [s for rec in out for s in rec.chain]
    if set(covered) != target:
        raise AssertionError(f"strings for (n,d)=({n},{d}) do not cover the slice")
    if len(covered) != len(set(covered)):
        raise AssertionError(f"strings for (n,d)=({n},{d}) overlap")
    return out


# ---------------------------------------------------------------------------
# skeleton and partition formulas

def interval_kernel(a: int, nu: int) -> QtPoly:
    """(q^{nu+1} t^a - q^a t^{nu+1}) / (q - t), expanded exactly."""
    out = QtPoly()
    total = a + nu
    if a <= nu:
        for j in range(a, nu + 1):
            out.add_term(j, total - j, 1)
    else:
        for j in range(nu + 1, a):
            out.add_term(j, total - j, -1)
    return out


def special_skeletons(n: int, max_defc: Optional[int] = None) -> list[IntSeq]:
    out = []
    for d, group in sorted(dyck_by_defc(n).items()):
        if max_defc is not None and d > max_defc:
            continue
        out.extend(s for s in group if is_special_skeleton(s))
    return out


def low_deficit_catalan(n: int, cap: int = DEFAULT_CAP) -> QtPoly:
    """Sum of interval kernels over special skeletons with defc <= 2n-8."""
    if n < 4:
        raise DomainError(f"the skeleton formula needs n >= 4, got {n}")
    if n > cap:
        raise ResourceError(f"n={n} exceeds the cap {cap}")
    total = QtPoly()
    for s in special_skeletons(n, 2 * n - 8):
        total = total + interval_kernel(area(s), dinv(s))
    return total


def partition_formula(n: int) -> QtPoly:
    """Sum over partitions of size <= n-3 of the interval kernels."""
    from .symfun import partitions_of

    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    big_m = comb(n, 2)
    total = QtPoly()
    for size in range(0, n - 2):
        for lam in partitions_of(size):
            length = lam.length
            total = total + interval_kernel(length, big_m - size - length)
    return total


def skeleton_to_partition(s: Iterable[int]) -> tuple[int, ...]:
    """Binary special skeleton -> partition with |lambda| = defc, length = area."""
    s = tuple(s)
    if any(x not in (0, 1) for x in s) or not is_special_skeleton(s):
        raise DomainError(f"not a binary special skeleton: {format_seq(s)}")
    counts = []
    zeros = 0
    for i, x in enumerate(s):
        if x == 0:
            if i:
                zeros += 1
        else:
            counts.append(zeros)
    return tuple(reversed(counts))


def partition_to_skeleton(parts: Iterable[int], n: int) -> IntSeq:
    parts = tuple(p for p in parts if p)
    if sum(parts) > n - 3:
        raise DomainError(f"partition of size {sum(parts)} is too large for n={n}")
    word: list[int] = []
    zeros = 0
    for c in sorted(parts):
        word.extend([0] * (c - zeros))
        zeros = c
        word.append(1)
    out = (0,) + tuple(word)
    return out + (0,) * (n - len(out))


# ---------------------------------------------------------------------------
# flat-middle scan

@dataclass
class FlatMiddleRow:
    d: int
    band: tuple[int, int]
    values: tuple[int, ...]
    flat: bool
    special_count: Optional[int]
    in_remark_range: bool


@dataclass
class FlatMiddleReport:
    n: int
    rows: list[FlatMiddleRow] = field(default_factory=list)

    @property
    def remark_ok(self) -> bool:
        return all(r.flat and r.values[:1] in ((), (r.special_count,))
                   for r in self.rows if r.in_remark_range)

    def conjecture_failures(self) -> list[int]:
        return [r.d for r in self.rows if not r.flat]


def flat_middle_scan(n: int, cap: int = DEFAULT_CAP) -> FlatMiddleReport:
    """Flat band d <= j <= M-2d for every d <= floor(M/3).

    For d <= 2n-8 the band must be flat with value equal to the number of
    special skeletons of that deficit; a violation raises.  Larger d only
    report.
    """
    poly = brute_force_catalan(n, cap=cap)
    big_m = comb(n, 2)
    report = FlatMiddleReport(n)
    by_d = dyck_by_defc(n)
    for d in range(0, big_m // 3 + 1):
        lo, hi = d, big_m - 2 * d
        values = tuple(poly.coefficient(j, big_m - d - j) for j in range(lo, hi + 1))
        flat = len(set(values)) <= 1
        remark = n >= 4 and d <= 2 * n - 8
        count = None
        if remark:
            count = sum(1 for s in by_d.get(d, ()) if is_special_skeleton(s))
            if not flat or (values and values[0] != count):
                raise AssertionError(f"flat band fails at n={n}, d={d}: {values} vs {count}")
        report.rows.append(FlatMiddleRow(d, (lo, hi), values, flat, count, remark))
    return report
