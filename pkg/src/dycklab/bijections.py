"""The decomposition chain from Dyck sequences to skeleton/tableau triples.

phi1 strips extractable entries off the part of D ending at its last maximum,
phi2 lowers the stripped entries by one, phi3 moves the last component from
reverse to affine form by rank insertion, and phi4 matches the resulting
two-factor affine factorization with a two-column Dyck tableau and a binary
recording tableau.  phi4 is a rank matching inside finite fibers: both fibers
are listed in lexicographic order and the i-th element goes to the i-th.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union

from .insertion import DyckTableau
from .seqcore import (
    DEFAULT_CAP,
    DomainError,
    IntSeq,
    QtPoly,
    ResourceError,
    area,
    di,
    dinv,
    distinct_permutations,
    enumerate_dyck,
    find_extractable,
    format_seq,
    in_interval,
    inject,
    is_affine,
    is_dyck,
    is_reverse,
    m_skeleton,
)
from .symfun import all_dyck_tableaux


class FiberError(RuntimeError):
    """The two sides of a phi4 fiber have different sizes."""


def _require_skeleton(f: IntSeq, m: int) -> None:
    if m_skeleton(f) != m:
        raise DomainError(f"{format_seq(f)} is not a Dyck {m}-skeleton")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


@dataclass(frozen=True)
class Triple1:
    E: IntSeq
    F: IntSeq
    G: IntSeq
    m: int

    def __post_init__(self) -> None:
        _require_skeleton(self.F, self.m)
        _require(is_reverse(self.E) and in_interval(self.E, 1, self.m),
                 f"E={format_seq(self.E)} is not reverse [1,{self.m}]")
        _require(is_affine(self.G) and in_interval(self.G, 0, self.m - 1),
                 f"G={format_seq(self.G)} is not affine [0,{self.m - 1}]")


@dataclass(frozen=True)
class Triple2:
    F: IntSeq
    G: IntSeq
    E: IntSeq
    m: int

    def __post_init__(self) -> None:
        _require_skeleton(self.F, self.m)
        _require(is_affine(self.G) and in_interval(self.G, 0, self.m - 1),
                 f"G={format_seq(self.G)} is not affine [0,{self.m - 1}]")
        _require(is_reverse(self.E) and in_interval(self.E, 0, self.m - 1),
                 f"E={format_seq(self.E)} is not reverse [0,{self.m - 1}]")


@dataclass(frozen=True)
class Triple3:
    F: IntSeq
    G: IntSeq
    E: IntSeq
    m: int

    def __post_init__(self) -> None:
        _require_skeleton(self.F, self.m)
        _require(is_affine(self.G) and in_interval(self.G, 0, self.m - 1),
                 f"G={format_seq(self.G)} is not affine [0,{self.m - 1}]")
        _require(is_affine(self.E) and in_interval(self.E, 0, self.m - 1),
                 f"E={format_seq(self.E)} is not affine [0,{self.m - 1}]")


def is_binary_reverse_ssyt(rows: tuple[tuple[int, ...], ...]) -> bool:
    """0/1 entries, rows strictly increasing, columns weakly increasing."""
    for j, row in enumerate(rows):
        if any(v not in (0, 1) for v in row):
            return False
        if any(row[p] >= row[p + 1] for p in range(len(row) - 1)):
            return False
        if j + 1 < len(rows):
            low = rows[j + 1]
            if len(low) > len(row) or any(row[p] > low[p] for p in range(len(low))):
                return False
    return True


@dataclass(frozen=True)
class Triple4:
    F: IntSeq
    P: DyckTableau
    Q: tuple[tuple[int, ...], ...]
    m: int

    def __post_init__(self) -> None:
        _require_skeleton(self.F, self.m)
        _require(self.P.num_columns() <= 2, "P has more than two columns")
        _require(in_interval(self.P.reading_word(), 0, self.m - 1),
                 f"P entries are not in [0,{self.m - 1}]")
        q = tuple(tuple(r) for r in self.Q)
        object.__setattr__(self, "Q", q)
        _require(tuple(len(r) for r in q) == self.P.shape, "Q and P have different shapes")
        _require(is_binary_reverse_ssyt(q), "Q is not a binary reverse semistandard tableau")


Triple = Union[Triple1, Triple2, Triple3, Triple4]


def triple_stats(t: Triple) -> tuple[int, int]:
    """(area, dinv) of a triple."""
    if isinstance(t, Triple1):
        w = t.E + t.F + t.G
        return area(w), dinv(w) - len(t.E)
    if isinstance(t, (Triple2, Triple3)):
        w = t.F + t.G + t.E
        return area(w) + len(t.E), dinv(w) - len(t.E)
    if isinstance(t, Triple4):
        rr = t.P.reading_word()
        ones = sum(sum(r) for r in t.Q)
        return area(t.F) + sum(rr) + ones, dinv(t.F + rr) - ones
    raise TypeError(f"not a triple: {t!r}")


# ---------------------------------------------------------------------------
# phi1

def phi1(d: IntSeq) -> Triple1:
    d = tuple(d)
    if not is_dyck(d):
        raise DomainError(f"phi1 needs an ordinary Dyck sequence: {format_seq(d)}")
    m = max(d)
    k = len(d) - 1 - d[::-1].index(m)
    c, g = d[:k + 1], d[k + 1:]
    e: list[int] = []
    while True:
        hit = find_extractable(c, check=False)
        if hit is None or hit[0] == len(c) - 1:
            break
        j, v = hit
        e.append(v)
        c = c[:j] + c[j + 1:]
    return Triple1(tuple(e), c, g, m)


def phi1_inverse(t: Triple1) -> IntSeq:
    c = t.F
    for v in reversed(t.E):
        c = inject(c, v)
    return c + t.G


# ---------------------------------------------------------------------------
# phi2

def phi2(t: Triple1) -> Triple2:
    return Triple2(t.F, t.G, tuple(v - 1 for v in t.E), t.m)


def phi2_inverse(t: Triple2) -> Triple1:
    return Triple1(tuple(v + 1 for v in t.E), t.F, t.G, t.m)


# ---------------------------------------------------------------------------
# rank-insertion transport

def _delete_top(y: list[int], k: int) -> tuple[list[int], tuple[int, ...]]:
    b = tuple(v for v in y if v in (k, k + 1))
    return [v for v in y if v != k + 1], b


def _kth_index(x: list[int], value: int, count: int) -> Optional[int]:
    """Index of the count-th (1-based) occurrence of value, or None."""
    seen = 0
    for i, v in enumerate(x):
        if v == value:
            seen += 1
            if seen == count:
                return i
    return None


def _ranks(b: tuple[int, ...], k: int) -> list[int]:
    out = []
    below = 0
    for v in b:
        if v == k:
            below += 1
        else:
            out.append(below)
    return out


def _insert_leftmost(x: list[int], b: tuple[int, ...], k: int) -> list[int]:
    x = list(x)
    prev = -1
    for r in _ranks(b, k):
        pos = 0 if r == 0 else _kth_index(x, k, r) + 1
        pos = max(pos, prev + 1)
        x.insert(pos, k + 1)
        prev = pos
    return x


def _insert_rightmost(x: list[int], b: tuple[int, ...], k: int) -> list[int]:
    x = list(x)
    prev = len(x)
    for r in reversed(_ranks(b, k)):
        nxt = _kth_index(x, k, r + 1)
        pos = len(x) if nxt is None else nxt
        pos = min(pos, prev)
        x.insert(pos, k + 1)
        prev = pos
    return x


def rank_transport(x: IntSeq, big_m: int, direction: str) -> IntSeq:
    """fw_M (reverse -> affine) or bk_M (affine -> reverse) on [0,M] words."""
    x = tuple(x)
    if direction not in ("fw", "bk"):
        raise ValueError(f"direction must be 'fw' or 'bk', got {direction!r}")
    source_ok = is_reverse(x) if direction == "fw" else is_affine(x)
    if not (source_ok and in_interval(x, 0, big_m)):
        kind = "reverse" if direction == "fw" else "affine"
        raise DomainError(f"{direction}_{big_m} needs a {kind} [0,{big_m}] word: {format_seq(x)}")
    if big_m <= 1:
        return x
    y = list(x)
    records: dict[int, tuple[int, ...]] = {}
    for k in range(big_m - 1, 0, -1):
        y, records[k] = _delete_top(y, k)
    step = _insert_leftmost if direction == "fw" else _insert_rightmost
    for k in range(1, big_m):
        y = step(y, records[k], k)
    return tuple(y)


def phi3(t: Triple2) -> Triple3:
    if t.m == 0:
        return Triple3(t.F, t.G, (), 0)
    return Triple3(t.F, t.G, rank_transport(t.E, t.m - 1, "fw"), t.m)


def phi3_inverse(t: Triple3) -> Triple2:
    if t.m == 0:
        return Triple2(t.F, t.G, (), 0)
    return Triple2(t.F, t.G, rank_transport(t.E, t.m - 1, "bk"), t.m)


# ---------------------------------------------------------------------------
# phi4 by fiber rank matching

def binary_reverse_fillings(shape: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All binary reverse semistandard fillings of a shape."""
    cells = [(j, p) for j, length in enumerate(shape) for p in range(length)]
    for mask in range(1 << len(cells)):
        rows = [[0] * length for length in shape]
        for bit, (j, p) in enumerate(cells):
            if mask >> bit & 1:
                rows[j][p] = 1
        t = tuple(tuple(r) for r in rows)
        if is_binary_reverse_ssyt(t):
            yield t


def _columns(q: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    width = len(q[0]) if q else 0
    return tuple(tuple(r[c] for r in q if len(r) > c) for c in range(width))


@lru_cache(maxsize=None)
def affine_fiber(multiset: tuple[int, ...], d: int, g: int, e: int) -> tuple[tuple[IntSeq, IntSeq], ...]:
    out = []
    for w in distinct_permutations(multiset):
        if di(w) != d:
            continue
        gg, ee = w[:g], w[g:]
        if is_affine(gg) and is_affine(ee):
            out.append((gg, ee))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def tableau_fiber(multiset: tuple[int, ...], d: int, e: int) -> tuple[tuple[DyckTableau, tuple], ...]:
    out = []
    for p in all_dyck_tableaux(multiset, max_cols=2):
        if di(p.reading_word()) != d:
            continue
        for q in binary_reverse_fillings(p.shape):
            if sum(sum(r) for r in q) == e:
                out.append((p.reading_word(), _columns(q), p, q))
    out.sort(key=lambda item: (item[0], item[1]))
    return tuple((p, q) for _, _, p, q in out)


def _fiber_pair(multiset: tuple[int, ...], d: int, g: int, e: int):
    left = affine_fiber(multiset, d, g, e)
    right = tableau_fiber(multiset, d, e)
    if len(left) != len(right):
        raise FiberError(
            f"fiber size mismatch for multiset {multiset}, di {d}, lengths ({g},{e}): "
            f"{len(left)} factorizations vs {len(right)} tableau pairs")
    return left, right


def phi4(t: Triple3) -> Triple4:
    h = t.G + t.E
    key = (tuple(sorted(h)), di(h), len(t.G), len(t.E))
    left, right = _fiber_pair(*key)
    rank = left.index((t.G, t.E))
    p, q = right[rank]
    return Triple4(t.F, p, q, t.m)


def phi4_inverse(t: Triple4) -> Triple3:
    rr = t.P.reading_word()
    ones = sum(sum(r) for r in t.Q)
    key = (tuple(sorted(rr)), di(rr), len(rr) - ones, ones)
    left, right = _fiber_pair(*key)
    rank = right.index((t.P, t.Q))
    g, e = left[rank]
    return Triple3(t.F, g, e, t.m)


def phi(d: IntSeq) -> Triple4:
    return phi4(phi3(phi2(phi1(d))))


def phi_inverse(t: Triple4) -> IntSeq:
    return phi1_inverse(phi2_inverse(phi3_inverse(phi4_inverse(t))))


# ---------------------------------------------------------------------------
# two-column formula

@lru_cache(maxsize=None)
def _skeletons_by_length(f: int) -> tuple[tuple[IntSeq, int], ...]:
    out = []
    for s in enumerate_dyck(f):
        m = m_skeleton(s)
        if m is not None:
            out.append((s, m))
    return tuple(out)


@lru_cache(maxsize=None)
def two_column_tableaux(size: int, top: int) -> tuple[DyckTableau, ...]:
    """Dyck tableaux with at most two columns, `size` cells, entries in [0,top]."""
    if size == 0:
        return (DyckTableau(()),)
    if top < 0:
        return ()
    rows_all: list[IntSeq] = [(a,) for a in range(top + 1)]
    rows_all += [(a, b) for a in range(top + 1) for b in range(a + 2, top + 1)]
    out: list[DyckTableau] = []
    rows: list[IntSeq] = []

    def rec(left: int) -> None:
        if left == 0:
            out.append(DyckTableau(tuple(rows)))
            return
        above = rows[-1] if rows else None
        for row in rows_all:
            if len(row) > left:
                continue
            if above is not None:
                if len(row) > len(above) or any(above[p] > row[p] + 1 for p in range(len(row))):
                    continue
            rows.append(row)
            rec(left - len(row))
            rows.pop()

    rec(size)
    return tuple(out)


def _two_row_schur(a: int, b: int) -> QtPoly:
    """s_(a,b)(q,t) = (qt)^b h_{a-b}(q,t)."""
    return QtPoly({(b + i, b + (a - b - i)): 1 for i in range(a - b + 1)})


def two_column_catalan(n: int, cap: int = DEFAULT_CAP) -> QtPoly:
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceError(f"n={n} exceeds the cap {cap}")
    total = QtPoly()
    for f in range(1, n + 1):
        for skel, m in _skeletons_by_length(f):
            for p in two_column_tableaux(n - f, m - 1):
                w = skel + p.reading_word()
                shape = p.shape
                twos = sum(1 for r in shape if r == 2)
                lam_conj = (len(shape), twos)
                kernel = _two_row_schur(*lam_conj)
                shift = QtPoly.monomial(area(w), dinv(w) - p.size)
                total = total + shift * kernel
    return total


def phi_image_count(n: int) -> int:
    """Number of Type 4 triples with |F| + |P| = n."""
    count = 0
    for f in range(1, n + 1):
        for _, m in _skeletons_by_length(f):
            for p in two_column_tableaux(n - f, m - 1):
                count += sum(1 for _ in binary_reverse_fillings(p.shape))
    return count


__all__ = [
    "FiberError", "Triple1", "Triple2", "Triple3", "Triple4", "triple_stats",
    "phi1", "phi1_inverse", "phi2", "phi2_inverse", "rank_transport", "phi3",
    "phi3_inverse", "phi4", "phi4_inverse", "phi", "phi_inverse",
    "affine_fiber", "tableau_fiber", "binary_reverse_fillings",
    "two_column_tableaux", "two_column_catalan", "phi_image_count",
]
