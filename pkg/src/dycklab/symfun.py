"""Symmetric polynomials truncated to finitely many variables.

Schur polynomials come from semistandard tableaux.  The Dyck symmetric
functions DS (affine factors) and DS* (dual factors) are expanded through the
fundamental quasisymmetric basis: each word with the right multiset and di
contributes F_{n,D} for its forced-strict set D.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .insertion import DyckTableau
from .seqcore import IntSeq, QtPoly, di, distinct_permutations

AFFINE = "affine"
DUAL = "dual"


@dataclass
class TruncPoly:
    num_vars: int
    terms: dict[tuple[int, ...], int]

    def __post_init__(self) -> None:
        self.terms = {k: v for k, v in self.terms.items() if v}
        for k in self.terms:
            if len(k) != self.num_vars:
                raise ValueError(f"exponent vector {k} has wrong length for N={self.num_vars}")

    @classmethod
    def zero(cls, n: int) -> "TruncPoly":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "TruncPoly":
        return cls(n, {(0,) * n: 1})

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TruncPoly(self.num_vars, out)

    def scale(self, c: int) -> "TruncPoly":
        return TruncPoly(self.num_vars, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def coefficient(self, exps: Iterable[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def permute(self, perm: tuple[int, ...]) -> "TruncPoly":
        """Substitute x_i -> x_{perm[i]}."""
        out: dict[tuple[int, ...], int] = {}
        for k, v in self.terms.items():
            new = [0] * self.num_vars
            for i, e in enumerate(k):
                new[perm[i]] += e
            out[tuple(new)] = out.get(tuple(new), 0) + v
        return TruncPoly(self.num_vars, out)

    def is_symmetric(self) -> bool:
        return all(
            self.terms.get(tuple(sorted(k, reverse=True)), 0) == v for k, v in self.terms.items()
        )

    def first_difference(self, other: "TruncPoly") -> Optional[tuple[tuple[int, ...], int, int]]:
        for k in sorted(set(self.terms) | set(other.terms), reverse=True):
            a, b = self.terms.get(k, 0), other.terms.get(k, 0)
            if a != b:
                return k, a, b
        return None

    def to_qt(self) -> QtPoly:
        """Read a two-variable polynomial as a polynomial in q = x_0, t = x_1."""
        if self.num_vars != 2:
            raise ValueError("only two-variable polynomials convert to q,t")
        return QtPoly({(a, b): c for (a, b), c in self.terms.items()})


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(p for p in self.parts if p)
        if any(p < 0 for p in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))


def partitions_of(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    cap = n if max_part is None else max_part

    def rec(rest: int, top: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, top), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    for parts in rec(n, cap):
        yield Partition(parts)


# ---------------------------------------------------------------------------
# Schur polynomials

def ssyt(shape: tuple[int, ...], n_vars: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Semistandard tableaux of the given shape with entries 0..n_vars-1."""
    shape = tuple(p for p in shape if p)
    rows: list[tuple[int, ...]] = []

    def rows_for(length: int, above: Optional[tuple[int, ...]]) -> Iterator[tuple[int, ...]]:
        cur: list[int] = []

        def rec(p: int) -> Iterator[tuple[int, ...]]:
            if p == length:
                yield tuple(cur)
                return
            lo = cur[-1] if cur else 0
            if above is not None:
                lo = max(lo, above[p] + 1)
            for v in range(lo, n_vars):
                cur.append(v)
                yield from rec(p + 1)
                cur.pop()

        yield from rec(0)

    def rec_rows(r: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if r == len(shape):
            yield tuple(rows)
            return
        for row in rows_for(shape[r], rows[-1] if rows else None):
            rows.append(row)
            yield from rec_rows(r + 1)
            rows.pop()

    yield from rec_rows(0)


@lru_cache(maxsize=None)
def _schur_terms(shape: tuple[int, ...], n_vars: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    acc: Counter = Counter()
    for t in ssyt(shape, n_vars):
        wt = [0] * n_vars
        for row in t:
            for v in row:
                wt[v] += 1
        acc[tuple(wt)] += 1
    return tuple(acc.items())


def schur(lam: Partition | Iterable[int], n_vars: int) -> TruncPoly:
    if n_vars < 1:
        raise ValueError("need at least one variable")
    shape = lam.parts if isinstance(lam, Partition) else Partition(tuple(lam)).parts
    return TruncPoly(n_vars, dict(_schur_terms(shape, n_vars)))


def schur_qt(lam: Partition | Iterable[int]) -> QtPoly:
    """s_lambda(q, t)."""
    return schur(lam, 2).to_qt()


# ---------------------------------------------------------------------------
# fundamental expansions

def forced_strict_set(word: IntSeq, mode: str) -> frozenset[int]:
    """Positions j where word[j], word[j+1] cannot share a factor."""
    if mode == DUAL:
        return frozenset(j for j in range(len(word) - 1) if word[j + 1] <= word[j] + 1)
    if mode == AFFINE:
        return frozenset(j for j in range(len(word) - 1) if word[j + 1] >= word[j] + 2)
    raise ValueError(f"mode must be {AFFINE!r} or {DUAL!r}, got {mode!r}")


@lru_cache(maxsize=None)
def _fundamental_terms(n: int, descents: frozenset[int], n_vars: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    acc: Counter = Counter()
    labels: list[int] = []

    def rec(p: int) -> None:
        if p == n:
            wt = [0] * n_vars
            for a in labels:
                wt[a] += 1
            acc[tuple(wt)] += 1
            return
        lo = 0
        if p:
            lo = labels[-1] + (1 if p - 1 in descents else 0)
        for a in range(lo, n_vars):
            labels.append(a)
            rec(p + 1)
            labels.pop()

    rec(0)
    return tuple(acc.items())


def fundamental(n: int, descents: Iterable[int], n_vars: int) -> TruncPoly:
    """F_{n,D} truncated to n_vars variables."""
    return TruncPoly(n_vars, dict(_fundamental_terms(n, frozenset(descents), n_vars)))


def fundamental_expansion(multiset: Iterable[int], d: int, mode: str) -> Counter:
    """DS or DS* as a map D -> multiplicity over words with di = d."""
    out: Counter = Counter()
    for w in distinct_permutations(multiset):
        if di(w) == d:
            out[forced_strict_set(w, mode)] += 1
    return out


def dyck_symmetric_function(multiset: Iterable[int], d: int, mode: str, n_vars: int) -> TruncPoly:
    s = tuple(multiset)
    if not s:
        return TruncPoly.one(n_vars) if d == 0 else TruncPoly.zero(n_vars)
    total = TruncPoly.zero(n_vars)
    for descents, mult in fundamental_expansion(s, d, mode).items():
        total = total + fundamental(len(s), descents, n_vars).scale(mult)
    return total


# ---------------------------------------------------------------------------
# Dyck tableaux by content

def _gap_subsets(values: list[int], max_len: int) -> Iterator[tuple[int, ...]]:
    """Nonempty increasing tuples from sorted distinct values with gaps >= 2."""
    cur: list[int] = []

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        if cur:
            yield tuple(cur)
        if len(cur) == max_len:
            return
        for i in range(start, len(values)):
            v = values[i]
            if cur and v < cur[-1] + 2:
                continue
            cur.append(v)
            yield from rec(i + 1)
            cur.pop()

    yield from rec(0)


def all_dyck_tableaux(multiset: Iterable[int], max_cols: Optional[int] = None) -> Iterator[DyckTableau]:
    """Every Dyck tableau with the given entry multiset."""
    left = Counter(multiset)
    rows: list[IntSeq] = []
    total = sum(left.values())

    def rec(placed: int) -> Iterator[DyckTableau]:
        if placed == total:
            yield DyckTableau(tuple(rows))
            return
        above = rows[-1] if rows else None
        cap = len(above) if above is not None else (total if max_cols is None else max_cols)
        values = sorted(v for v, c in left.items() if c)
        for row in _gap_subsets(values, cap):
            if above is not None and any(above[p] > row[p] + 1 for p in range(len(row))):
                continue
            for v in row:
                left[v] -= 1
            rows.append(row)
            yield from rec(placed + len(row))
            rows.pop()
            for v in row:
                left[v] += 1

    yield from rec(0)


def enumerate_dyck_tableaux(multiset: Iterable[int], d: int, max_cols: Optional[int] = None) -> Iterator[DyckTableau]:
    for t in all_dyck_tableaux(multiset, max_cols):
        if di(t.reading_word()) == d:
            yield t


# ---------------------------------------------------------------------------
# verification reports

@dataclass(frozen=True)
class ExpansionReport:
    ok: bool
    lhs_terms: int
    rhs_terms: int
    tableaux: int
    first_difference: Optional[tuple] = None


def verify_schur_expansion(multiset: Iterable[int], d: int, n_vars: int, mode: str) -> ExpansionReport:
    """DS* = sum s_lambda(P) (dual) and DS = sum s_lambda(P)' (affine)."""
    s = tuple(multiset)
    lhs = dyck_symmetric_function(s, d, mode, n_vars)
    rhs = TruncPoly.zero(n_vars)
    count = 0
    for t in enumerate_dyck_tableaux(s, d):
        lam = Partition(t.shape)
        if mode == AFFINE:
            lam = lam.conjugate()
        elif mode != DUAL:
            raise ValueError(f"unknown mode {mode!r}")
        rhs = rhs + schur(lam, n_vars)
        count += 1
    if not s and d == 0:
        # the empty tableau contributes s_() = 1
        rhs = TruncPoly.one(n_vars)
        count = 1
    diff = lhs.first_difference(rhs)
    return ExpansionReport(diff is None, len(lhs.terms), len(rhs.terms), count, diff)


@dataclass(frozen=True)
class ComplementReport:
    ok: bool
    dual_sets: int
    affine_sets: int
    first_difference: Optional[tuple] = None


def fundamental_complement_check(multiset: Iterable[int], d: int, n_vars: Optional[int] = None) -> ComplementReport:
    """Complementing every forced set in the DS* expansion yields DS.

    Works on the D -> multiplicity maps directly; n_vars is accepted for
    interface symmetry and, when given, the truncated polynomials are compared
    as well.
    """
    s = tuple(multiset)
    n = len(s)
    dual = fundamental_expansion(s, d, DUAL)
    affine = fundamental_expansion(s, d, AFFINE)
    full = frozenset(range(n - 1))
    image: Counter = Counter({full - D: c for D, c in dual.items()})
    diff = None
    if image != affine:
        for key in sorted(set(image) | set(affine), key=sorted):
            if image[key] != affine[key]:
                diff = (tuple(sorted(key)), image[key], affine[key])
                break
    elif n_vars is not None and s:
        lhs = TruncPoly.zero(n_vars)
        for D, c in image.items():
            lhs = lhs + fundamental(n, D, n_vars).scale(c)
        rhs = dyck_symmetric_function(s, d, AFFINE, n_vars)
        bad = lhs.first_difference(rhs)
        if bad is not None:
            diff = bad
    return ComplementReport(diff is None, len(dual), len(affine), diff)
