"""Integer-sequence kernel.

Sequences are plain tuples of ints, indexed from 0.  This module holds the
step-condition predicates (affine, ordinary Dyck, dual, reverse, interval),
the pair statistics area/di/nv/dinv/defc, deficit-pair accounting,
leftmost extraction and injection, skeleton tests, Dyck enumeration, and the
brute-force q,t-Catalan polynomial.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional

IntSeq = tuple[int, ...]

DEFAULT_CAP = 12


class DomainError(ValueError):
    """An input violates the documented precondition of an operation."""


class InjectionError(DomainError):
    """inject() found no occurrence of e - 1."""


class ResourceError(RuntimeError):
    """A configured enumeration cap was exceeded."""


class SeqParseError(ValueError):
    def __init__(self, text: str, pos: int, reason: str):
        self.text = text
        self.pos = pos
        self.reason = reason
        super().__init__(f"{reason} at position {pos} in {text!r}")


# ---------------------------------------------------------------------------
# text encoding

def format_seq(s: Iterable[int]) -> str:
    """Canonical encoding: ``[0,1,2]`` with no spaces."""
    return "[" + ",".join(str(x) for x in s) + "]"


_TOKEN = re.compile(r"\s*(-?\d+)\s*")


def parse_seq(text: str) -> IntSeq:
    """Parse ``[0,1,2]`` or ``[0, 1, 2]`` (brackets optional)."""
    body = text.strip()
    offset = len(text) - len(text.lstrip())
    if body.startswith("["):
        if not body.endswith("]"):
            raise SeqParseError(text, offset + len(body), "missing closing ']'")
        body = body[1:-1]
        offset += 1
    if body.strip() == "":
        return ()
    out = []
    pos = 0
    for piece in body.split(","):
        m = _TOKEN.fullmatch(piece)
        if m is None:
            raise SeqParseError(text, offset + pos, f"expected an integer, got {piece.strip()!r}")
        out.append(int(m.group(1)))
        pos += len(piece) + 1
    return tuple(out)


# ---------------------------------------------------------------------------
# classification

def is_affine(s: Iterable[int]) -> bool:
    s = tuple(s)
    return all(s[i + 1] <= s[i] + 1 for i in range(len(s) - 1))


def is_dyck(s: Iterable[int]) -> bool:
    """Ordinary Dyck: nonempty, starts at 0, nonnegative, affine."""
    s = tuple(s)
    return bool(s) and s[0] == 0 and min(s) >= 0 and is_affine(s)


def is_dual(s: Iterable[int]) -> bool:
    s = tuple(s)
    return all(s[i + 1] >= s[i] + 2 for i in range(len(s) - 1))


def is_reverse(s: Iterable[int]) -> bool:
    s = tuple(s)
    return all(s[i + 1] >= s[i] - 1 for i in range(len(s) - 1))


def in_interval(s: Iterable[int], a: int, b: int) -> bool:
    s = tuple(s)
    if a > b:
        return not s
    return all(a <= x <= b for x in s)


@dataclass(frozen=True)
class SeqClass:
    affine: bool
    ordinary_dyck: bool
    dual: bool
    reverse: bool
    interval_ok: Optional[bool] = None


def classify(s: Iterable[int], a: Optional[int] = None, b: Optional[int] = None) -> SeqClass:
    s = tuple(s)
    interval = None
    if a is not None and b is not None:
        interval = in_interval(s, a, b)
    return SeqClass(
        affine=is_affine(s),
        ordinary_dyck=is_dyck(s),
        dual=is_dual(s),
        reverse=is_reverse(s),
        interval_ok=interval,
    )


def require_dyck(s: IntSeq, what: str = "sequence") -> None:
    if not is_dyck(s):
        raise DomainError(f"{what} must be an ordinary Dyck sequence: {format_seq(s)}")


# ---------------------------------------------------------------------------
# statistics

def di(s: Iterable[int]) -> int:
    """Pairs i < j with s_i = s_j + 1."""
    s = tuple(s)
    seen: Counter = Counter()
    total = 0
    # scan right to left: count later entries equal to x - 1
    for x in reversed(s):
        total += seen[x - 1]
        seen[x] += 1
    return total


def nv(s: Iterable[int]) -> int:
    return sum(comb(c, 2) for c in Counter(s).values())


def dinv(s: Iterable[int]) -> int:
    return di(s) + nv(s)


def area(s: Iterable[int]) -> int:
    s = tuple(s)
    if any(x < 0 for x in s):
        raise DomainError(f"area is defined for nonnegative words only: {format_seq(s)}")
    return sum(s)


def defc(s: Iterable[int]) -> int:
    s = tuple(s)
    return comb(len(s), 2) - area(s) - dinv(s)


@dataclass(frozen=True)
class Stats:
    area: int
    di: int
    nv: int
    dinv: int
    defc: int


def statistics(s: Iterable[int]) -> Stats:
    """All five statistics, each from its defining pair count."""
    s = tuple(s)
    if any(x < 0 for x in s):
        raise DomainError(f"statistics need nonnegative entries: {format_seq(s)}")
    d = n = 0
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] == s[j] + 1:
                d += 1
            elif s[i] == s[j]:
                n += 1
    a = sum(s)
    return Stats(area=a, di=d, nv=n, dinv=d + n, defc=comb(len(s), 2) - a - d - n)


# ---------------------------------------------------------------------------
# deficit pairs

@dataclass(frozen=True)
class DeficitPairReport:
    type_a: tuple[tuple[int, int], ...]
    type_b: tuple[tuple[int, int], ...]
    missing_correction: int

    @property
    def value(self) -> int:
        return len(self.type_a) + len(self.type_b) - self.missing_correction


def deficit_pairs(s: Iterable[int]) -> DeficitPairReport:
    """Type A: s_i > s_j + 1.  Type B: s_i < s_j with i not the first
    occurrence of its value.  The correction counts, for each j, the values
    v < s_j that do not occur before j."""
    s = tuple(s)
    if any(x < 0 for x in s):
        raise DomainError(f"deficit pairs need nonnegative entries: {format_seq(s)}")
    first: dict[int, int] = {}
    for i, x in enumerate(s):
        first.setdefault(x, i)
    type_a = []
    type_b = []
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j] + 1:
                type_a.append((i, j))
            elif s[i] < s[j] and first[s[i]] != i:
                type_b.append((i, j))
    correction = 0
    present: set[int] = set()
    for x in s:
        correction += sum(1 for v in range(x) if v not in present)
        present.add(x)
    return DeficitPairReport(tuple(type_a), tuple(type_b), correction)


def suffix_corrected_bound(t: Iterable[int], suffix_len: int) -> int:
    """Lower bound P(T) - A_s(T) for defc(T), where T = R:s.

    R must be ordinary Dyck, s nonempty reverse Dyck, and the last entry of s
    must occur in R.
    """
    t = tuple(t)
    if not 1 <= suffix_len <= len(t):
        raise DomainError(f"suffix length {suffix_len} out of range for {format_seq(t)}")
    r, s = t[: len(t) - suffix_len], t[len(t) - suffix_len:]
    if r and not is_dyck(r):
        raise DomainError(f"prefix is not ordinary Dyck: {format_seq(r)}")
    if not r:
        # an empty prefix cannot contain the last suffix value
        raise DomainError("prefix must be nonempty")
    if not is_reverse(s):
        raise DomainError(f"suffix is not reverse Dyck: {format_seq(s)}")
    if s[-1] not in r:
        raise DomainError(f"last suffix value {s[-1]} does not occur in the prefix")
    report = deficit_pairs(t)
    start = len(r)
    inside = sum(1 for i, j in report.type_a if i >= start)
    return len(report.type_a) + len(report.type_b) - inside


# ---------------------------------------------------------------------------
# enumeration

def enumerate_dyck(n: int) -> Iterator[IntSeq]:
    """All ordinary Dyck sequences of length n; next entry ranges over
    0..last+1 in ascending order."""
    if n <= 0:
        raise DomainError(f"length must be positive, got {n}")
    seq = [0]

    def rec() -> Iterator[IntSeq]:
        if len(seq) == n:
            yield tuple(seq)
            return
        for x in range(seq[-1] + 2):
            seq.append(x)
            yield from rec()
            seq.pop()

    yield from rec()


def distinct_permutations(items: Iterable[int]) -> Iterator[IntSeq]:
    """Distinct orderings of a multiset, in lexicographic order."""
    counts = sorted(Counter(items).items())
    values = [v for v, _ in counts]
    left = [c for _, c in counts]
    total = sum(left)
    out: list[int] = []

    def rec() -> Iterator[IntSeq]:
        if len(out) == total:
            yield tuple(out)
            return
        for idx, v in enumerate(values):
            if left[idx]:
                left[idx] -= 1
                out.append(v)
                yield from rec()
                out.pop()
                left[idx] += 1

    yield from rec()


# ---------------------------------------------------------------------------
# extraction and injection

def find_extractable(s: Iterable[int], *, check: bool = True) -> Optional[tuple[int, int]]:
    """Leftmost eligible index j and its value.

    Eligible: s_j has exactly one copy of s_j - 1 to its left, and the next
    entry (if any) is at most s_j.  With check=False the scan is also run on
    non-Dyck words, as the global maps need.
    """
    s = tuple(s)
    if check:
        require_dyck(s)
    seen: Counter = Counter()
    r = len(s)
    for j, x in enumerate(s):
        if x != 0 and seen[x - 1] == 1 and (j + 1 == r or s[j + 1] <= x):
            return j, x
        seen[x] += 1
    return None


def find_nonfinal_extractable(s: Iterable[int]) -> Optional[tuple[int, int]]:
    s = tuple(s)
    seen: Counter = Counter()
    r = len(s)
    for j in range(r - 1):
        x = s[j]
        if x != 0 and seen[x - 1] == 1 and s[j + 1] <= x:
            return j, x
        seen[x] += 1
    return None


def remove_at(s: IntSeq, j: int) -> IntSeq:
    return s[:j] + s[j + 1:]


def inject(s: Iterable[int], e: int) -> IntSeq:
    """Insert e immediately after the first occurrence of e - 1."""
    s = tuple(s)
    for i, x in enumerate(s):
        if x == e - 1:
            out = s[: i + 1] + (e,) + s[i + 1:]
            if not is_dyck(out):
                raise InjectionError(f"injecting {e} into {format_seq(s)} gives non-Dyck {format_seq(out)}")
            return out
    raise InjectionError(f"cannot inject {e} into {format_seq(s)}: no {e - 1} present")


def inject_right_to_left(base: Iterable[int], entries: Iterable[int]) -> IntSeq:
    out = tuple(base)
    for e in reversed(tuple(entries)):
        out = inject(out, e)
    return out


# ---------------------------------------------------------------------------
# skeletons

def omega(n: int) -> IntSeq:
    if n < 2:
        raise DomainError(f"omega needs n >= 2, got {n}")
    return (0,) * (n - 1) + (1,)


def epsilon(n: int) -> IntSeq:
    if n < 4:
        raise DomainError(f"epsilon needs n >= 4, got {n}")
    return (0, 0, 1) + (0,) * (n - 4) + (1,)


def special_words(n: int) -> tuple[IntSeq, IntSeq]:
    return omega(n), epsilon(n)


def is_full_skeleton(s: Iterable[int]) -> bool:
    s = tuple(s)
    return is_dyck(s) and find_extractable(s, check=False) is None


def is_special_skeleton(s: Iterable[int]) -> bool:
    s = tuple(s)
    if not is_full_skeleton(s):
        return False
    return len(s) < 4 or s != epsilon(len(s))


def m_skeleton(s: Iterable[int]) -> Optional[int]:
    """m if s is a Dyck m-skeleton, else None."""
    s = tuple(s)
    if not is_dyck(s):
        return None
    m = max(s)
    if s[-1] != m or find_nonfinal_extractable(s) is not None:
        return None
    return m


@dataclass(frozen=True)
class SkeletonFlags:
    full: bool
    special: bool
    m_skeleton: Optional[int]


def skeleton_tests(s: Iterable[int]) -> SkeletonFlags:
    s = tuple(s)
    require_dyck(s)
    return SkeletonFlags(is_full_skeleton(s), is_special_skeleton(s), m_skeleton(s))


def adjoint(s: Iterable[int]) -> IntSeq:
    """(x_0..x_{m-1}) -> (-x_{m-1}, ..., -x_0)."""
    return tuple(-x for x in reversed(tuple(s)))


# ---------------------------------------------------------------------------
# q,t polynomials

@dataclass
class QtPoly:
    """Sparse bivariate polynomial with exact integer coefficients.

    terms maps (q_exponent, t_exponent) to a nonzero int.
    """

    terms: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> "QtPoly":
        return cls({(a, b): c})

    @classmethod
    def geometric(cls, lo: int, hi: int, total: int) -> "QtPoly":
        """sum_{j=lo}^{hi} q^j t^(total-j)."""
        return cls({(j, total - j): 1 for j in range(lo, hi + 1)})

    def add_term(self, a: int, b: int, c: int = 1) -> None:
        v = self.terms.get((a, b), 0) + c
        if v:
            self.terms[(a, b)] = v
        else:
            self.terms.pop((a, b), None)

    def __add__(self, other: "QtPoly") -> "QtPoly":
        out = QtPoly(dict(self.terms))
        for (a, b), c in other.terms.items():
            out.add_term(a, b, c)
        return out

    def __neg__(self) -> "QtPoly":
        return QtPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "QtPoly") -> "QtPoly":
        return self + (-other)

    def __mul__(self, other: "QtPoly") -> "QtPoly":
        out = QtPoly()
        for (a, b), c in self.terms.items():
            for (x, y), z in other.terms.items():
                out.add_term(a + x, b + y, c * z)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QtPoly):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, a: int, b: int) -> int:
        return self.terms.get((a, b), 0)

    def swap(self) -> "QtPoly":
        return QtPoly({(b, a): c for (a, b), c in self.terms.items()})

    def is_symmetric(self) -> bool:
        return self == self.swap()

    def restrict_degree(self, lo: int, hi: Optional[int] = None) -> "QtPoly":
        return QtPoly({
            (a, b): c for (a, b), c in self.terms.items()
            if a + b >= lo and (hi is None or a + b <= hi)
        })

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """Total degree descending, then q-exponent descending."""
        keys = sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0]))
        return [(a, b, self.terms[(a, b)]) for a, b in keys]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, b, c in self.sorted_terms():
            factors = []
            if a:
                factors.append("q" if a == 1 else f"q^{a}")
            if b:
                factors.append("t" if b == 1 else f"t^{b}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[a, b, c] for a, b, c in self.sorted_terms()]


def brute_force_catalan(n: int, cap: int = DEFAULT_CAP, max_defc: Optional[int] = None) -> QtPoly:
    """sum over Dyck sequences D of length n of q^area(D) t^dinv(D).

    With max_defc, only paths of deficit at most max_defc are summed.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceError(f"n={n} exceeds the brute-force cap {cap}")
    acc: Counter = Counter()
    counts = [0] * (n + 2)
    seq = [0]
    counts[0] = 1
    top = comb(n, 2)

    def rec(a: int, dv: int) -> None:
        if len(seq) == n:
            if max_defc is None or top - a - dv <= max_defc:
                acc[(a, dv)] += 1
            return
        for x in range(seq[-1] + 2):
            gain = counts[x] + counts[x + 1]
            seq.append(x)
            counts[x] += 1
            rec(a + x, dv + gain)
            counts[x] -= 1
            seq.pop()

    rec(0, 0)
    return QtPoly(dict(acc))
