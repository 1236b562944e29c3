"""Dual-Dyck row insertion and the tableau/factorization bijection.

rowsert pushes a dual Dyck word into a dual Dyck row and collects the evicted
entries; worsert undoes it from the right.  tabsert threads rowsert through
the rows of a Dyck tableau.  insert_factorization and extract_factorization
are the two directions of the bijection between dual Dyck factorizations and
pairs (P, Q) of a Dyck tableau and a semistandard recording tableau.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .seqcore import DomainError, IntSeq, di, format_seq, is_dual

HALF = Fraction(1, 2)


class TableauError(DomainError):
    """A tableau invariant or a reverse-insertion hypothesis failed.

    ``state`` holds a snapshot of the mutable state at the failure.
    """

    def __init__(self, message: str, state: Optional[dict] = None):
        super().__init__(message)
        self.state = state or {}


# ---------------------------------------------------------------------------
# chains

def max_chain(s: Sequence[int], p: int, direction: str = "start") -> int:
    """Length of the maximal +2-chain starting (or ending) at index p."""
    if not 0 <= p < len(s):
        raise IndexError(f"index {p} out of range for length {len(s)}")
    length = 1
    if direction == "start":
        while p + length < len(s) and s[p + length] == s[p + length - 1] + 2:
            length += 1
    elif direction == "end":
        while p - length >= 0 and s[p - length] == s[p - length + 1] - 2:
            length += 1
    else:
        raise ValueError(f"direction must be 'start' or 'end', got {direction!r}")
    return length


# ---------------------------------------------------------------------------
# traces

@dataclass(frozen=True)
class TraceStep:
    case: int
    index: Optional[int]
    alphas: tuple[Fraction, ...]


@dataclass
class RowsertTrace:
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def has_case0(self) -> bool:
        return any(st.case == 0 for st in self.steps)

    def alpha_sequence(self) -> list[Fraction]:
        return [a for st in self.steps for a in st.alphas]


def _require_dual(name: str, s: IntSeq) -> None:
    if not is_dual(s):
        raise DomainError(f"{name} must be dual Dyck: {format_seq(s)}")


# ---------------------------------------------------------------------------
# row insertion

def rowsert(r0: Iterable[int], f0: Iterable[int], *, trace: bool = False,
            check: bool = True) -> tuple[IntSeq, IntSeq, Optional[RowsertTrace]]:
    """rowsert(R, F) -> (E, R', trace)."""
    r = list(r0)
    f = list(f0)
    if check:
        _require_dual("row", tuple(r))
        _require_dual("input", tuple(f))
    e: list[int] = []
    tr = RowsertTrace() if trace else None
    while f:
        a = f[0]
        i = next((idx for idx, x in enumerate(r) if a <= x + 1), None)
        if i is None:
            f.pop(0)
            r.append(a)
            if tr is not None:
                tr.steps.append(TraceStep(0, None, ()))
        elif a <= r[i]:
            f.pop(0)
            e.append(r[i])
            r[i] = a
            if tr is not None:
                tr.steps.append(TraceStep(1, i, (Fraction(i),)))
        else:
            j = max_chain(r, i, "start")
            k = max_chain(f, 0, "start")
            if j <= k:
                x = f[:j]
                del f[:j]
                e.extend(r[i:i + j])
                r[i:i + j] = x
                if tr is not None:
                    tr.steps.append(TraceStep(2, i, tuple(Fraction(i + h) for h in range(j))))
            else:
                x = f[:k]
                del f[:k]
                e.extend(x)
                if tr is not None:
                    tr.steps.append(TraceStep(3, i, tuple(i + h + HALF for h in range(k))))
    return tuple(e), tuple(r), tr


def worsert(e0: Iterable[int], r0: Iterable[int], *, trace: bool = False,
            check: bool = True) -> tuple[IntSeq, IntSeq, Optional[RowsertTrace]]:
    """worsert(E, R) -> (R', F, trace)."""
    e = list(e0)
    r = list(r0)
    if check:
        _require_dual("evicted word", tuple(e))
        _require_dual("row", tuple(r))
    f: list[int] = []
    tr = RowsertTrace() if trace else None
    while e:
        b = e[-1]
        i = next((idx for idx in range(len(r) - 1, -1, -1) if b >= r[idx] - 1), None)
        if i is None:
            e.pop()
            r.insert(0, b)
            if tr is not None:
                tr.steps.append(TraceStep(0, None, ()))
        elif b >= r[i]:
            e.pop()
            f.insert(0, r[i])
            r[i] = b
            if tr is not None:
                tr.steps.append(TraceStep(1, i, (Fraction(i),)))
        else:
            j = max_chain(r, i, "end")
            k = max_chain(e, len(e) - 1, "end")
            if j <= k:
                x = e[-j:]
                del e[-j:]
                f[:0] = r[i - j + 1:i + 1]
                r[i - j + 1:i + 1] = x
                if tr is not None:
                    tr.steps.append(TraceStep(2, i, tuple(Fraction(i - j + 1 + h) for h in range(j))))
            else:
                x = e[-k:]
                del e[-k:]
                f[:0] = x
                if tr is not None:
                    tr.steps.append(TraceStep(3, i, tuple(i - k + h + HALF for h in range(k))))
    return tuple(r), tuple(f), tr


# ---------------------------------------------------------------------------
# tableaux

@dataclass(frozen=True)
class DyckTableau:
    """Rows listed top to bottom; empty rows are never stored."""

    rows: tuple[IntSeq, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for j, row in enumerate(rows):
            if not row:
                raise TableauError(f"row {j} is empty", {"rows": rows})
            if not is_dual(row):
                raise TableauError(f"row {j} is not dual Dyck: {format_seq(row)}", {"rows": rows})
            if j + 1 < len(rows):
                low = rows[j + 1]
                if len(low) > len(row):
                    raise TableauError(f"row {j + 1} is longer than row {j}", {"rows": rows})
                for p in range(len(low)):
                    if row[p] > low[p] + 1:
                        raise TableauError(
                            f"column condition fails at row {j}, column {p}", {"rows": rows})

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def reading_word(self) -> IntSeq:
        """RR(P): rows read bottom to top, each left to right."""
        return tuple(x for row in reversed(self.rows) for x in row)

    def num_columns(self) -> int:
        return len(self.rows[0]) if self.rows else 0


@dataclass(frozen=True)
class RecordingTableau:
    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for j, row in enumerate(rows):
            if not row:
                raise TableauError(f"recording row {j} is empty", {"rows": rows})
            if any(v < 0 for v in row):
                raise TableauError("recording labels must be nonnegative", {"rows": rows})
            if any(row[p] > row[p + 1] for p in range(len(row) - 1)):
                raise TableauError(f"recording row {j} is not weakly increasing", {"rows": rows})
            if j + 1 < len(rows):
                low = rows[j + 1]
                if len(low) > len(row):
                    raise TableauError(f"recording row {j + 1} is longer than row {j}", {"rows": rows})
                if any(row[p] >= low[p] for p in range(len(low))):
                    raise TableauError(f"recording columns not strict below row {j}", {"rows": rows})

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def content(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for row in self.rows:
            for v in row:
                out[v] = out.get(v, 0) + 1
        return out


@dataclass(frozen=True)
class DualFactorization:
    """Factors F_0, F_1, ... with trailing empty factors dropped."""

    factors: tuple[IntSeq, ...] = ()

    def __post_init__(self) -> None:
        fs = [tuple(x) for x in self.factors]
        while fs and not fs[-1]:
            fs.pop()
        for i, x in enumerate(fs):
            if not is_dual(x):
                raise DomainError(f"factor {i} is not dual Dyck: {format_seq(x)}")
        object.__setattr__(self, "factors", tuple(fs))

    def word(self) -> IntSeq:
        return tuple(v for x in self.factors for v in x)

    @property
    def di_value(self) -> int:
        return di(self.word())

    def weight(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.factors)

    def __str__(self) -> str:
        return "|".join(format_seq(x) for x in self.factors)


def _tabsert_rows(rows: list[IntSeq], f: IntSeq) -> tuple[list[IntSeq], list[int]]:
    """Returns the new rows and the index of every row that grew (with
    multiplicity one per added cell)."""
    rows = list(rows)
    grown: list[int] = []
    carry = f
    for j in range(len(rows)):
        if not carry:
            break
        old_len = len(rows[j])
        carry, rows[j], _ = rowsert(rows[j], carry, check=False)
        grown.extend([j] * (len(rows[j]) - old_len))
    if carry:
        grown.extend([len(rows)] * len(carry))
        rows.append(carry)
    return rows, grown


def tabsert(t: DyckTableau, f: Iterable[int]) -> DyckTableau:
    f = tuple(f)
    _require_dual("inserted word", f)
    rows, _ = _tabsert_rows(list(t.rows), f)
    return DyckTableau(tuple(rows))


def insert_factorization(fac: DualFactorization | Iterable[Iterable[int]]) -> tuple[DyckTableau, RecordingTableau]:
    if not isinstance(fac, DualFactorization):
        fac = DualFactorization(tuple(tuple(x) for x in fac))
    rows: list[IntSeq] = []
    labels: list[list[int]] = []
    for i, x in enumerate(fac.factors):
        if not x:
            continue
        rows, grown = _tabsert_rows(rows, x)
        for j in grown:
            if j == len(labels):
                labels.append([])
            labels[j].append(i)
    return DyckTableau(tuple(rows)), RecordingTableau(tuple(tuple(r) for r in labels))


def extract_factorization(p: DyckTableau, q: RecordingTableau) -> DualFactorization:
    """Inverse of insert_factorization: peel label strips from the largest
    label down and run worsert upward through the truncated rows."""
    if p.shape != q.shape:
        raise TableauError(f"shape mismatch {p.shape} vs {q.shape}")
    rows = [list(r) for r in p.rows]
    labels = [list(r) for r in q.rows]
    top = max((v for r in labels for v in r), default=-1)
    factors: list[IntSeq] = [()] * (top + 1)
    for lab in range(top, -1, -1):
        carry: IntSeq = ()
        for j in range(len(rows) - 1, -1, -1):
            cut = len(labels[j])
            while cut and labels[j][cut - 1] == lab:
                cut -= 1
            plus = tuple(rows[j][cut:])
            minus = tuple(rows[j][:cut])
            if not carry:
                new_row, f_minus = minus, ()
            else:
                if len(carry) > len(minus):
                    raise TableauError(
                        "carried word longer than the truncated row (length hypothesis)",
                        {"label": lab, "row": j, "carry": carry, "truncated": minus})
                new_row, f_minus, tr = worsert(carry, minus, trace=True, check=False)
                if tr.has_case0:
                    raise TableauError(
                        "reverse row insertion hit Case 0 (no-Case-0 hypothesis)",
                        {"label": lab, "row": j, "carry": carry, "truncated": minus})
            carry = f_minus + plus
            if not is_dual(carry):
                raise TableauError(
                    "carried word is not dual Dyck (dual-Dyck hypothesis)",
                    {"label": lab, "row": j, "carry": carry})
            rows[j] = list(new_row)
            del labels[j][cut:]
        factors[lab] = carry
        while rows and not rows[-1]:
            rows.pop()
            labels.pop()
    if rows:
        raise TableauError("cells left after peeling every label", {"rows": rows})
    return DualFactorization(tuple(factors))
