"""Check reports, golden fixtures and the shared worker pool."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable, Iterable, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

PASS = "pass"
FAIL = "fail"
THREADS_ENV = "DYCKLAB_THREADS"


@dataclass
class CheckReport:
    name: str
    status: str = PASS
    counters: dict[str, Any] = field(default_factory=dict)
    first_failure: Optional[str] = None
    mismatches: list[tuple[str, Any, Any]] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def fail(self, message: str) -> None:
        self.status = FAIL
        if self.first_failure is None:
            self.first_failure = message

    def compare(self, golden: dict[str, Any], only: Optional[Iterable[str]] = None) -> None:
        """Check counters against golden values; missing counters count as 0."""
        labels = golden if only is None else [k for k in golden if k in set(only)]
        for label in labels:
            want = golden[label]
            got = self.counters.get(label, 0 if isinstance(want, int) else None)
            if got != want:
                self.mismatches.append((label, got, want))
                self.fail(f"counter {label!r}: got {got!r}, expected {want!r}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "counters": {k: _jsonable(v) for k, v in self.counters.items()},
            "first_failure": self.first_failure,
            "mismatches": [[k, _jsonable(g), _jsonable(w)] for k, g, w in self.mismatches],
        }

    def render(self) -> str:
        out = [f"== {self.name}"]
        out.extend(self.lines)
        for k, v in self.counters.items():
            out.append(f"{k}\t{_text(v)}")
        for k, got, want in self.mismatches:
            out.append(f"MISMATCH {k}: got {_text(got)}, expected {_text(want)}")
        if self.first_failure:
            out.append(f"first failure: {self.first_failure}")
        out.append(f"status: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(out)


def _jsonable(v: Any) -> Any:
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _text(v: Any) -> str:
    if v is None:
        return "--"
    if isinstance(v, tuple):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


def _parse_value(text: str) -> Any:
    text = text.strip()
    if text == "--":
        return None
    if text.startswith("[") and text.endswith("]"):
        return tuple(int(x) for x in text[1:-1].split(",") if x.strip())
    try:
        return int(text)
    except ValueError:
        return text


def load_golden(name: str) -> dict[str, Any]:
    """Read fixtures/<name>.tsv: `label<TAB>value` lines, `#` comments.

    Values are integers, `--` for an absent entry, or `[a,b,...]` tuples.
    """
    text = resources.files("dycklab").joinpath("fixtures", f"{name}.tsv").read_text(encoding="utf-8")
    out: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        label, sep, value = line.rpartition("\t")
        if not sep:
            raise ValueError(f"{name}.tsv:{lineno}: expected label<TAB>value")
        if label in out:
            raise ValueError(f"{name}.tsv:{lineno}: duplicate label {label!r}")
        out[label] = _parse_value(value)
    return out


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        threads = int(env) if env else 1
    return max(1, threads)


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> list[R]:
    """map() with an optional process pool; results keep input order."""
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))
