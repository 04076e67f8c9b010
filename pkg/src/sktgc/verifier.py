"""Construction-independent property checker.

``verify`` re-derives everything from the stored words: it never consults
how a code was built, so it can serve as the oracle for every builder in
the package.  ``induced_graph`` and ``compatible`` cover the graph view:
the positions touched by consecutive changes, compared against the banded
(Toeplitz) graph whose bandwidth encodes the skew bound k.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import Code, TransitionSequence, rate_metrics, sym_width, _step_fields
from .errors import PositionOutOfRange


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of one checked property, with the first counterexample."""

    passed: bool
    index: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class VerificationReport:
    """Findings of ``verify`` for a single code."""

    m: int
    n: int
    size: int
    cyclic: bool
    distinct: PropertyCheck
    gray: PropertyCheck
    closure: Optional[PropertyCheck]  # None for non-cyclic codes
    complete: bool
    k_min: Optional[int]              # None when the step checks fail
    jump_histogram: dict[int, int] = field(default_factory=dict)
    density: Fraction = Fraction(0)
    rate: float = 0.0
    expected_k: Optional[int] = None

    @property
    def size2_jumps(self) -> int:
        return self.jump_histogram.get(2, 0)

    @property
    def k_ok(self) -> Optional[bool]:
        if self.expected_k is None:
            return None
        return self.k_min is not None and self.k_min <= self.expected_k

    @property
    def passed(self) -> bool:
        if not (self.distinct and self.gray):
            return False
        if self.closure is not None and not self.closure:
            return False
        if self.expected_k is not None and not self.k_ok:
            return False
        return True

    def lines(self) -> list[str]:
        """Line-oriented key=value rendering."""
        def check(c: Optional[PropertyCheck]) -> str:
            if c is None:
                return "n/a"
            if c.passed:
                return "pass"
            return f"fail:{c.index}" if c.index is not None else "fail"

        out = [
            f"m={self.m}",
            f"n={self.n}",
            f"size={self.size}",
            f"cyclic={1 if self.cyclic else 0}",
            f"distinct={check(self.distinct)}",
            f"gray={check(self.gray)}",
            f"closure={check(self.closure)}",
            f"complete={1 if self.complete else 0}",
            f"k_min={self.k_min if self.k_min is not None else 'n/a'}",
            f"size2_jumps={self.size2_jumps}",
            f"density={float(self.density):.10g}",
            f"rate={self.rate:.10g}",
        ]
        if self.expected_k is not None:
            out.append(f"expected_k={self.expected_k}")
            out.append(f"k_ok={1 if self.k_ok else 0}")
        out.append(f"result={'pass' if self.passed else 'fail'}")
        return out

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "size": self.size,
            "cyclic": self.cyclic,
            "distinct": self.distinct.passed,
            "distinct_index": self.distinct.index,
            "gray": self.gray.passed,
            "gray_index": self.gray.index,
            "closure": None if self.closure is None else self.closure.passed,
            "complete": self.complete,
            "k_min": self.k_min,
            "jump_histogram": {str(k): v for k, v in sorted(self.jump_histogram.items())},
            "size2_jumps": self.size2_jumps,
            "density": float(self.density),
            "rate": self.rate,
            "expected_k": self.expected_k,
            "k_ok": self.k_ok,
            "result": self.passed,
        }


def verify(code: Code, expected_k: Optional[int] = None) -> VerificationReport:
    """Check distinctness, step validity, cyclic closure, completeness and
    the skew profile of a code.  Failures become report entries, never
    exceptions."""
    words = code.words
    p = len(words)
    w = sym_width(code.m)

    seen = {}
    distinct = PropertyCheck(True)
    for i, word in enumerate(words):
        if word in seen:
            distinct = PropertyCheck(False, i, f"word {i} repeats word {seen[word]}")
            break
        seen[word] = i

    positions = []
    gray = PropertyCheck(True)
    for i in range(p - 1):
        step = _step_fields(words[i], words[i + 1], code.n, code.m, w)
        if step is None:
            gray = PropertyCheck(False, i, f"words {i},{i + 1} differ by more than one unit")
            break
        positions.append(step[0])

    closure = None
    if code.cyclic and gray.passed:
        if p < 2:
            closure = PropertyCheck(False, 0, "cyclic code needs at least 2 words")
        else:
            step = _step_fields(words[-1], words[0], code.n, code.m, w)
            if step is None:
                closure = PropertyCheck(False, p - 1, "last-to-first step invalid")
            else:
                closure = PropertyCheck(True)
                positions.append(step[0])
    elif code.cyclic:
        closure = PropertyCheck(False, gray.index, "step check failed before closure")

    k_min = None
    histogram: Counter = Counter()
    steps_ok = gray.passed and (closure is None or closure.passed)
    if steps_ok:
        k_min = 0
        count = len(positions)
        pairs = count if code.cyclic else count - 1
        for i in range(pairs):
            gap = abs(positions[(i + 1) % count] - positions[i])
            histogram[gap] += 1
            if gap > k_min:
                k_min = gap

    metrics = rate_metrics(code)
    complete = distinct.passed and p == code.m ** code.n
    return VerificationReport(
        m=code.m, n=code.n, size=p, cyclic=code.cyclic,
        distinct=distinct, gray=gray, closure=closure, complete=complete,
        k_min=k_min, jump_histogram=dict(histogram),
        density=metrics.density, rate=metrics.rate, expected_k=expected_k,
    )


@dataclass(frozen=True)
class TransitionGraph:
    """Graph on positions 1..n with an edge for each consecutive change pair."""

    n: int
    multiplicity: dict[tuple[int, int], int]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.multiplicity)

    def to_dot(self, name: str = "transitions") -> str:
        lines = [f"graph {name} {{"]
        for v in range(1, self.n + 1):
            lines.append(f"  {v};")
        for (u, v), count in sorted(self.multiplicity.items()):
            label = f' [label="{count}"]' if count > 1 else ""
            lines.append(f"  {u} -- {v}{label};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def induced_graph(ts: TransitionSequence, n: int) -> TransitionGraph:
    """Edge multiset {position_i, position_i+1} over consecutive transition
    pairs (wrapping for cyclic sequences).  Positions must be standard 1..n."""
    positions = ts.positions
    for pos in positions:
        if not 1 <= pos <= n:
            raise PositionOutOfRange(f"position {pos} outside 1..{n}")
    multiplicity: Counter = Counter()
    count = len(positions)
    pairs = count if ts.cyclic else count - 1
    for i in range(pairs):
        u = positions[i]
        v = positions[(i + 1) % count]
        multiplicity[(min(u, v), max(u, v))] += 1
    return TransitionGraph(n, dict(multiplicity))


def compatible(g: TransitionGraph, k: int, n: int, allow_self_loops: bool = True) -> bool:
    """True iff g is a subgraph of the banded graph of bandwidth k on 1..n
    (self-loops excluded when allow_self_loops is false)."""
    for (u, v) in g.edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise PositionOutOfRange(f"edge ({u},{v}) outside 1..{n}")
        if u == v and not allow_self_loops:
            return False
        if abs(u - v) > k:
            return False
    return True


def toeplitz_edges(k: int, n: int, self_loops: bool = False) -> frozenset[tuple[int, int]]:
    """Full edge set of the banded graph of bandwidth k on vertices 1..n."""
    edges = {(i, j) for i in range(1, n + 1) for j in range(i + 1, min(i + k, n) + 1)}
    if self_loops:
        edges |= {(i, i) for i in range(1, n + 1)}
    return frozenset(edges)
