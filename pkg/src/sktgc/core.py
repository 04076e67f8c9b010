"""Core domain types: codewords, codes, transition sequences, rate metrics.

Words are stored bit-packed: each symbol occupies ``sym_width(m)`` bits and
the *leftmost* written symbol sits in the least-significant field.  All
position arithmetic inside the library uses 0-based storage offsets; the
user-facing labels (standard ``1..n`` or signed ``-L..R``) are views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import EmptyResult, ListingError, NotAGrayStep

# Codes above this word count are never materialized; rank/unrank covers them.
MAX_MATERIALIZED = 1 << 24

# Asymptotic rate of the earlier recursive skew-tolerant construction,
# kept as a comparison point: log2(3)/2.
BASELINE_RATE = math.log2(3) / 2


def sym_width(m: int) -> int:
    """Bits reserved per symbol in packed words."""
    return max(1, (m - 1).bit_length())


def pack_row(symbols: Sequence[int], m: int) -> int:
    """Pack symbols (leftmost first) into an int, leftmost in the low field."""
    w = sym_width(m)
    value = 0
    for i, s in enumerate(symbols):
        if not 0 <= s < m:
            raise ValueError(f"symbol {s} out of range for alphabet size {m}")
        value |= s << (w * i)
    return value


def unpack_row(value: int, n: int, m: int) -> tuple[int, ...]:
    """Inverse of :func:`pack_row`."""
    w = sym_width(m)
    mask = (1 << w) - 1
    return tuple((value >> (w * i)) & mask for i in range(n))


@dataclass(frozen=True)
class Indexing:
    """Position-label convention for a code.

    Standard indexing labels positions 1..n left to right.  Signed indexing
    labels them -L..R with L, R >= 1 and L+R+1 = n; the doubling
    construction for 1-skew-tolerant codes numbers positions this way.
    Storage is always 0-based from the left; this class only converts.
    """

    left_label: int = 1

    @property
    def is_signed(self) -> bool:
        return self.left_label < 1

    def offset(self, label: int, n: int) -> int:
        """Storage offset of a position label."""
        i = label - self.left_label
        if not 0 <= i < n:
            raise IndexError(f"position {label} outside {self.describe(n)}")
        return i

    def label(self, offset: int) -> int:
        return offset + self.left_label

    def labels(self, n: int) -> range:
        return range(self.left_label, self.left_label + n)

    def token(self, n: int) -> str:
        """Header token for the canonical listing format."""
        if not self.is_signed:
            return "std"
        left = -self.left_label
        return f"signed:{left},{n - 1 - left}"

    def describe(self, n: int) -> str:
        return f"positions {self.left_label}..{self.left_label + n - 1}"


STANDARD = Indexing(1)


def signed_indexing(left: int) -> Indexing:
    """Signed convention with `left` positions to the left of index 0."""
    if left < 1:
        raise ValueError("signed indexing needs at least one position left of 0")
    return Indexing(-left)


def parse_indexing_token(token: str) -> Indexing:
    if token == "std":
        return STANDARD
    if token.startswith("signed:"):
        try:
            left, right = (int(x) for x in token[len("signed:"):].split(","))
        except ValueError:
            raise ListingError(f"bad indexing token {token!r}") from None
        if left < 1 or right < 1:
            raise ListingError(f"bad indexing token {token!r}")
        return signed_indexing(left)
    raise ListingError(f"bad indexing token {token!r}")


@dataclass(frozen=True)
class Codeword:
    """A fixed-length word over Z_m with a position-labeling convention."""

    symbols: tuple[int, ...]
    m: int
    indexing: Indexing = STANDARD

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("alphabet size must be at least 2")
        if any(not 0 <= s < self.m for s in self.symbols):
            raise ValueError("symbol out of range")
        if self.indexing.is_signed:
            left = -self.indexing.left_label
            if self.n - 1 - left < 1:
                raise ValueError("signed indexing needs at least one position right of 0")

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __getitem__(self, label: int) -> int:
        return self.symbols[self.indexing.offset(label, self.n)]

    def segment(self, lo: int, hi: int) -> tuple[int, ...]:
        """Symbols from position label lo to hi, inclusive."""
        i = self.indexing.offset(lo, self.n)
        j = self.indexing.offset(hi, self.n)
        return self.symbols[i:j + 1]

    def packed(self) -> int:
        return pack_row(self.symbols, self.m)

    def __str__(self) -> str:
        if self.m <= 10:
            return "".join(str(s) for s in self.symbols)
        return " ".join(str(s) for s in self.symbols)


@dataclass(frozen=True)
class TransitionStep:
    """One change: position label and value direction (+1 or -1 mod m)."""

    position: int
    direction: int


@dataclass(frozen=True)
class TransitionSequence:
    """Per-step change records of a Gray code.

    Length is P-1 for non-cyclic codes and P for cyclic ones (the last
    entry records the wrap from the final word back to the first).
    """

    positions: tuple[int, ...]
    directions: tuple[int, ...]
    cyclic: bool

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, i: int) -> TransitionStep:
        return TransitionStep(self.positions[i], self.directions[i])

    def __iter__(self) -> Iterator[TransitionStep]:
        for p, d in zip(self.positions, self.directions):
            yield TransitionStep(p, d)

    @property
    def steps(self) -> tuple[TransitionStep, ...]:
        return tuple(self)


@dataclass(frozen=True)
class RateMetrics:
    """Size efficiency of a code: density P/m^n and rate log_m(P)/n."""

    density: Fraction
    rate: float


@dataclass(frozen=True)
class Code:
    """An ordered word sequence over Z_m with a cyclic flag.

    ``words`` holds packed ints (see module docstring).  Instances are
    immutable and safe to share; all operations on them are pure.
    """

    words: tuple[int, ...]
    n: int
    m: int
    cyclic: bool
    indexing: Indexing = STANDARD

    def __post_init__(self):
        if self.indexing.is_signed and -self.indexing.left_label > self.n - 2:
            raise ValueError("signed indexing needs positions on both sides of 0")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], m: int, *, cyclic: bool = False,
                  indexing: Indexing = STANDARD) -> "Code":
        rows = list(rows)
        if not rows:
            raise ValueError("a code needs at least one word")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("all words must have the same length")
        return cls(tuple(pack_row(r, m) for r in rows), n, m, cyclic, indexing)

    @classmethod
    def from_packed(cls, words: Iterable[int], n: int, m: int, *, cyclic: bool = False,
                    indexing: Indexing = STANDARD) -> "Code":
        """Trusted fast path for builders; symbols are not re-validated."""
        return cls(tuple(words), n, m, cyclic, indexing)

    @property
    def size(self) -> int:
        return len(self.words)

    def symbols(self, i: int) -> tuple[int, ...]:
        return unpack_row(self.words[i], self.n, self.m)

    def word(self, i: int) -> Codeword:
        return Codeword(self.symbols(i), self.m, self.indexing)

    def iter_codewords(self) -> Iterator[Codeword]:
        for i in range(self.size):
            yield self.word(i)

    def with_indexing(self, indexing: Indexing) -> "Code":
        return Code(self.words, self.n, self.m, self.cyclic, indexing)

    def standardized(self) -> "Code":
        """Same words relabeled with standard 1..n positions."""
        return self.with_indexing(STANDARD)

    def __len__(self) -> int:
        return self.size


def _step_fields(x: int, y: int, n: int, m: int, w: int):
    """Offset and direction of the single-symbol step x -> y, or None."""
    z = x ^ y
    if z == 0:
        return None
    f = (z.bit_length() - 1) // w
    shift = w * f
    mask = (1 << w) - 1
    if z & ((1 << shift) - 1):  # bits changed below the top field
        return None
    a = (x >> shift) & mask
    b = (y >> shift) & mask
    if m == 2:
        return f, (1 if b > a else -1)
    d = (b - a) % m
    if d == 1:
        return f, 1
    if d == m - 1:
        return f, -1
    return None


def transitions(code: Code) -> TransitionSequence:
    """Transition sequence of a Gray code.

    Raises NotAGrayStep at the first index where consecutive words (or the
    last-to-first pair of a cyclic code) do not differ by one +-1 step.
    """
    if code.size < 2:
        raise ValueError("transition sequence needs at least 2 words")
    w = sym_width(code.m)
    left = code.indexing.left_label
    words = code.words
    positions = []
    directions = []
    prev = words[0]
    for i in range(1, code.size):
        cur = words[i]
        step = _step_fields(prev, cur, code.n, code.m, w)
        if step is None:
            raise NotAGrayStep(i - 1)
        positions.append(step[0] + left)
        directions.append(step[1])
        prev = cur
    if code.cyclic:
        step = _step_fields(words[-1], words[0], code.n, code.m, w)
        if step is None:
            raise NotAGrayStep(code.size - 1)
        positions.append(step[0] + left)
        directions.append(step[1])
    return TransitionSequence(tuple(positions), tuple(directions), code.cyclic)


def from_transitions(first: Codeword, ts: TransitionSequence) -> Code:
    """Rebuild the code determined by its first word and transition sequence."""
    m = first.m
    w = sym_width(m)
    mask = (1 << w) - 1
    n = first.n
    left = first.indexing.left_label
    cur = first.packed()
    words = [cur]
    gen = len(ts) - 1 if ts.cyclic else len(ts)
    for i in range(gen):
        off = ts.positions[i] - left
        if not 0 <= off < n:
            raise ValueError(f"step {i} position {ts.positions[i]} out of range")
        shift = w * off
        s = (cur >> shift) & mask
        cur = (cur & ~(mask << shift)) | (((s + ts.directions[i]) % m) << shift)
        words.append(cur)
    if ts.cyclic:
        off = ts.positions[-1] - left
        shift = w * off
        s = (cur >> shift) & mask
        closed = (cur & ~(mask << shift)) | (((s + ts.directions[-1]) % m) << shift)
        if closed != words[0]:
            raise ValueError("cyclic transition sequence does not close on the first word")
    return Code.from_packed(words, n, m, cyclic=ts.cyclic, indexing=first.indexing)


_DERIVE_OPS = ("drop-first", "drop-last", "trim-both", "reverse")


def derive(code: Code, op: str) -> Code:
    """Drop the first or last word (or both), or reverse the word order.

    The result is always marked non-cyclic.
    """
    if op not in _DERIVE_OPS:
        raise ValueError(f"op must be one of {_DERIVE_OPS}")
    if code.size == 0:
        raise EmptyResult("cannot derive from an empty code")
    if op == "reverse":
        words = code.words[::-1]
    elif op == "drop-first":
        words = code.words[1:]
    elif op == "drop-last":
        words = code.words[:-1]
    else:
        if code.size < 2:
            raise ValueError("trim-both needs at least 2 words")
        words = code.words[1:-1]
    if not words:
        raise EmptyResult(f"{op} of a {code.size}-word code leaves no words")
    return Code(words, code.n, code.m, False, code.indexing)


def rate_metrics(code: Code) -> RateMetrics:
    """Density P/m^n (exact) and rate log_m(P)/n of a code."""
    p = code.size
    if p < 1:
        raise ValueError("metrics need a nonempty code")
    density = Fraction(p, code.m ** code.n)
    rate = math.log(p, code.m) / code.n
    return RateMetrics(density, rate)


# --- canonical text listing format -----------------------------------------
#
# One codeword per line, symbols as decimal digits left to right, preceded by
# a header line:  # m=<m> n=<n> cyclic=<0|1> indexing=<std|signed:L,R>

def format_listing(code: Code) -> str:
    if code.m > 10:
        raise ListingError("text listings support m <= 10; use the binary format")
    header = (f"# m={code.m} n={code.n} cyclic={1 if code.cyclic else 0}"
              f" indexing={code.indexing.token(code.n)}")
    lines = [header]
    for i in range(code.size):
        lines.append("".join(str(s) for s in code.symbols(i)))
    return "\n".join(lines) + "\n"


def parse_listing(text: str) -> Code:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ListingError("missing header line")
    fields = {}
    for item in lines[0][1:].split():
        if "=" not in item:
            raise ListingError(f"bad header item {item!r}")
        key, _, val = item.partition("=")
        fields[key] = val
    try:
        m = int(fields["m"])
        n = int(fields["n"])
        cyclic = bool(int(fields["cyclic"]))
        indexing = parse_indexing_token(fields["indexing"])
    except (KeyError, ValueError) as exc:
        raise ListingError(f"bad header: {exc}") from None
    if m < 2 or m > 10 or n < 1:
        raise ListingError("header out of range")
    if indexing.is_signed and -indexing.left_label > n - 2:
        raise ListingError("signed indexing inconsistent with n")
    rows = []
    for ln in lines[1:]:
        if len(ln) != n or not ln.isdigit():
            raise ListingError(f"bad codeword line {ln!r}")
        row = [int(ch) for ch in ln]
        if any(s >= m for s in row):
            raise ListingError(f"symbol out of range in line {ln!r}")
        rows.append(row)
    if not rows:
        raise ListingError("listing has no codewords")
    return Code.from_rows(rows, m, cyclic=cyclic, indexing=indexing)
