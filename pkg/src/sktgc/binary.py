"""Binary skew-tolerant code families.

Three recursive builders cover the k = 3, 2, 1 regimes:

* ``build_3sktgc``   -- complete cyclic codes, consecutive changes within 3.
* ``build_2sktgc``   -- the A/B/C family: a non-cyclic code one word short of
  complete, a cyclic code two words short, and a complete cyclic code.
* ``build_1sktgc``   -- the doubling engine that grows a seed ("base case")
  into cyclic codes whose size is a constant fraction of 2^N.  The classic
  odd- and even-length families are the instances with the two built-in
  seeds; two larger searched seeds ship as bundled data.

All builders return :class:`~sktgc.core.Code` and refuse to materialize more
than ``MAX_MATERIALIZED`` words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .core import (MAX_MATERIALIZED, Code, STANDARD, parse_listing,
                   signed_indexing, sym_width)
from .errors import (CodeTooLarge, InvalidBase, InvalidLength,
                     InvalidParameters)


def _bits(s: str) -> int:
    """Pack a left-to-right bit string (leftmost symbol in the low bit)."""
    v = 0
    for i, ch in enumerate(s):
        if ch == "1":
            v |= 1 << i
    return v


def _guard_size(p: int) -> None:
    if p > MAX_MATERIALIZED:
        raise CodeTooLarge(f"{p} words exceed the {MAX_MATERIALIZED}-word bound; use rank/unrank")


# --- k = 3 ------------------------------------------------------------------

def build_3sktgc(n: int) -> Code:
    """Complete cyclic code of length n with consecutive changes within 3.

    Each level stacks a zero row, the previous level with a 1 appended, and
    the reversed previous level (first row dropped) with a 0 appended.
    """
    if n < 1:
        raise InvalidLength("n must be at least 1")
    _guard_size(1 << n)
    words = [0, 1]
    for i in range(1, n):
        top = 1 << i
        words = [0] + [w | top for w in words] + words[:0:-1]
    return Code.from_packed(words, n, 2, cyclic=True)


# --- k = 2 ------------------------------------------------------------------

_A3 = [_bits(s) for s in ("000", "001", "011", "111", "110", "100", "101")]


def _c2_b_from_a(a: list[int], length: int) -> list[int]:
    """B of length+1 from A of the given length (same block shape as k=3)."""
    top = 1 << length
    return [0] + [w | top for w in a] + a[:0:-1]


def _c2_a(n: int) -> list[int]:
    a = list(_A3)
    for i in range(3, n):
        b = _c2_b_from_a(a, i)
        # replace the final word by the two words missing from B
        a = b[:-1] + [1 << (i - 2), (1 << (i - 2)) | (1 << i)]
    return a


def build_2sktgc(n: int, variant: str) -> Code:
    """One of the three k=2 codes: A (non-cyclic, 2^n - 1 words, never
    contains the unit vector at position n-1), B (cyclic, 2^n - 2), or
    C (cyclic complete)."""
    if variant not in ("A", "B", "C"):
        raise ValueError("variant must be A, B or C")
    if variant == "A":
        if n < 3:
            raise InvalidLength("variant A needs n >= 3")
    elif n < 4:
        raise InvalidLength(f"variant {variant} needs n >= 4")
    _guard_size(1 << n)
    if variant == "A":
        return Code.from_packed(_c2_a(n), n, 2, cyclic=False)
    b = _c2_b_from_a(_c2_a(n - 1), n - 1)
    if variant == "B":
        return Code.from_packed(b, n, 2, cyclic=True)
    missing = 1 << (n - 3)  # unit vector at position n-2
    return Code.from_packed([0, missing, missing | (1 << (n - 1))] + b[1:],
                            n, 2, cyclic=True)


# --- k = 1 ------------------------------------------------------------------

@dataclass(frozen=True)
class BaseCase:
    """Seed for the k=1 doubling engine.

    The code is binary, non-cyclic, signed-indexed over positions -L..R,
    and must satisfy the four admissibility conditions checked by
    ``base_condition_failures``.
    """

    left: int
    right: int
    code: Code

    @property
    def n0(self) -> int:
        return self.left + self.right + 1

    @property
    def size(self) -> int:
        return self.code.size


def staircase_words(right: int, n: int, offset: int) -> list[int]:
    """The opening ladder: zero, then ones filling positions right..0.

    Packed for words of length n whose leftmost symbol has offset 0 and
    whose position 0 sits at storage offset ``offset``.
    """
    words = [0]
    acc = 0
    for p in range(right, -1, -1):
        acc |= 1 << (p + offset)
        words.append(acc)
    return words


def forbidden_words(left: int, right: int, offset: int) -> list[int]:
    """Words that must stay out of a base: ones at 1..right and at -1..-j."""
    pos = sum(1 << (p + offset) for p in range(1, right + 1))
    out = []
    acc = pos
    for j in range(1, left + 1):
        acc |= 1 << (offset - j)
        out.append(acc)
    return out


def base_condition_failures(code: Code, left: int, right: int) -> list[str]:
    """Check the four base-case conditions; return one message per failure."""
    failures = []
    n = left + right + 1
    if code.m != 2:
        return [f"base must be binary, got m={code.m}"]
    if code.n != n:
        return [f"base length {code.n} != L+R+1 = {n}"]
    if code.cyclic:
        failures.append("base must be non-cyclic")
    words = code.words
    # condition: non-cyclic 1-SkTGC with distinct words
    if len(set(words)) != len(words):
        failures.append("words are not distinct")
    prev_pos = None
    ok_steps = True
    for i in range(1, len(words)):
        z = words[i - 1] ^ words[i]
        if z == 0 or z & (z - 1):
            failures.append(f"words {i - 1},{i} do not differ in exactly one bit")
            ok_steps = False
            break
        pos = z.bit_length() - 1
        if prev_pos is not None and abs(pos - prev_pos) > 1:
            failures.append(f"changes {i - 1},{i} are {abs(pos - prev_pos)} apart")
            ok_steps = False
            break
        prev_pos = pos
    # condition: first change at position R, last change at position -L
    if ok_steps and len(words) >= 2:
        first = (words[0] ^ words[1]).bit_length() - 1
        if first != right + left:
            failures.append(f"first change at offset {first}, want position {right}")
        last = (words[-2] ^ words[-1]).bit_length() - 1
        if last != 0:
            failures.append(f"last change at offset {last}, want position {-left}")
    # condition: starts with the staircase
    stair = staircase_words(right, n, left)
    if list(words[:len(stair)]) != stair:
        failures.append(f"missing staircase prefix of {len(stair)} words")
    # condition: excluded words absent
    present = set(words)
    for j, w in enumerate(forbidden_words(left, right, left), start=1):
        if w in present:
            failures.append(f"contains excluded word (negative run length {j})")
    return failures


def make_base(code: Code, left: int, right: int) -> BaseCase:
    """Wrap a validated seed code; raises InvalidBase listing violations."""
    failures = base_condition_failures(code, left, right)
    if failures:
        raise InvalidBase(failures)
    return BaseCase(left, right, code.with_indexing(signed_indexing(left)))


def _builtin(rows: list[str], left: int, right: int) -> BaseCase:
    code = Code.from_rows([[int(c) for c in r] for r in rows], 2,
                          indexing=signed_indexing(left))
    return make_base(code, left, right)


def odd_base() -> BaseCase:
    """Built-in seed for the odd-length family (N0=3, L=R=1)."""
    return _builtin(["000", "001", "011", "111"], 1, 1)


def even_base() -> BaseCase:
    """Built-in seed for the even-length family (N0=4, L=2, R=1)."""
    return _builtin(["0000", "0001", "0011", "0111", "1111"], 2, 1)


def bundled_base(n0: int) -> BaseCase:
    """Bundled optimal seeds found by exhaustive search: lengths 6 and 7
    (47 and 108 words), giving the best known even/odd constants."""
    names = {6: "base_n6_l4_r1.txt", 7: "base_n7_l3_r3.txt"}
    if n0 not in names:
        raise InvalidParameters("bundled bases exist for n0 = 6 and 7")
    text = resources.files("sktgc.data").joinpath(names[n0]).read_text()
    code = parse_listing(text)
    left = -code.indexing.left_label
    return make_base(code, left, code.n - 1 - left)


def _c5_b_from_a(a: list[int], width: int) -> list[int]:
    """Four-block doubling step; widens words by one column on each side."""
    top = 1 << (width + 1)
    shifted = [w << 1 for w in a]
    return ([0]
            + [w | top for w in shifted]
            + [w | 1 | top for w in reversed(shifted)]
            + [w | 1 for w in shifted]
            + [w for w in reversed(shifted[1:])])


def _c5_a_from_b(b: list[int], left: int, right: int, step: int) -> list[int]:
    """Swap the tail of B for the ladder of words running into the left end."""
    remove = right + step - 2
    keep = b[:len(b) - remove] if remove > 0 else list(b)
    offset = left + step  # storage offset of position 0
    ones = sum(1 << (p + offset) for p in range(1, right + step))
    tail = []
    acc = ones
    for j in range(1, left + step + 1):
        acc |= 1 << (offset - j)
        tail.append(acc)
    return keep + tail


def build_1sktgc(base: BaseCase, steps: int, variant: str) -> Code:
    """Grow a base case for `steps` doubling rounds.

    Variant B returns the cyclic code produced at the last round (steps >= 1);
    variant A returns the non-cyclic code that seeds the next round.
    """
    if variant not in ("A", "B"):
        raise ValueError("variant must be A or B")
    if steps < 0:
        raise InvalidParameters("steps must be >= 0")
    if variant == "B" and steps < 1:
        raise InvalidParameters("variant B needs steps >= 1")
    failures = base_condition_failures(base.code, base.left, base.right)
    if failures:
        raise InvalidBase(failures)
    _guard_size(predicted_size("1sktgc-general", a0=base.size, n0=base.n0,
                               left=base.left, right=base.right, steps=steps,
                               variant=variant))
    a = list(base.code.words)
    left, right = base.left, base.right
    width = base.n0
    for s in range(1, steps + 1):
        b = _c5_b_from_a(a, width)
        width += 2
        if variant == "B" and s == steps:
            return Code.from_packed(b, width, 2, cyclic=True,
                                    indexing=signed_indexing(left + s))
        a = _c5_a_from_b(b, left, right, s)
    return Code.from_packed(a, width, 2, cyclic=False,
                            indexing=signed_indexing(left + steps))


def build_1sktgc_odd(n: int, variant: str = "B") -> Code:
    """Odd-length family: length 2n+1, size (7/12)*2^(2n+1) - 8/3 for B."""
    if n < 1 or (variant == "B" and n < 2):
        raise InvalidLength("odd family needs n >= 2 (variant A allows n >= 1)")
    return build_1sktgc(odd_base(), n - 1, variant)


def build_1sktgc_even(n: int, variant: str = "B") -> Code:
    """Even-length family: length 2n+2, size (3/8)*2^(2n+2) - 4 for B."""
    if n < 1 or (variant == "B" and n < 2):
        raise InvalidLength("even family needs n >= 2 (variant A allows n >= 1)")
    return build_1sktgc(even_base(), n - 1, variant)


# --- predicted sizes ---------------------------------------------------------

def growth_constant(a0: int, n0: int, left: int, right: int) -> Fraction:
    """Limit of size/2^N for the doubling engine: (a0 + (L-R+2)/3) / 2^N0."""
    return Fraction(3 * a0 + (left - right + 2), 3 * (1 << n0))


def _general_size(a0: int, n0: int, left: int, right: int, steps: int,
                  variant: str) -> int:
    d = left - right + 2
    n_total = n0 + 2 * steps
    b = Fraction((1 << n_total) * (3 * a0 + d), 3 * (1 << n0)) - Fraction(4 * d, 3)
    if variant == "A":
        b += d
    if b.denominator != 1:
        raise InvalidParameters("size formula does not give an integer; bad parameters")
    return int(b)


def predicted_size(family: str, *, n: int | None = None, a0: int | None = None,
                   n0: int | None = None, left: int | None = None,
                   right: int | None = None, steps: int | None = None,
                   variant: str = "B", m: int | None = None) -> int:
    """Closed-form size of a family member (exact integer).

    Families: 3sktgc, 2sktgc-a/b/c, 1sktgc-odd/even (parameter n),
    1sktgc-general (a0, n0, left, right, steps, variant),
    mary (m, n), quaternary, ternary-nc, ternary-c (n).
    """
    def need(value, name):
        if value is None:
            raise InvalidParameters(f"family {family!r} needs parameter {name}")
        return value

    if family == "3sktgc":
        n = need(n, "n")
        if n < 1:
            raise InvalidParameters("n must be >= 1")
        return 1 << n
    if family in ("2sktgc-a", "2sktgc-b", "2sktgc-c"):
        n = need(n, "n")
        low = 3 if family == "2sktgc-a" else 4
        if n < low:
            raise InvalidParameters(f"n must be >= {low}")
        return (1 << n) - {"2sktgc-a": 1, "2sktgc-b": 2, "2sktgc-c": 0}[family]
    if family == "1sktgc-odd":
        n = need(n, "n")
        if n < 1:
            raise InvalidParameters("n must be >= 1")
        return _general_size(4, 3, 1, 1, n - 1, variant)
    if family == "1sktgc-even":
        n = need(n, "n")
        if n < 1:
            raise InvalidParameters("n must be >= 1")
        return _general_size(5, 4, 2, 1, n - 1, variant)
    if family == "1sktgc-general":
        a0 = need(a0, "a0")
        n0 = need(n0, "n0")
        left = need(left, "left")
        right = need(right, "right")
        steps = need(steps, "steps")
        if left < 1 or right < 1 or n0 != left + right + 1 or steps < 0:
            raise InvalidParameters("bad base parameters")
        return _general_size(a0, n0, left, right, steps, variant)
    if family == "mary":
        m = need(m, "m")
        n = need(n, "n")
        if m < 5 or n < 1:
            raise InvalidParameters("mary family needs m >= 5, n >= 1")
        return m ** n
    if family == "quaternary":
        n = need(n, "n")
        if n < 1:
            raise InvalidParameters("n must be >= 1")
        return 4 ** n
    if family in ("ternary-nc", "ternary-c"):
        n = need(n, "n")
        low = 2 if family == "ternary-nc" else 3
        if n < low:
            raise InvalidParameters(f"n must be >= {low}")
        return 3 ** n
    raise InvalidParameters(f"unknown family {family!r}")
