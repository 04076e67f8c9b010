"""Complete m-ary codes with consecutive changes in adjacent positions.

Three routes cover every alphabet size m >= 3:

* m >= 5: a direct recursion; the large alphabet leaves room for several
  consecutive changes in the newest position.
* m = 4: the complete binary k=2 code of twice the length, folded two bits
  at a time through the Gray pair map phi.
* m = 3: a non-cyclic recursion, plus a cyclic code built from three
  shifted copies of the non-cyclic one.
"""

from __future__ import annotations

from .core import Code, sym_width
from .errors import InvalidAlphabet, InvalidLength
from .binary import _guard_size, build_2sktgc

# The pair map phi: two bits (left, right) -> Z_4, a 2-bit Gray ordering,
# so one-bit neighbours map to values +-1 apart mod 4.
PAIR_MAP = {(0, 0): 0, (0, 1): 1, (1, 1): 2, (1, 0): 3}
PAIR_MAP_INVERSE = {v: k for k, v in PAIR_MAP.items()}

# Same map keyed by packed pair value (left bit low, as stored in words).
_PHI_PACKED = (0, 3, 1, 2)


def pair_map(left: int, right: int) -> int:
    """phi applied to one bit pair."""
    return PAIR_MAP[(left, right)]


def pair_map_inverse(value: int) -> tuple[int, int]:
    return PAIR_MAP_INVERSE[value]


def fold_pairs(word_symbols) -> tuple[int, ...]:
    """phi applied to the non-overlapping bit pairs of an even-length word."""
    syms = tuple(word_symbols)
    if len(syms) % 2:
        raise InvalidLength("pair folding needs an even-length word")
    return tuple(pair_map(syms[2 * i], syms[2 * i + 1]) for i in range(len(syms) // 2))


def build_mary_large(m: int, n: int) -> Code:
    """Complete cyclic code over Z_m for m >= 5.

    Each level prepends a run of the previous first word with the new
    symbol counting down m-3..0, then sweeps the previous code (first word
    dropped) forward and backward through all symbol values, and closes
    with the first word at values m-1 and m-2.
    """
    if m < 5:
        raise InvalidAlphabet("direct m-ary construction needs m >= 5")
    if n < 1:
        raise InvalidLength("n must be >= 1")
    _guard_size(m ** n)
    w = sym_width(m)
    words = list(range(m))
    for level in range(1, n):
        sh = w * level
        first = words[0]
        body = words[1:]
        rev = body[::-1]
        nxt = [first | (v << sh) for v in range(m - 3, -1, -1)]
        for v in range(m):
            block = body if v % 2 == 0 else rev
            nxt.extend(x | (v << sh) for x in block)
        nxt.append(first | ((m - 1) << sh))
        nxt.append(first | ((m - 2) << sh))
        words = nxt
    return Code.from_packed(words, n, m, cyclic=True)


def build_quaternary(n: int) -> Code:
    """Complete cyclic quaternary code: the binary k=2 complete code of
    length 2n folded through phi (for n = 1, the 4-word cyclic seed)."""
    if n < 1:
        raise InvalidLength("n must be >= 1")
    _guard_size(4 ** n)
    if n == 1:
        binary_words = [0b00, 0b10, 0b11, 0b01]  # 00, 01, 11, 10 left-to-right
    else:
        binary_words = build_2sktgc(2 * n, "C").words
    out = []
    for bw in binary_words:
        q = 0
        for f in range(n):
            q |= _PHI_PACKED[(bw >> (2 * f)) & 3] << (2 * f)
        out.append(q)
    return Code.from_packed(out, n, 4, cyclic=True)


_T2 = [0, 4, 8, 10, 2, 6, 5, 9, 1]  # 00 01 02 22 20 21 11 12 10 packed


def _ternary_noncyclic(n: int) -> list[int]:
    words = list(_T2)
    for level in range(2, n):
        sh = 2 * level
        first, last = words[0], words[-1]
        inner = words[1:-1]
        nxt = [first, first | (2 << sh), first | (1 << sh)]
        nxt += [x | (1 << sh) for x in inner]
        nxt += inner[::-1]
        nxt += [x | (2 << sh) for x in inner]
        nxt += [last | (2 << sh), last | (1 << sh), last]
        words = nxt
    return words


def _shift_first(x: int, k: int) -> int:
    """Add k (mod 3) to the symbol at position 1."""
    s = x & 3
    return (x ^ s) | ((s + k) % 3)


def build_ternary(n: int, cyclic: bool) -> Code:
    """Complete ternary code of length n.

    The non-cyclic form begins at the zero word and ends one unit above it
    in position 1; the cyclic form chains three shifted copies of the
    non-cyclic code of length n-1 under a new last symbol 0/1/2.
    """
    if cyclic:
        if n < 3:
            raise InvalidLength("cyclic ternary code needs n >= 3")
        _guard_size(3 ** n)
        inner = _ternary_noncyclic(n - 1)
        sh = 2 * (n - 1)
        words = list(inner)
        words += [_shift_first(x, 1) | (1 << sh) for x in inner]
        words += [_shift_first(x, 2) | (2 << sh) for x in inner]
        return Code.from_packed(words, n, 3, cyclic=True)
    if n < 2:
        raise InvalidLength("non-cyclic ternary code needs n >= 2")
    _guard_size(3 ** n)
    return Code.from_packed(_ternary_noncyclic(n), n, 3, cyclic=False)
