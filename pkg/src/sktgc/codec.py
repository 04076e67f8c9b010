"""Linear-time rank (decode) and unrank (encode) for two code families.

``decode_2``/``encode_2`` index the cyclic k=2 family of ``build_2sktgc(n, "B")``
(with ``decode_2c``/``encode_2c`` thin wrappers for the complete variant C);
``decode_1``/``encode_1`` index the odd-length k=1 family of
``build_1sktgc_odd(n)``.  Ranks are plain ints, 0 for the all-zero first word.

Both decoders classify the input's innermost segment (either a seed word or
one of the ladder words spliced in at some growth step), then walk outward
one level per position pair, so the work is O(n) symbol operations.  Words
may be passed as :class:`~sktgc.core.Codeword` or as any int sequence in
storage order (leftmost symbol first).
"""

from __future__ import annotations

from typing import Sequence

from .core import Codeword, signed_indexing
from .errors import InvalidLength, InvalidParameters, NotInCode, RankOutOfRange

# Seed codes of the two families, as symbol tuples (leftmost first).
_A3 = ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 1, 0), (1, 0, 0), (1, 0, 1))
_LOOKUP3 = {word: i for i, word in enumerate(_A3)}

_A1 = ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1))
_LOOKUP1 = {word: i for i, word in enumerate(_A1)}


def level_size(i: int) -> int:
    """Words in the level-i component of the odd k=1 family: (7*2^(2i+1)-8)/12."""
    if i < 1:
        raise InvalidParameters("level index must be >= 1")
    num = 7 * (1 << (2 * i + 1)) - 8
    return num // 12


def _symbols(word, expect: int) -> Sequence[int]:
    syms = word.symbols if isinstance(word, Codeword) else word
    if len(syms) != expect:
        raise InvalidLength(f"word has {len(syms)} symbols, expected {expect}")
    return syms


# --- k = 2 family -------------------------------------------------------------

def decode_2(word, n: int) -> int:
    """Rank of a word in the cyclic k=2 code of length n (first word 0 = rank 0).

    Raises NotInCode for the two words the code misses: the unit vector at
    position n-2 and that vector with position n also set.
    """
    if n < 3:
        raise InvalidLength("n must be >= 3")
    c = _symbols(word, n)
    if n >= 4:
        ones = [i for i, s in enumerate(c) if s]
        if ones == [n - 3] or ones == [n - 3, n - 1]:
            raise NotInCode("word is one of the two missing codewords")
    # Does the word come from a pair spliced in at step j?  Both splice
    # patterns put their first 1 at position j-2 and a 0 at j-1.
    n0 = 3
    pos = None
    t = next((i + 1 for i, s in enumerate(c) if s), None)  # 1-based first 1
    if t is not None and t >= 2 and t + 2 <= n - 1 and c[t] == 0:
        n0 = t + 2
        pos = (1 << n0) - 3 if c[t + 1] == 0 else (1 << n0) - 2
    if pos is None:
        n0 = 3
        key = tuple(c[:3])
        if key not in _LOOKUP3:
            raise NotInCode("prefix not in the seed code")
        pos = _LOOKUP3[key]
    for i in range(n0 + 1, n + 1):
        if c[i - 1]:
            pos += 1
        else:
            mod = (1 << i) - 2
            pos = (mod - pos) % mod
    if n == 3 and pos > 5:
        raise NotInCode("word is one of the two missing codewords")
    return pos


def encode_2(pos: int, n: int) -> Codeword:
    """Word at the given rank in the cyclic k=2 code of length n."""
    if n < 3:
        raise InvalidLength("n must be >= 3")
    if not 0 <= pos <= (1 << n) - 3:
        raise RankOutOfRange(f"rank {pos} outside 0..{(1 << n) - 3}")
    syms = [0] * n
    if n > 3:
        if 1 <= pos <= (1 << (n - 1)) - 1:
            syms[n - 1] = 1
            pos -= 1
        else:
            mod = (1 << n) - 2
            pos = (mod - pos) % mod
        for i in range(n - 1, 3, -1):
            if pos == (1 << i) - 2:
                syms[i - 3] = 1
                syms[i - 1] = 1
                return Codeword(tuple(syms), 2)
            if pos == (1 << i) - 3:
                syms[i - 3] = 1
                return Codeword(tuple(syms), 2)
            if 1 <= pos <= (1 << (i - 1)) - 1:
                syms[i - 1] = 1
                pos -= 1
            else:
                mod = (1 << i) - 2
                pos = (mod - pos) % mod
    syms[0:3] = _A3[pos]
    return Codeword(tuple(syms), 2)


def decode_2c(word, n: int) -> int:
    """Rank in the complete k=2 code: the two missing words are inserted at
    ranks 1 and 2, shifting the rest by 2."""
    if n < 4:
        raise InvalidLength("n must be >= 4")
    c = _symbols(word, n)
    ones = [i for i, s in enumerate(c) if s]
    if not ones:
        return 0
    if ones == [n - 3]:
        return 1
    if ones == [n - 3, n - 1]:
        return 2
    return decode_2(c, n) + 2


def encode_2c(pos: int, n: int) -> Codeword:
    """Word at the given rank in the complete k=2 code of length n."""
    if n < 4:
        raise InvalidLength("n must be >= 4")
    if not 0 <= pos < (1 << n):
        raise RankOutOfRange(f"rank {pos} outside 0..{(1 << n) - 1}")
    if pos == 0:
        return Codeword((0,) * n, 2)
    if pos in (1, 2):
        syms = [0] * n
        syms[n - 3] = 1
        if pos == 2:
            syms[n - 1] = 1
        return Codeword(tuple(syms), 2)
    return encode_2(pos - 2, n)


# --- k = 1 odd family ----------------------------------------------------------

def decode_1(word, n: int) -> int:
    """Rank of a signed-indexed word (positions -n..n) in the odd k=1 code.

    Raises NotInCode for words outside the code: those whose innermost
    segment was dropped at some growth step, and those that never match a
    seed or ladder pattern.
    """
    if n < 2:
        raise InvalidLength("n must be >= 2")
    c = _symbols(word, 2 * n + 1)
    mid = n  # storage offset of position 0

    n0 = 1
    pos = None
    if c[mid] == 0:
        # runs of 1s immediately right and left of position 0
        rp = 0
        while rp < n and c[mid + rp + 1] == 1:
            rp += 1
        rn = 0
        while rn < n and c[mid - rn - 1] == 1:
            rn += 1
        if rp >= 1:
            # ladder word spliced in at step m: ones at 1..m-1 and -1..-j.
            # Only the window -m..m is constrained; the ones run on the
            # negative side may continue past -m into free outer bits.
            m_ = rp + 1
            if 2 <= m_ <= n - 1 and rn >= 1:
                if rn >= m_:
                    n0 = m_
                    pos = level_size(m_) - 1
                elif all(c[mid - i] == 0 for i in range(rn + 1, m_ + 1)):
                    n0 = m_
                    pos = level_size(m_) - m_ - 1 + rn
        elif rn == 0:
            # word dropped at step m: ones at j..m-1 only, for some j >= 2
            fj = 0
            while fj < n and c[mid + fj + 1] == 0:
                fj += 1
            fj += 1  # 1-based position of first 1 on the right, n+1 if none
            if fj >= 2 and fj <= n:
                q = fj
                while q < n and c[mid + q + 1] == 1:
                    q += 1
                m_ = q + 1
                if m_ <= n - 1 and all(c[mid - i] == 0 for i in range(1, m_ + 1)):
                    raise NotInCode("inner segment was dropped at a growth step")
    if pos is None:
        key = (c[mid - 1], c[mid], c[mid + 1])
        if key not in _LOOKUP1:
            raise NotInCode("inner segment not in the seed code")
        n0 = 1
        pos = _LOOKUP1[key]

    for i in range(n0 + 1, n + 1):
        lm = level_size(i - 1)
        right = c[mid + i]
        left = c[mid - i]
        if right and not left:
            pos += 1
        elif right and left:
            pos = 2 * lm - pos
        elif left:
            pos = 2 * lm + 1 + pos
        else:
            pos = (4 * lm - pos) % (4 * lm)
    return pos


def _block_convert(pos: int, lm: int) -> tuple[int, int, int]:
    """Map an index in a doubled code to (left bit, right bit, inner index)."""
    if pos == 0:
        return 0, 0, 0
    if pos <= lm:
        return 0, 1, pos - 1
    if pos <= 2 * lm:
        return 1, 1, 2 * lm - pos
    if pos <= 3 * lm:
        return 1, 0, pos - (2 * lm + 1)
    return 0, 0, 4 * lm - pos


def encode_1(pos: int, n: int) -> Codeword:
    """Word at the given rank in the odd k=1 code of length 2n+1 (signed)."""
    if n < 2:
        raise InvalidLength("n must be >= 2")
    total = level_size(n) - 2
    if not 0 <= pos < total:
        raise RankOutOfRange(f"rank {pos} outside 0..{total - 1}")
    syms = [0] * (2 * n + 1)
    mid = n
    left, right, pos = _block_convert(pos, level_size(n - 1))
    syms[mid - n] = left
    syms[mid + n] = right
    for i in range(n - 1, 1, -1):
        li = level_size(i)
        if pos >= li - i:
            j = pos - li + i + 1
            for p in range(1, i):
                syms[mid + p] = 1
            for q in range(1, j + 1):
                syms[mid - q] = 1
            return Codeword(tuple(syms), 2, signed_indexing(n))
        left, right, pos = _block_convert(pos, level_size(i - 1))
        syms[mid - i] = left
        syms[mid + i] = right
    syms[mid - 1:mid + 2] = _A1[pos]
    return Codeword(tuple(syms), 2, signed_indexing(n))
