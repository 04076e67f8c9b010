"""Rank/unrank algorithms against enumeration and each other."""

import random
from itertools import product

import pytest

from sktgc import binary, codec
from sktgc.errors import InvalidLength, NotInCode, RankOutOfRange


def k2_code(n):
    return binary.build_2sktgc(n, "B")


def k1_code(n):
    return binary.build_1sktgc(binary.odd_base(), n - 1, "B")


class TestLevelSize:
    def test_seed_value(self):
        assert codec.level_size(1) == 4

    def test_recurrence(self):
        for i in range(1, 20):
            assert codec.level_size(i + 1) == 4 * codec.level_size(i) + 2

    @pytest.mark.parametrize("i", range(1, 11))
    def test_matches_enumerated_component(self, i):
        code = binary.build_1sktgc(binary.odd_base(), i - 1, "A")
        assert len(code) == codec.level_size(i)

    def test_rejects_zero(self):
        with pytest.raises(Exception):
            codec.level_size(0)


class TestK2Codec:
    def test_frozen_examples(self):
        assert codec.decode_2((0, 0, 0, 0), 4) == 0
        assert codec.decode_2((1, 0, 1, 0), 4) == 8
        assert str(codec.encode_2(0, 4)) == "0000"
        assert str(codec.encode_2(8, 4)) == "1010"
        assert str(codec.encode_2(13, 4)) == "0010"

    def test_rejects_missing_words(self):
        with pytest.raises(NotInCode):
            codec.decode_2((0, 1, 0, 0), 4)
        with pytest.raises(NotInCode):
            codec.decode_2((0, 1, 0, 1), 4)
        for n in (5, 9, 16):
            e = [0] * n
            e[n - 3] = 1
            with pytest.raises(NotInCode):
                codec.decode_2(e, n)
            e[n - 1] = 1
            with pytest.raises(NotInCode):
                codec.decode_2(e, n)

    def test_rank_range(self):
        with pytest.raises(RankOutOfRange):
            codec.encode_2((1 << 6) - 2, 6)
        with pytest.raises(RankOutOfRange):
            codec.encode_2(-1, 6)

    @pytest.mark.parametrize("n", range(4, 12))
    def test_matches_enumeration(self, n):
        code = k2_code(n)
        for i in range(len(code)):
            syms = code.symbols(i)
            assert codec.decode_2(syms, n) == i
            assert codec.encode_2(i, n).symbols == syms

    def test_length_three_roundtrip(self):
        # the recursion starts one level up; at n=3 the algorithms index
        # the first six seed words
        words = [codec.encode_2(i, 3).symbols for i in range(6)]
        assert words == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1),
                         (1, 1, 0), (1, 0, 0)]
        for i, w in enumerate(words):
            assert codec.decode_2(w, 3) == i
        for bad in ((0, 1, 0), (1, 0, 1)):
            with pytest.raises(NotInCode):
                codec.decode_2(bad, 3)

    @pytest.mark.parametrize("n", (13, 14, 15, 16))
    def test_roundtrip_identity_large(self, n):
        for r in range((1 << n) - 2):
            assert codec.decode_2(codec.encode_2(r, n).symbols, n) == r

    def test_random_ranks_deep(self):
        rng = random.Random(2024)
        for n in (20, 30):
            total = (1 << n) - 2
            for _ in range(2500):
                r = rng.randrange(total)
                assert codec.decode_2(codec.encode_2(r, n).symbols, n) == r

    def test_consecutive_ranks_step_property(self):
        rng = random.Random(5)
        for n in (20, 30):
            total = (1 << n) - 2
            prev_pos = None
            r0 = rng.randrange(total - 64)
            words = [codec.encode_2(r0 + i, n).symbols for i in range(64)]
            for a, b in zip(words, words[1:]):
                diff = [i for i in range(n) if a[i] != b[i]]
                assert len(diff) == 1
                if prev_pos is not None:
                    assert abs(diff[0] - prev_pos) <= 2
                prev_pos = diff[0]


class TestCompleteK2Codec:
    @pytest.mark.parametrize("n", range(4, 12))
    def test_matches_enumeration(self, n):
        code = binary.build_2sktgc(n, "C")
        for i in range(len(code)):
            syms = code.symbols(i)
            assert codec.decode_2c(syms, n) == i
            assert codec.encode_2c(i, n).symbols == syms

    def test_no_rejections_and_range(self):
        with pytest.raises(RankOutOfRange):
            codec.encode_2c(16, 4)
        with pytest.raises(InvalidLength):
            codec.decode_2c((0, 0, 0), 3)


class TestK1Codec:
    def test_frozen_examples(self):
        assert codec.decode_1((0, 0, 0, 0, 0), 2) == 0
        assert codec.decode_1((1, 1, 1, 1, 1), 2) == 5
        assert str(codec.encode_1(0, 2)) == "00000"
        assert str(codec.encode_1(15, 2)) == "00010"
        assert str(codec.encode_1(5, 2)) == "11111"

    def test_rejects_dropped_and_foreign_words(self):
        with pytest.raises(NotInCode):
            codec.decode_1((0, 0, 1, 0, 0), 2)
        # inner window dropped when growing past the n=3 level
        with pytest.raises(NotInCode):
            codec.decode_1((0, 0, 0, 0, 0, 0, 1, 0, 0), 4)
        # ladder pattern one step beyond the last growth round
        with pytest.raises(NotInCode):
            codec.decode_1((0, 1, 0, 1, 0), 2)

    def test_rank_range(self):
        total = codec.level_size(4) - 2
        with pytest.raises(RankOutOfRange):
            codec.encode_1(total, 4)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_matches_enumeration(self, n):
        code = k1_code(n)
        for i in range(len(code)):
            syms = code.symbols(i)
            assert codec.decode_1(syms, n) == i
            assert codec.encode_1(i, n).symbols == syms

    @pytest.mark.parametrize("n", (2, 3, 4, 5))
    def test_rejection_complete_over_hypercube(self, n):
        code = k1_code(n)
        index = {code.symbols(i): i for i in range(len(code))}
        for w in product((0, 1), repeat=2 * n + 1):
            if w in index:
                assert codec.decode_1(w, n) == index[w]
            else:
                with pytest.raises(NotInCode):
                    codec.decode_1(w, n)

    @pytest.mark.parametrize("n", (8, 9))
    def test_roundtrip_identity_large(self, n):
        total = codec.level_size(n) - 2
        for r in range(total):
            assert codec.decode_1(codec.encode_1(r, n).symbols, n) == r

    def test_random_ranks_deep(self):
        rng = random.Random(99)
        for n in (20, 30):
            total = codec.level_size(n) - 2
            for _ in range(2500):
                r = rng.randrange(total)
                assert codec.decode_1(codec.encode_1(r, n).symbols, n) == r

    def test_consecutive_ranks_adjacent_positions(self):
        rng = random.Random(6)
        for n in (20, 30):
            total = codec.level_size(n) - 2
            r0 = rng.randrange(total - 64)
            words = [codec.encode_1(r0 + i, n).symbols for i in range(64)]
            prev_pos = None
            for a, b in zip(words, words[1:]):
                diff = [i for i in range(2 * n + 1) if a[i] != b[i]]
                assert len(diff) == 1
                if prev_pos is not None:
                    assert abs(diff[0] - prev_pos) <= 1
                prev_pos = diff[0]

    def test_signed_indexing_of_output(self):
        word = codec.encode_1(3, 4)
        assert word.indexing.left_label == -4
        assert word.n == 9


class _CountingSeq(list):
    """Sequence that counts item reads, for the linear-work check."""

    def __init__(self, items):
        super().__init__(items)
        self.reads = 0

    def __getitem__(self, i):
        self.reads += 1
        return super().__getitem__(i)


class TestLinearWork:
    def test_decode_reads_grow_linearly(self):
        reads = {}
        for n in (16, 32, 64, 128):
            w = _CountingSeq(codec.encode_1(codec.level_size(n) // 3, n).symbols)
            codec.decode_1(w, n)
            reads[n] = w.reads
        assert reads[32] <= 8 * max(1, reads[16])
        # doubling n roughly doubles the reads, far from quadratic growth
        assert reads[128] <= 3 * reads[64]
        assert reads[128] <= 20 * 257

    def test_decode2_reads_grow_linearly(self):
        reads = {}
        for n in (16, 32, 64, 128):
            w = _CountingSeq(codec.encode_2((1 << n) // 3, n).symbols)
            codec.decode_2(w, n)
            reads[n] = w.reads
        assert reads[128] <= 3 * reads[64]
        assert reads[128] <= 20 * 128

    def test_encode_level_calls_linear(self, monkeypatch):
        calls = {"n": 0}
        real = codec.level_size

        def counting(i):
            calls["n"] += 1
            return real(i)

        monkeypatch.setattr(codec, "level_size", counting)
        codec.encode_1(codec.level_size(64) // 2, 64)
        assert calls["n"] <= 4 * 64
