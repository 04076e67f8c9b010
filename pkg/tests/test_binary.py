"""Binary construction families: recursion structure, sizes, exclusions."""

import pytest

from conftest import all_words, rows_of, word_set
from sktgc import binary
from sktgc.core import Code, derive, signed_indexing, transitions
from sktgc.errors import (CodeTooLarge, InvalidBase, InvalidLength,
                          InvalidParameters)
from sktgc.verifier import verify


def eq1_prefix(n: int) -> list[str]:
    """0...0, 0...01, 0...011, ..., 1...1 (ones filling from the right)."""
    return ["0" * (n - k) + "1" * k for k in range(n + 1)]


def eq2_suffix(n: int) -> list[str]:
    """1...10, 01...10, ..., 0...010 (ones at t..n-1, descending runs)."""
    return ["0" * (t - 1) + "1" * (n - t) + "0" for t in range(1, n)]


class TestK3:
    def test_length_one_seed(self):
        assert rows_of(binary.build_3sktgc(1)) == ["0", "1"]

    def test_listed_length_three(self):
        assert rows_of(binary.build_3sktgc(3)) == [
            "000", "001", "011", "111", "101", "100", "110", "010"]

    def test_n10_complete_and_skew_3(self):
        report = verify(binary.build_3sktgc(10), expected_k=3)
        assert report.passed and report.complete and report.size == 1024
        assert report.k_min == 3

    @pytest.mark.parametrize("n", range(1, 15))
    def test_size_formula(self, n):
        assert len(binary.build_3sktgc(n)) == binary.predicted_size("3sktgc", n=n)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_prefix_and_suffix_patterns(self, n):
        rows = rows_of(binary.build_3sktgc(n))
        assert rows[:n + 1] == eq1_prefix(n)
        assert rows[-(n - 1):] == eq2_suffix(n)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_block_recursion(self, n):
        cur = binary.build_3sktgc(n)
        nxt = binary.build_3sktgc(n + 1)
        prefix = ["0" * (n + 1)] + [r + "1" for r in rows_of(cur)]
        suffix = [r + "0" for r in rows_of(derive(derive(cur, "drop-first"),
                                                  "reverse"))]
        assert rows_of(nxt) == prefix + suffix

    def test_rejects_bad_length(self):
        with pytest.raises(InvalidLength):
            binary.build_3sktgc(0)

    def test_refuses_oversized(self):
        with pytest.raises(CodeTooLarge):
            binary.build_3sktgc(25)


class TestK2:
    def test_seed_listing(self):
        assert rows_of(binary.build_2sktgc(3, "A")) == [
            "000", "001", "011", "111", "110", "100", "101"]

    def test_complete_variant_prefix(self):
        assert rows_of(binary.build_2sktgc(4, "C"))[:5] == [
            "0000", "0100", "0101", "0001", "0011"]

    def test_insertion_transition_order(self):
        # from the last codeword through the two inserted words: the
        # changes run n-1, n-2, n, n-2, n-1
        for n in (4, 5, 8):
            code = binary.build_2sktgc(n, "C")
            ts = transitions(code)
            assert ts.positions[-1] == n - 1
            assert ts.positions[:4] == (n - 2, n, n - 2, n - 1)

    def test_b4_missing_exactly_two_words(self):
        code = binary.build_2sktgc(4, "B")
        assert len(code) == 14
        missing = all_words(2, 4) - word_set(code)
        assert missing == {(0, 1, 0, 0), (0, 1, 0, 1)}

    @pytest.mark.parametrize("n", range(4, 15))
    def test_b_missing_unit_pair(self, n):
        code = binary.build_2sktgc(n, "B")
        e = tuple(1 if i == n - 3 else 0 for i in range(n))
        e2 = tuple(1 if i in (n - 3, n - 1) else 0 for i in range(n))
        missing = all_words(2, n) - word_set(code) if n <= 10 else None
        if missing is not None:
            assert missing == {e, e2}
        else:
            ws = word_set(code)
            assert e not in ws and e2 not in ws

    @pytest.mark.parametrize("n", range(3, 15))
    def test_a_never_contains_unit_before_last(self, n):
        code = binary.build_2sktgc(n, "A")
        e = tuple(1 if i == n - 2 else 0 for i in range(n))
        assert e not in word_set(code)

    @pytest.mark.parametrize("n", range(3, 15))
    def test_a_boundary_changes_in_last_position(self, n):
        ts = transitions(binary.build_2sktgc(n, "A"))
        assert ts.positions[0] == n and ts.positions[-1] == n

    @pytest.mark.parametrize("variant,offset", [("A", 1), ("B", 2), ("C", 0)])
    def test_sizes_and_skew(self, variant, offset):
        for n in range(4, 13):
            code = binary.build_2sktgc(n, variant)
            assert len(code) == (1 << n) - offset
            report = verify(code, expected_k=2)
            assert report.passed
            assert report.complete == (variant == "C")

    def test_variant_ranges(self):
        with pytest.raises(InvalidLength):
            binary.build_2sktgc(2, "A")
        with pytest.raises(InvalidLength):
            binary.build_2sktgc(3, "B")
        with pytest.raises(InvalidLength):
            binary.build_2sktgc(3, "C")


class TestBaseCases:
    def test_builtin_bases(self, odd_base, even_base):
        assert (odd_base.left, odd_base.right, odd_base.size) == (1, 1, 4)
        assert rows_of(odd_base.code) == ["000", "001", "011", "111"]
        assert (even_base.left, even_base.right, even_base.size) == (2, 1, 5)

    def test_bundled_bases_validate(self):
        b6 = binary.bundled_base(6)
        assert (b6.left, b6.right, b6.size) == (4, 1, 47)
        b7 = binary.bundled_base(7)
        assert (b7.left, b7.right, b7.size) == (3, 3, 108)
        with pytest.raises(InvalidParameters):
            binary.bundled_base(5)

    def test_condition_failures_are_named(self):
        # the k=2 seed reinterpreted as a k=1 base fails several conditions
        code = binary.build_2sktgc(3, "A").with_indexing(signed_indexing(1))
        failures = binary.base_condition_failures(code, 1, 1)
        assert failures
        assert any("excluded" in f for f in failures)
        with pytest.raises(InvalidBase):
            binary.make_base(code, 1, 1)


class TestK1:
    def test_odd_first_doubling(self, odd_base):
        code = binary.build_1sktgc(odd_base, 1, "B")
        assert len(code) == 16 and code.n == 5 and code.cyclic
        assert binary.predicted_size("1sktgc-odd", n=2) == 16

    def test_even_first_doubling(self, even_base):
        code = binary.build_1sktgc(even_base, 1, "B")
        assert len(code) == 20 and code.n == 6
        assert binary.predicted_size("1sktgc-even", n=2) == 20

    def test_bundled6_first_doubling(self):
        code = binary.build_1sktgc(binary.bundled_base(6), 1, "B")
        assert len(code) == 188 and code.n == 8

    def test_variant_a_boundary_changes(self, odd_base):
        for steps in range(1, 5):
            code = binary.build_1sktgc(odd_base, steps, "A")
            ts = transitions(code)
            assert ts.positions[0] == 1 + steps
            assert ts.positions[-1] == -(1 + steps)

    def test_excluded_ladder_words_absent(self, odd_base):
        # ones at 1..right+steps plus a run from -1: never present
        for steps in range(1, 5):
            code = binary.build_1sktgc(odd_base, steps, "A")
            words = word_set(code)
            left, right = 1 + steps, 1 + steps
            n = code.n
            base = [0] * n
            for p in range(1, right + 1):
                base[p + left] = 1
            for j in range(1, left + 1):
                base[left - j] = 1
                assert tuple(base) not in words, (steps, j)

    @pytest.mark.parametrize("steps", range(1, 7))
    def test_odd_sizes_and_skew(self, odd_base, steps):
        code = binary.build_1sktgc(odd_base, steps, "B")
        assert len(code) == binary.predicted_size("1sktgc-odd", n=steps + 1)
        assert verify(code, expected_k=1).passed

    @pytest.mark.parametrize("steps", range(1, 6))
    def test_even_sizes_and_skew(self, even_base, steps):
        code = binary.build_1sktgc(even_base, steps, "B")
        assert len(code) == binary.predicted_size("1sktgc-even", n=steps + 1)
        assert verify(code, expected_k=1).passed

    @pytest.mark.parametrize("n0,steps", [(6, 1), (6, 2), (6, 3), (7, 1), (7, 2)])
    def test_bundled_sizes_and_skew(self, n0, steps):
        base = binary.bundled_base(n0)
        code = binary.build_1sktgc(base, steps, "B")
        predicted = binary.predicted_size(
            "1sktgc-general", a0=base.size, n0=base.n0, left=base.left,
            right=base.right, steps=steps)
        assert len(code) == predicted
        assert verify(code, expected_k=1).passed

    def test_variant_a_steps_zero_returns_base(self, odd_base):
        code = binary.build_1sktgc(odd_base, 0, "A")
        assert code.words == odd_base.code.words

    def test_variant_b_needs_steps(self, odd_base):
        with pytest.raises(InvalidParameters):
            binary.build_1sktgc(odd_base, 0, "B")

    def test_invalid_base_rejected(self):
        code = binary.build_2sktgc(3, "A").with_indexing(signed_indexing(1))
        bad = binary.BaseCase(1, 1, code)
        with pytest.raises(InvalidBase) as err:
            binary.build_1sktgc(bad, 1, "B")
        assert len(err.value.failures) >= 2

    def test_staircase_prefix_every_level(self, even_base):
        for steps in (1, 3):
            code = binary.build_1sktgc(even_base, steps, "B")
            n = code.n
            right = even_base.right + steps
            stair = ["0" * n]
            for k in range(1, right + 2):
                stair.append("0" * (n - k) + "1" * k)
            assert rows_of(code)[:len(stair)] == stair


class TestPredictedSize:
    def test_odd_values(self):
        # recursion: 16 -> 4*16+8 = 72 at the next length
        assert binary.predicted_size("1sktgc-odd", n=2) == 16
        assert binary.predicted_size("1sktgc-odd", n=3) == 72
        assert binary.predicted_size("1sktgc-odd", n=3) == 4 * 16 + 8

    def test_complete_families(self):
        assert binary.predicted_size("2sktgc-c", n=5) == 32
        assert binary.predicted_size("mary", m=7, n=3) == 343
        assert binary.predicted_size("ternary-c", n=4) == 81

    def test_general_step_zero(self):
        assert binary.predicted_size("1sktgc-general", a0=108, n0=7,
                                     left=3, right=3, steps=0) == 106
        assert binary.predicted_size("1sktgc-general", a0=47, n0=6,
                                     left=4, right=1, steps=0) == 42

    def test_variant_a_matches_level_size(self):
        from sktgc.codec import level_size
        for n in range(1, 12):
            assert binary.predicted_size("1sktgc-odd", n=n, variant="A") == level_size(n)

    def test_rejections(self):
        with pytest.raises(InvalidParameters):
            binary.predicted_size("2sktgc-b", n=3)
        with pytest.raises(InvalidParameters):
            binary.predicted_size("1sktgc-general", a0=10, n0=4, left=2,
                                  right=2, steps=1)
        with pytest.raises(InvalidParameters):
            binary.predicted_size("nope", n=3)
