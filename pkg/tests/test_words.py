"""Word-combinatorics tests: brute-force oracles, frozen examples, and
exhaustive small-instance sweeps."""

from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orpics.words import (
    BadCover,
    EVEN,
    ODD,
    Alphabet,
    CyclicWord,
    DegenerateOffset,
    EmptyWordError,
    HypothesisFail,
    NotABorder,
    NotAPeriod,
    NotConjugateForm,
    Word,
    border_period,
    find_letter_conjugate_subwords,
    fine_wilf,
    involute,
    is_mirror_form,
    is_proper_power,
    mirror_decompose,
    order2_in_overlap,
    overlap_periods,
    periods,
)

# xy: two independent symbols of infinite order, plus involutes
AB = Alphabet(pairs=[("a", "A", 3), ("b", "B", 3)])
ABC = Alphabet(pairs=[("a", "A", 3), ("b", "B", 3), ("c", "C", 3)])
XY = Alphabet(pairs=[("x", "X", 4), ("y", "Y", 4)])
WITH_T = Alphabet(pairs=[("x", "X", 3)], involutions=["t"])


def w(alphabet, text):
    return Word(alphabet, tuple(text.split()))


def oracle_periods(letters):
    """Independent double-loop period scan used to pin expected values."""
    n = len(letters)
    out = set()
    for g in range(1, n + 1):
        if all(letters[i] == letters[i + g] for i in range(n - g)):
            out.add(g)
    return out


class TestInvolute:
    def test_empty(self):
        assert involute(w(AB, "")).letters == ()

    def test_single_letter(self):
        assert involute(w(AB, "a")).letters == ("A",)

    def test_two_letters_reversed(self):
        # direct reversal oracle: [a, b] -> [B, A]
        assert involute(w(AB, "a b")).letters == ("B", "A")

    @given(st.lists(st.sampled_from(["a", "A", "b", "B"]), max_size=12))
    def test_involution_property(self, letters):
        word = Word(AB, tuple(letters))
        assert involute(involute(word)) == word


class TestPeriods:
    def test_alternating(self):
        word = w(XY, "x y x y x y")
        assert periods(word) == {2, 4, 6}
        assert periods(word) == oracle_periods(word.letters)

    def test_constant(self):
        assert periods(w(XY, "x x x x")) == {1, 2, 3, 4}

    def test_no_repetition(self):
        abc = Alphabet(pairs=[("x", "X", 3), ("y", "Y", 3), ("z", "Z", 3)])
        assert periods(Word(abc, ("x", "y", "z"))) == {3}

    def test_empty_word_rejected(self):
        with pytest.raises(EmptyWordError):
            periods(w(XY, ""))

    def test_full_length_always_a_period(self):
        for n in range(1, 8):
            for letters in product("xy", repeat=n):
                assert n in periods(Word(XY, letters))


class TestBorderPeriod:
    def test_xyx(self):
        word = w(XY, "x y x")
        assert border_period(word, word.segment(0, 0)) == 2
        assert 2 in periods(word)

    def test_square(self):
        word = w(XY, "x x")
        assert border_period(word, word.segment(0, 0)) == 1

    def test_not_a_border(self):
        word = w(XY, "x y")
        with pytest.raises(NotABorder):
            border_period(word, Word(XY, ("y",)))

    def test_border_word_form(self):
        word = w(XY, "x y x y x")
        assert border_period(word, w(XY, "x y x")) == 2


class TestFineWilf:
    def test_constant_word(self):
        assert fine_wilf(w(XY, "x x x x x"), 2, 3) == 1

    def test_length_bound_fails(self):
        # periods 4 and 6 on length 6: gcd 2 needs length >= 8
        word = w(XY, "x y x y x y")
        assert fine_wilf(word, 6, 4) is None

    def test_not_a_period(self):
        with pytest.raises(NotAPeriod):
            fine_wilf(w(XY, "x y x y"), 3, 2)

    def test_exhaustive_binary_len_14(self):
        # every word over {x, y} up to length 14: whenever two verified
        # periods meet the length bound, gcd is verified a period by the
        # brute-force oracle
        for n in range(1, 15):
            for letters in product("xy", repeat=n):
                ps = oracle_periods(letters)
                word = Word(XY, letters)
                for g1 in ps:
                    for g2 in ps:
                        if g2 > g1:
                            continue
                        d = gcd(g1, g2)
                        got = fine_wilf(word, g1, g2)
                        if n >= g1 + g2 - d:
                            assert got == d
                            assert d in ps
                        else:
                            assert got is None


class TestOverlapPeriods:
    def test_degenerate_cover_reduces_to_fine_wilf(self):
        word = w(XY, "x x x x x")
        full = word.segment(0, 4)
        assert overlap_periods(word, full, 2, full, 3) == 1

    def test_periodic_overlap(self):
        word = w(XY, "x y x y x y x")
        w1 = word.segment(0, 5)
        w2 = word.segment(2, 6)
        # overlap 4 >= 2 + 2 - 2
        assert overlap_periods(word, w1, 2, w2, 2) == 2

    def test_short_overlap(self):
        word = w(XY, "x y x y y x y y")
        w1 = word.segment(0, 3)
        w2 = word.segment(3, 7)
        assert overlap_periods(word, w1, 2, w2, 3) is None

    def test_bad_cover(self):
        word = w(XY, "x y x y x y")
        with pytest.raises(BadCover):
            overlap_periods(word, word.segment(0, 1), 2, word.segment(3, 5), 3)

    def test_not_a_period_on_segment(self):
        word = w(XY, "x y x y x y")
        with pytest.raises(NotAPeriod):
            overlap_periods(word, word.segment(0, 3), 3, word.segment(2, 5), 2)


class TestProperPower:
    def test_square(self):
        assert is_proper_power(w(XY, "x y x y"))

    def test_primitive(self):
        assert not is_proper_power(w(XY, "x y x"))

    @given(st.lists(st.sampled_from("xy"), min_size=1, max_size=12))
    def test_agrees_with_divisor_characterization(self, letters):
        word = Word(XY, tuple(letters))
        n = len(letters)
        expected = any(
            n % g == 0 and letters[:g] * (n // g) == letters for g in range(1, n)
        )
        assert is_proper_power(word) == expected


def all_mirror_words(alphabet, syms, k):
    """All words x V y V^-1 with len = 2k over the given symbols."""
    inv = alphabet.inverse
    for x in syms:
        for y in syms:
            for v in product(syms, repeat=k - 1):
                letters = (x,) + v + (y,) + tuple(inv(z) for z in reversed(v))
                yield Word(alphabet, letters)


class TestMirrorDecompose:
    def test_spec_instance(self):
        # a (ba) b^-1 (ba)^-1 rotated by 2 keeps the mirror shape
        word = w(AB, "a b a B A B")
        dec = mirror_decompose(word, 2)
        assert dec.m == 1 and dec.s == 3 and dec.case == ODD
        assert len(dec.v3) == 0
        assert dec.letter_pair == ("a", "B")
        assert dec.alpha == (1, 1, -1)
        assert dec.beta == (-1, 1, 1)
        assert dec.expand() == word

    def test_degenerate_offset(self):
        word = w(AB, "a b a B A B")
        with pytest.raises(DegenerateOffset):
            mirror_decompose(word, 3)

    def test_shape_violation(self):
        with pytest.raises(NotConjugateForm):
            mirror_decompose(w(AB, "a b a b a b"), 2)

    def test_even_case(self):
        # x V x2 V^-1 pattern with y_i = x_i^-1 arises when s is even
        found_even = False
        for word in all_mirror_words(ABC, ["a", "A", "b", "B", "c", "C"], 4):
            if not word.is_cyclically_reduced():
                continue
            for j in range(1, 8):
                if j % 4 == 0:
                    continue
                if not is_mirror_form(word.rotate(j)):
                    continue
                dec = mirror_decompose(word, j)
                if dec.case == EVEN:
                    found_even = True
                    assert dec.s % 2 == 0
                    assert dec.expand() == word
        assert found_even

    def test_exhaustive_reconstruction_len_12(self):
        # acceptance-grade sweep lives in test_acceptance; this is a smaller
        # smoke version
        syms = ["a", "A", "b", "B", "c", "C"]
        for k in range(2, 5):
            for word in all_mirror_words(ABC, syms, k):
                if not word.is_cyclically_reduced():
                    continue
                for j in range(1, 2 * k):
                    if j % k == 0:
                        continue
                    if not is_mirror_form(word.rotate(j)):
                        continue
                    dec = mirror_decompose(word, j)
                    assert dec.expand() == word
                    assert dec.s == k // gcd(j % k, k)
                    assert dec.case == (ODD if dec.s % 2 else EVEN)


class TestOrder2InOverlap:
    def test_self_inverse_letter_found(self):
        # w = x t X t: both (x t) and its involute (T x^-1 = t X) occur
        word = w(WITH_T, "x t X t")
        x = w(WITH_T, "x t")
        assert order2_in_overlap(CyclicWord(word), x) == "t"

    def test_hypothesis_fail_without_occurrences(self):
        word = w(AB, "a b A b")
        with pytest.raises(HypothesisFail):
            order2_in_overlap(CyclicWord(word), w(AB, "a a"))

    def test_no_valid_instance_without_order2_letters(self):
        # exhaustive: no cyclically reduced w (len <= 8 here; acceptance
        # pushes to 12) over an order-3 alphabet admits both x and x^-1
        syms = ["a", "A", "b", "B"]
        for n in (2, 4, 6):
            m = n // 2
            for letters in product(syms, repeat=n):
                word = Word(AB, letters)
                if not word.is_cyclically_reduced():
                    continue
                cw = CyclicWord(word)
                for i in range(n):
                    x = cw.subword(i, m)
                    if not x.is_reduced():
                        continue
                    assert not cw.occurrences(x.involute()) or not cw.occurrences(x)


class TestLetterConjugateScan:
    def test_clean_periodic_word(self):
        word = w(AB, "a b a b a b")
        assert find_letter_conjugate_subwords(word, 2) == []

    def test_order2_pattern_found(self):
        word = w(WITH_T, "t x t x t")
        hits = find_letter_conjugate_subwords(word, 2)
        assert (0, 1) in hits and (2, 1) in hits

    def test_short_patterns_never_reported(self):
        word = w(WITH_T, "t x t x t")
        assert all(2 * h >= 2 for _, h in find_letter_conjugate_subwords(word, 2))

    def test_not_a_period(self):
        with pytest.raises(NotAPeriod):
            find_letter_conjugate_subwords(w(AB, "a b a"), 3)

    def test_empty_on_even_periods_without_order2(self):
        # property of the scan: even period + no order-2 letter => no hits
        syms = ["a", "A", "b", "B"]
        for n in range(3, 9):
            for letters in product(syms, repeat=n):
                ps = oracle_periods(letters)
                word = Word(AB, letters)
                for g in ps:
                    if g < n and g % 2 == 0:
                        assert find_letter_conjugate_subwords(word, g) == []


class TestCyclicWord:
    def test_rotation_equality(self):
        w1 = CyclicWord(w(AB, "a b A"))
        w2 = CyclicWord(w(AB, "A a b"))
        assert w1 == w2
        assert hash(w1) == hash(w2)

    def test_distinct(self):
        assert CyclicWord(w(AB, "a b")) != CyclicWord(w(AB, "a B"))

    def test_occurrences_wrap(self):
        cw = CyclicWord(w(AB, "a b a b"))
        assert cw.occurrences(w(AB, "b a")) == [1, 3]
