"""Free-product arithmetic tests with brute-force conjugation oracles."""

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orpics.freeprod import (
    CyclicGroup,
    FpWord,
    FreeProduct,
    FreeProductError,
    IdentityLetter,
    PermutationGroup,
    UndecidedError,
    free_product_length,
)
from orpics.words import INFINITE

C3C3 = FreeProduct(CyclicGroup(3, "c"), CyclicGroup(3, "d"))
C6CQ = FreeProduct(CyclicGroup(6, "c"), CyclicGroup(0, "d"))


def L(fp, factor, element):
    return fp.letter(factor, element)


class TestFactorGroups:
    def test_cyclic_orders(self):
        c6 = CyclicGroup(6)
        assert c6.element_order(1) == 6
        assert c6.element_order(2) == 3
        assert c6.element_order(3) == 2
        assert c6.element_order(0) == 1

    def test_infinite_cyclic(self):
        cinf = CyclicGroup(0)
        assert cinf.element_order(5) is INFINITE
        with pytest.raises(UndecidedError):
            cinf.elements()

    def test_permutation_group_s3(self):
        s3 = PermutationGroup(3, [(1, 0, 2), (1, 2, 0)])
        assert len(s3.elements()) == 6
        assert s3.element_order((1, 0, 2)) == 2
        assert s3.element_order((1, 2, 0)) == 3

    def test_perm_associativity_and_inverses(self):
        s3 = PermutationGroup(3, [(1, 0, 2), (1, 2, 0)])
        els = s3.elements()
        for g, h, k in product(els, repeat=3):
            assert s3.multiply(s3.multiply(g, h), k) == s3.multiply(g, s3.multiply(h, k))
        for g in els:
            assert s3.multiply(g, s3.invert(g)) == s3.identity()

    def test_order2_iff_self_inverse(self):
        s3 = PermutationGroup(3, [(1, 0, 2), (1, 2, 0)])
        for g in s3.elements():
            if not s3.is_identity(g):
                assert (s3.element_order(g) == 2) == (s3.invert(g) == g)


class TestNormalize:
    def test_cancellation(self):
        fp = C3C3
        assert len(fp.normalize([L(fp, 1, 1), L(fp, 1, 2)])) == 0

    def test_already_reduced(self):
        fp = C3C3
        w = fp.normalize([L(fp, 1, 1), L(fp, 2, 1)])
        assert len(w) == 2

    def test_merge_in_c6(self):
        fp = C6CQ
        # c^2 * c^5 = c in C6
        w = fp.normalize([L(fp, 1, 2), L(fp, 1, 5)])
        assert len(w) == 1 and w[0].element == 1

    def test_cascading_cancellation(self):
        fp = C3C3
        raw = [L(fp, 1, 1), L(fp, 2, 1), L(fp, 2, 2), L(fp, 1, 2), L(fp, 2, 1)]
        w = fp.normalize(raw)
        assert [(z.factor, z.element) for z in w] == [(2, 1)]

    def test_identity_letter_rejected(self):
        with pytest.raises(IdentityLetter):
            C3C3.letter(1, 0)

    def test_unreduced_word_rejected(self):
        fp = C3C3
        with pytest.raises(FreeProductError):
            FpWord((L(fp, 1, 1), L(fp, 1, 1)))

    @given(st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([0, 1, 2])),
                    max_size=10))
    def test_idempotent(self, pairs):
        fp = C3C3
        from orpics.freeprod import FpLetter
        raw = [FpLetter(f, e) for f, e in pairs]
        w = fp.normalize(raw)
        assert fp.normalize(tuple(w)) == w

    @given(st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([1, 2])), max_size=8),
           st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([1, 2])), max_size=8))
    def test_length_subadditive(self, p1, p2):
        fp = C3C3
        from orpics.freeprod import FpLetter
        u = fp.normalize([FpLetter(f, e) for f, e in p1])
        v = fp.normalize([FpLetter(f, e) for f, e in p2])
        assert free_product_length(fp.multiply(u, v)) <= len(u) + len(v)


def brute_force_minimal_conjugate_length(fp, w, max_conj=6):
    """Minimum syllable length of g w g^-1 over short conjugators g."""
    best = len(w)
    letters = [fp.letter(1, 1), fp.letter(1, 2), fp.letter(2, 1), fp.letter(2, 2)]
    frontier = [FpWord(())]
    for _ in range(max_conj):
        nxt = []
        for g in frontier:
            for z in letters:
                if len(g) and g[-1].factor == z.factor:
                    continue
                g2 = FpWord(tuple(g) + (z,))
                nxt.append(g2)
                conj = fp.multiply(fp.multiply(g2, w), fp.invert_word(g2))
                best = min(best, len(conj))
        frontier = nxt
    return best


class TestCyclicReduce:
    def test_single_conjugation_layer(self):
        fp = C3C3
        w = FpWord((L(fp, 1, 1), L(fp, 2, 1), L(fp, 1, 2)))
        core, conj = fp.cyclic_reduce(w)
        assert [(z.factor, z.element) for z in core] == [(2, 1)]
        assert [(z.factor, z.element) for z in conj] == [(1, 1)]

    def test_fixpoint(self):
        fp = C3C3
        w = FpWord((L(fp, 1, 1), L(fp, 2, 1)))
        core, conj = fp.cyclic_reduce(w)
        assert core == w and len(conj) == 0

    def test_wrap_merge(self):
        fp = C6CQ
        # c^2 (d) c^4 conjugates to d with conjugator c^2: wrap merge kills c^6
        w = FpWord((L(fp, 1, 2), L(fp, 2, 1), L(fp, 1, 4)))
        core, conj = fp.cyclic_reduce(w)
        assert [(z.factor, z.element) for z in core] == [(2, 1)]
        assert [(z.factor, z.element) for z in conj] == [(1, 2)]

    def test_conjugation_identity(self):
        fp = C3C3
        for letters in product([(1, 1), (1, 2), (2, 1), (2, 2)], repeat=4):
            from orpics.freeprod import FpLetter
            w = fp.normalize([FpLetter(f, e) for f, e in letters])
            core, conj = fp.cyclic_reduce(w)
            rebuilt = fp.multiply(fp.multiply(conj, core), fp.invert_word(conj))
            assert rebuilt == w
            assert core.is_cyclically_reduced()

    def test_minimal_among_conjugates(self):
        fp = C3C3
        from orpics.freeprod import FpLetter
        seen = 0
        for letters in product([(1, 1), (1, 2), (2, 1), (2, 2)], repeat=5):
            w = fp.normalize([FpLetter(f, e) for f, e in letters])
            if len(w) > 5:
                continue
            core, _ = fp.cyclic_reduce(w)
            assert len(core) == brute_force_minimal_conjugate_length(fp, w, max_conj=3)
            seen += 1
        assert seen > 0


class TestLength:
    def test_empty(self):
        assert free_product_length(FpWord(())) == 0

    def test_single(self):
        fp = C3C3
        assert free_product_length(FpWord((L(fp, 1, 1),))) == 1

    def test_alternating_conjugate_shape(self):
        fp = C3C3
        # a U b U^-1 with U of length 3 alternating: 8 syllables
        u = [L(fp, 2, 1), L(fp, 1, 1), L(fp, 2, 2)]
        raw = ([L(fp, 1, 1)] + u + [L(fp, 1, 2)]
               + [fp.invert_letter(z) for z in reversed(u)])
        assert free_product_length(fp.normalize(raw)) == 8

    def test_letter_order_two_iff_self_inverse(self):
        fp = FreeProduct(CyclicGroup(6, "c"), CyclicGroup(4, "d"))
        for f in (1, 2):
            for e in fp.factors[f].elements():
                if fp.factors[f].is_identity(e):
                    continue
                z = fp.letter(f, e)
                assert (fp.letter_order(z) == 2) == (fp.invert_letter(z) == z)


class TestParsing:
    def test_roundtrip(self):
        fp = C6CQ
        w = fp.parse_word("f1:c^2 f2:d f1:c")
        assert fp.format_word(w) == "f1:c^2 f2:d f1:c"

    def test_bad_token(self):
        with pytest.raises(ValueError):
            C3C3.parse_word("nonsense")
