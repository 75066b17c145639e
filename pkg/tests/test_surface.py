import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from goldman_bv.fuchsian import build_representation, evaluate
from goldman_bv.surface import (
    H1Class,
    LoopClass,
    Presentation,
    UnsupportedGenusError,
    abelianize,
    are_conjugate,
    conjugacy_canonical,
    dehn_reduce,
    enumerate_classes,
    is_identity,
    root_multiplicity,
    trivial_class,
)
from goldman_bv.words import Word, concat, invert
from strategies import reduced_words

P2 = Presentation(2)


def W(text, genus=2):
    return Word.parse(text, genus)


def same_element(w1, w2, tol=1e-9):
    R = build_representation(w1.genus)
    m1, m2 = evaluate(w1, R).as_array(), evaluate(w2, R).as_array()
    return min(np.abs(m1 - m2).max(), np.abs(m1 + m2).max()) < tol


class TestPresentation:
    def test_relator(self):
        assert str(P2.relator) == "a1 b1 A1 B1 a2 b2 A2 B2"
        assert str(Presentation(1).relator) == "a1 b1 A1 B1"

    def test_bad_genus(self):
        with pytest.raises(ValueError):
            Presentation(0)


class TestDehn:
    def test_relator_reduces_to_identity(self):
        assert dehn_reduce(P2.relator, P2).letters == ()

    def test_generator_unchanged(self):
        assert str(dehn_reduce(W("a1"), P2)) == "a1"

    def test_long_piece(self):
        w = W("a1 b1 A1 B1 a2")
        r = dehn_reduce(w, P2)
        assert str(r) == "b2 a2 B2"
        assert same_element(w, r)

    def test_torus_unsupported(self):
        with pytest.raises(UnsupportedGenusError):
            dehn_reduce(W("a1", 1))

    def test_preserves_element(self):
        rng = random.Random(11)
        for _ in range(500):
            w = Word(2, tuple(rng.randrange(8) for _ in range(rng.randint(0, 10))))
            r = dehn_reduce(w)
            assert len(r) <= len(w)
            assert same_element(w, r)

    def test_inverse_relator_and_rotations(self):
        t = P2.relator.letters
        for i in range(8):
            rot = Word(2, t[i:] + t[:i])
            assert is_identity(rot) and is_identity(invert(rot))


class TestIdentity:
    def test_examples(self):
        assert is_identity(P2.relator, P2)
        assert not is_identity(W("a1"), P2)
        assert not is_identity(W("a1 b1 A1 B1"), P2)
        assert not same_element(W("a1 b1 A1 B1"), W(""))

    def test_torus(self):
        assert is_identity(W("a1 b1 A1 B1", 1))
        assert not is_identity(W("a1", 1))


class TestConjugacy:
    def test_examples(self):
        assert conjugacy_canonical(W("b1 a1 B1")) == conjugacy_canonical(W("a1"))
        assert are_conjugate(W("a1 b1"), W("b1 a1"))
        assert not are_conjugate(W("a1"), W("a2"))
        assert not are_conjugate(W(""), W("a1"))

    def test_half_relator_swap(self):
        # the two halves of the relator are mutually inverse
        w1 = W("a1 b1 A1 B1")
        w2 = W("b2 a2 B2 A2")
        assert same_element(w1, w2)
        assert are_conjugate(w1, w2)
        assert are_conjugate(W("b1 A1 B1 a1"), W("a2 B2 A2 b2"))

    @settings(max_examples=200)
    @given(reduced_words(2, 6), reduced_words(2, 6))
    def test_conjugation_invariant(self, w, u):
        assert conjugacy_canonical(concat(concat(u, w), invert(u))) == conjugacy_canonical(w)

    def test_torus_class(self):
        assert conjugacy_canonical(W("a1 b1 a1 B1 B1", 1)) == LoopClass(1, (2, -1))

    def test_canonical_is_fixed_point(self):
        for c in enumerate_classes(2, 3):
            assert conjugacy_canonical(c.word) == c

    def test_partition_matches_brute_force_small(self):
        import oracles

        assert oracles.canonical_partition(2, 3) == oracles.brute_force_conjugacy_partition(2, 3, 5)


class TestAbelianize:
    def test_examples(self):
        assert abelianize(W("a1 b1 A1 B1")).coords == (0, 0, 0, 0)
        assert abelianize(W("a1 a1 b2")).coords == (2, 0, 0, 1)
        assert not abelianize(P2.relator)

    @given(reduced_words(2, 8), reduced_words(2, 8))
    def test_homomorphism_and_invariance(self, w1, w2):
        assert abelianize(concat(w1, w2)) == abelianize(w1) + abelianize(w2)
        assert abelianize(concat(concat(w2, w1), invert(w2))) == abelianize(w1)

    def test_h1_arithmetic(self):
        a = H1Class.unit(2, 0)
        assert (a * 3 - a).coords == (2, 0, 0, 0)
        assert not (a - a)
        assert (-a).coords[0] == Fraction(-1)
        with pytest.raises(ValueError):
            a + H1Class.unit(1, 0)


class TestEnumerate:
    def test_torus(self):
        got = {c.key for c in enumerate_classes(1, 1)}
        assert got == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_genus2_small(self):
        assert enumerate_classes(2, 0) == [trivial_class(2)]
        assert len(enumerate_classes(P2, 1)) == 9

    @pytest.mark.parametrize("n, count", [(2, 41), (3, 161)])
    def test_counts(self, n, count):
        assert len(enumerate_classes(2, n)) == count

    def test_sorted_distinct(self):
        cs = enumerate_classes(2, 3)
        assert cs == sorted(cs, key=LoopClass.sort_key)
        assert len(set(cs)) == len(cs)
        assert cs[0].is_trivial

    def test_negative(self):
        with pytest.raises(ValueError):
            enumerate_classes(2, -1)


class TestLoopClass:
    def test_parse_and_str(self):
        assert str(LoopClass.parse("b1 a1", 2)) == "a1 b1"
        assert str(LoopClass.parse("(2,-1)", 1)) == "(2,-1)"
        assert str(trivial_class(2)) == ""
        with pytest.raises(ValueError):
            LoopClass.parse("(1,1)", 2)

    def test_root_multiplicity(self):
        assert root_multiplicity(LoopClass.parse("a1 a1", 2)) == 2
        assert root_multiplicity(LoopClass.parse("a1 b1 a1 b1", 2)) == 2
        assert root_multiplicity(LoopClass.parse("a1 b1", 2)) == 1
        assert root_multiplicity(LoopClass.parse("(4,6)", 1)) == 2
        assert root_multiplicity(trivial_class(2)) == 0
