import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldman_bv.goldman import (
    BracketConfig,
    FormalSum,
    GoldmanBracket,
    NonStabilizedError,
    crossing_records,
    goldman_bracket,
    intersection_pairing,
    loop_h1_pairing,
    torus_bracket,
    torus_bracket_oracle,
    verify_goldman,
)
from goldman_bv.surface import H1Class, LoopClass, abelianize, conjugacy_canonical, enumerate_classes, trivial_class
from goldman_bv.words import Word, concat, invert


def C(text, genus=2):
    return LoopClass.parse(text, genus)


def T(p, q):
    return LoopClass(1, (p, q))


BR2 = GoldmanBracket(2)


class TestFormalSum:
    def test_zero_terms_dropped(self):
        s = FormalSum(2, [(C("a1"), 1), (C("a1"), -1), (C("b1"), Fraction(1, 2))])
        assert len(s) == 1 and s.coefficient(C("b1")) == Fraction(1, 2)

    def test_genus_checked(self):
        with pytest.raises(ValueError):
            FormalSum(1, [(C("a1"), 1)])
        with pytest.raises(ValueError):
            FormalSum.zero(1) + FormalSum.zero(2)

    def test_arithmetic(self):
        a, b = FormalSum.single(C("a1"), 2), FormalSum.single(C("b1"), 3)
        assert (a + b - a) == b
        assert (a * 0) == FormalSum.zero(2)
        assert (-a).coefficient(C("a1")) == -2
        assert (a + b).total() == 5
        assert str(a - b) == "2*[a1] - 3*[b1]"

    def test_trivial_handling(self):
        s = FormalSum(2, [(trivial_class(2), 4), (C("a1"), 1)])
        assert s.trivial_coefficient() == 4
        assert s.without_trivial() == FormalSum.single(C("a1"))

    def test_hash_and_order(self):
        s = FormalSum(2, {C("b1"): 1, C("a1"): 1})
        assert [str(c) for c in s.support()] == ["a1", "b1"]
        assert hash(s) == hash(FormalSum(2, {C("a1"): 1, C("b1"): 1}))


class TestTorus:
    def test_examples(self):
        assert torus_bracket((1, 0), (0, 1)) == FormalSum.single(T(1, 1), 1)
        assert not torus_bracket((3, -2), (3, -2))
        assert torus_bracket((2, 0), (0, 1)) == FormalSum.single(T(2, 1), 2)

    def test_oracle_examples(self):
        assert torus_bracket_oracle((1, 0), (0, 1)) == FormalSum.single(T(1, 1), 1)
        assert not torus_bracket_oracle((1, 1), (2, 2))
        assert torus_bracket_oracle((1, 0), (1, 1)) == FormalSum.single(T(2, 1), 1)
        assert not torus_bracket_oracle((0, 0), (1, 1))

    @given(*[st.integers(-4, 4)] * 4)
    def test_closed_form_matches_oracle(self, p, q, r, s):
        assert torus_bracket((p, q), (r, s)) == torus_bracket_oracle((p, q), (r, s))

    def test_oracle_offset_independent(self):
        offs = ((Fraction(2, 9), Fraction(1, 19)), (Fraction(7, 23), Fraction(3, 29)))
        for x, y in [((2, 1), (1, 3)), ((3, -1), (1, 2))]:
            assert torus_bracket_oracle(x, y, offs) == torus_bracket(x, y)


class TestGeometricBracket:
    def test_a1_b1(self):
        res = goldman_bracket(C("a1"), C("b1"))
        assert len(res) == 1
        (cls, v), = res.items()
        assert v == 1 and cls == C("a1 b1")

    def test_disjoint(self):
        assert not goldman_bracket(C("a1"), C("a2"))

    def test_trivial_and_self(self):
        assert not goldman_bracket(trivial_class(2), C("a1"))
        assert not goldman_bracket(C("a1 b2"), C("a1 b2"))

    def test_stable_across_depths(self):
        for d in (2, 4, 8):
            cfg = BracketConfig(max_conjugator_length=d)
            assert goldman_bracket(C("a1"), C("b1 a2"), cfg=cfg) == BR2(C("a1"), C("b1 a2"))

    def test_not_stabilized_at_depth_one(self):
        cfg = BracketConfig(max_conjugator_length=1, stabilization_step=1)
        with pytest.raises(NonStabilizedError) as info:
            goldman_bracket(C("a1 a1 b2"), C("b1 a2 a2"), cfg=cfg)
        assert info.value.depths == (1, 2)

    def test_separating_curve(self):
        sep = C("a1 b1 A1 B1")
        assert not BR2(sep, C("a1"))
        assert not BR2(sep, C("a2"))
        assert BR2(sep, C("a1 a2")).total() == 0

    def test_power_weighting(self):
        # [a1, b1 b1] counts each crossing of b1 twice
        res = BR2(C("a1"), C("b1 b1"))
        assert res.total() == 2
        assert BR2(C("b1 b1"), C("a1")) == -res

    def test_representative_independence(self):
        rng = random.Random(5)
        for x, y in [("a1", "b1"), ("a1 b1", "a1 a2 b2"), ("b1 a2", "A1 b2")]:
            ref = BR2(C(x), C(y))
            for _ in range(3):
                u = Word(2, tuple(rng.randrange(8) for _ in range(3)))
                wx = concat(concat(u, Word.parse(x, 2)), invert(u))
                wy = concat(concat(invert(u), Word.parse(y, 2)), u)
                assert goldman_bracket(conjugacy_canonical(wx), conjugacy_canonical(wy)) == ref

    def test_antisymmetry_and_homology_small(self):
        classes = [c for c in enumerate_classes(2, 1) if not c.is_trivial]
        for x, y in itertools.product(classes, repeat=2):
            xy = BR2(x, y)
            assert xy == -BR2(y, x)
            assert xy.total() == intersection_pairing(abelianize(x.word), abelianize(y.word))

    def test_genus_errors(self):
        with pytest.raises(ValueError):
            goldman_bracket(T(1, 0), T(0, 1))
        with pytest.raises(ValueError):
            goldman_bracket(C("a1"), C("a1", 3))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            BracketConfig(max_conjugator_length=0)


class TestCrossingRecords:
    def test_one_record_per_crossing(self):
        recs = crossing_records(C("a1 b1"), C("a1 a2 b2"))
        res = BR2(C("a1 b1"), C("a1 a2 b2"))
        assert sum(r.sign for r in recs) == res.total()
        for r in recs:
            assert r.point.imag > 0
            assert res.coefficient(r.product) != 0

    def test_empty_for_disjoint(self):
        assert crossing_records(C("a1"), C("a2")) == []


class TestPairings:
    def test_intersection(self):
        a1, b1, a2 = (H1Class.unit(2, i) for i in (0, 1, 2))
        assert intersection_pairing(a1, b1) == 1
        assert intersection_pairing(b1, a1) == -1
        assert intersection_pairing(a1 + b1, a1 + b1) == 0
        assert intersection_pairing(a1, a2) == 0
        with pytest.raises(ValueError):
            intersection_pairing(a1, H1Class.unit(1, 0))

    def test_loop_weights(self):
        a1 = H1Class.unit(2, 0)
        assert loop_h1_pairing(a1, FormalSum.single(C("b1"))) == FormalSum.single(C("b1"))
        assert not loop_h1_pairing(a1, FormalSum.single(trivial_class(2)))
        assert not loop_h1_pairing(a1, FormalSum.single(C("a1")))
        g = FormalSum(2, {C("b1 b1"): Fraction(1, 3), C("a2"): 5})
        assert loop_h1_pairing(a1 * 2, g) == FormalSum.single(C("b1 b1"), Fraction(4, 3))


class TestLieSuite:
    def test_torus(self):
        rep = verify_goldman(1, 200, seed=3)
        assert rep.passed and rep.results["jacobi"].checked == 200

    def test_genus2(self):
        rep = verify_goldman(2, 20, seed=1, bracket=BR2)
        assert rep.passed, rep.to_dict()

    def test_reproducible(self):
        assert verify_goldman(1, 30, 9).to_dict() == verify_goldman(1, 30, 9).to_dict()

    def test_detects_broken_bracket(self):
        class Symmetric(GoldmanBracket):
            def __call__(self, x, y):
                return torus_bracket(x.key, y.key) if x < y else torus_bracket(y.key, x.key)

        rep = verify_goldman(1, 50, 0, bracket=Symmetric(1))
        assert not rep.results["antisymmetry"].passed
        assert rep.results["antisymmetry"].counterexample is not None
