import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldman_bv.words import (
    AlphabetError,
    CyclicWord,
    Letter,
    Word,
    concat,
    cyclic_canonical,
    cyclic_reduce,
    free_reduce,
    invert,
)
from strategies import reduced_words, words

G = 2


def W(text, genus=G):
    return Word.parse(text, genus)


class TestParsing:
    def test_round_trip(self):
        assert str(W("a1 B2 A1 b2")) == "a1 B2 A1 b2"

    def test_empty_is_identity(self):
        assert W("").letters == ()

    def test_letter_order(self):
        codes = [W(t).letters[0] for t in ("a1", "A1", "b1", "B1", "a2", "A2", "b2", "B2")]
        assert codes == sorted(codes) == list(range(8))

    def test_letter_fields(self):
        assert Letter.from_code(W("B2").letters[0]) == Letter(3, -1)
        assert Letter(3, -1).code == 7

    @pytest.mark.parametrize("text", ["a3", "a1 b3", "A7"])
    def test_index_beyond_genus(self, text):
        with pytest.raises(AlphabetError, match="token"):
            W(text)

    @pytest.mark.parametrize("text", ["c1", "a", "a0", "a1b1"])
    def test_bad_tokens(self, text):
        with pytest.raises(ValueError):
            W(text)

    def test_error_reports_position(self):
        with pytest.raises(AlphabetError, match="token 2"):
            W("a1 b1 a5")

    def test_code_out_of_range(self):
        with pytest.raises(AlphabetError):
            Word(1, (4,))


class TestFreeReduce:
    @pytest.mark.parametrize(
        "text, expected",
        [("a1 A1", ""), ("a1 b1 B1 a1", "a1 a1"), ("a1 b2 B1", "a1 b2 B1"), ("b1 a2 A2 B1", "")],
    )
    def test_examples(self, text, expected):
        assert str(free_reduce(W(text))) == expected

    @given(words(G, 20))
    def test_idempotent_and_shorter(self, w):
        r = free_reduce(w)
        assert free_reduce(r) == r
        assert len(r) <= len(w)
        assert r.is_reduced()


class TestInvertConcat:
    def test_invert_examples(self):
        assert str(invert(W("a1 b1"))) == "B1 A1"
        assert str(invert(W(""))) == ""

    @pytest.mark.parametrize("a, b, expected", [("a1", "A1", ""), ("a1", "b1", "a1 b1"), ("a1 b1", "B1", "a1")])
    def test_concat_examples(self, a, b, expected):
        assert str(concat(W(a), W(b))) == expected
        assert W(a) * W(b) == W(expected)

    def test_mixed_genus(self):
        with pytest.raises(AlphabetError):
            concat(W("a1", 1), W("a1", 2))

    @settings(max_examples=1000)
    @given(reduced_words(G, 20))
    def test_inverse_cancels(self, w):
        assert concat(w, invert(w)).letters == ()
        assert invert(invert(w)) == w
        assert ~w == invert(w)


class TestCyclic:
    def test_examples(self):
        core, u = cyclic_reduce(W("b1 a1 B1"))
        assert (str(core), str(u)) == ("a1", "b1")
        core, u = cyclic_reduce(W("a1 b1"))
        assert (str(core), str(u)) == ("a1 b1", "")

    def test_peeling(self):
        core, u = cyclic_reduce(W("A1 b1 b2 a1"))
        assert str(core) == "b1 b2" and str(u) == "A1"

    @given(reduced_words(G, 16))
    def test_conjugation_identity(self, w):
        core, u = cyclic_reduce(w)
        assert concat(concat(u, core.as_word()), invert(u)) == w
        t = core.letters
        assert len(t) < 2 or t[0] != t[-1] ^ 1

    def test_canonical_examples(self):
        assert str(cyclic_canonical(CyclicWord(G, W("b1 a1").letters))) == "a1 b1"
        assert str(cyclic_canonical(CyclicWord(G, W("a1").letters))) == "a1"

    def test_rotations_of_product(self):
        t = W("a1 b1 a2 b2").letters
        outs = {cyclic_canonical(CyclicWord(G, t[i:] + t[:i])) for i in range(4)}
        assert len(outs) == 1

    @given(reduced_words(G, 12, 1))
    def test_canonical_constant_on_rotations(self, w):
        core, _ = cyclic_reduce(w)
        t = core.letters
        outs = {cyclic_canonical(CyclicWord(G, t[i:] + t[:i])) for i in range(max(len(t), 1))}
        assert len(outs) == 1

    def test_not_cyclically_reduced(self):
        with pytest.raises(ValueError):
            CyclicWord(G, W("a1 b1 A1").letters)
