"""Words in the free group on the surface-group alphabet.

Letters are stored as small integers: ``code = 2 * generator_index + inverse``
where generator ``2k`` is ``a_{k+1}`` and ``2k + 1`` is ``b_{k+1}``.  With this
encoding integer order is the canonical letter order

    a1 < A1 < b1 < B1 < a2 < A2 < ...

and the inverse of a letter is ``code ^ 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "AlphabetError",
    "Letter",
    "Word",
    "CyclicWord",
    "letter_code",
    "letter_name",
    "free_reduce",
    "invert",
    "concat",
    "cyclic_reduce",
    "cyclic_canonical",
    "min_rotation",
]


class AlphabetError(ValueError):
    """A letter is outside the alphabet of the ambient genus, or genera are mixed."""


class Letter(NamedTuple):
    generator_index: int
    sign: int

    @property
    def code(self) -> int:
        return letter_code(self.generator_index, self.sign)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)

    def __str__(self) -> str:
        return letter_name(self.code)


def letter_code(generator_index: int, sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if generator_index < 0:
        raise AlphabetError(f"negative generator index {generator_index}")
    return 2 * generator_index + (sign < 0)


def letter_name(code: int) -> str:
    gen, inv = code >> 1, code & 1
    base = "ab"[gen & 1]
    if inv:
        base = base.upper()
    return f"{base}{gen // 2 + 1}"


_TOKEN = re.compile(r"([abAB])([0-9]+)$")


def _parse_token(tok: str) -> int:
    m = _TOKEN.match(tok)
    if m is None:
        raise ValueError(f"bad letter token {tok!r}")
    ch, k = m.group(1), int(m.group(2))
    if k < 1:
        raise AlphabetError(f"generator index must be >= 1 in {tok!r}")
    gen = 2 * (k - 1) + (ch.lower() == "b")
    return 2 * gen + ch.isupper()


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in letters:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def _inverse(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(c ^ 1 for c in reversed(letters))


def min_rotation(letters: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation of ``letters``."""
    t = tuple(letters)
    if not t:
        return t
    return min(t[i:] + t[:i] for i in range(len(t)))


@dataclass(frozen=True)
class Word:
    """A (not necessarily reduced) word over the alphabet of genus ``genus``."""

    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise AlphabetError(f"genus must be >= 1, got {self.genus}")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        bound = 4 * self.genus
        for c in self.letters:
            if not 0 <= c < bound:
                raise AlphabetError(
                    f"letter code {c} (generator index {c >> 1}) outside genus {self.genus} alphabet"
                )

    @classmethod
    def parse(cls, text: str, genus: int) -> "Word":
        toks = text.split()
        letters = []
        for pos, tok in enumerate(toks):
            try:
                code = _parse_token(tok)
            except ValueError as exc:
                raise type(exc)(f"token {pos}: {exc}") from None
            if code >= 4 * genus:
                raise AlphabetError(f"token {pos}: {tok!r} is outside the genus {genus} alphabet")
            letters.append(code)
        return cls(genus, tuple(letters))

    @classmethod
    def from_letters(cls, genus: int, letters: Iterable[Letter]) -> "Word":
        return cls(genus, tuple(l.code for l in letters))

    def __str__(self) -> str:
        return " ".join(letter_name(c) for c in self.letters)

    def __repr__(self) -> str:
        return f"Word({self.genus}, {str(self)!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return (Letter.from_code(c) for c in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def is_reduced(self) -> bool:
        return all(a != b ^ 1 for a, b in zip(self.letters, self.letters[1:]))


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word regarded up to rotation.

    Equality is on the stored rotation; use :func:`cyclic_canonical` first
    when comparing rotation classes.
    """

    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        w = Word(self.genus, tuple(self.letters))
        object.__setattr__(self, "letters", w.letters)
        t = w.letters
        if not w.is_reduced() or (len(t) > 1 and t[0] == t[-1] ^ 1):
            raise ValueError(f"{w} is not cyclically reduced")

    def __str__(self) -> str:
        return " ".join(letter_name(c) for c in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def as_word(self) -> Word:
        return Word(self.genus, self.letters)


def free_reduce(w: Word) -> Word:
    return Word(w.genus, _reduce(w.letters))


def invert(w: Word) -> Word:
    return Word(w.genus, _inverse(w.letters))


def concat(w1: Word, w2: Word) -> Word:
    if w1.genus != w2.genus:
        raise AlphabetError(f"cannot multiply words of genus {w1.genus} and {w2.genus}")
    return Word(w1.genus, _reduce(w1.letters + w2.letters))


def _cyclic_core(letters: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    t = _reduce(letters)
    i, j = 0, len(t) - 1
    while i < j and t[i] == t[j] ^ 1:
        i += 1
        j -= 1
    return t[i : j + 1], t[:i]


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split reduced ``w`` as ``u c u^-1`` with ``c`` cyclically reduced.

    Returns ``(c, u)``.
    """
    core, conj = _cyclic_core(w.letters)
    return CyclicWord(w.genus, core), Word(w.genus, conj)


def cyclic_canonical(c: CyclicWord) -> CyclicWord:
    return CyclicWord(c.genus, min_rotation(c.letters))
