"""The surface group pi_1(S_g) = < a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >.

Word problem by Dehn's algorithm, conjugacy classes (= free homotopy classes
of loops) by cyclic Dehn reduction followed by a closure over half-relator
swaps, and abelianization to H_1.  Genus 1 is handled as Z^2 throughout.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .words import (
    AlphabetError,
    Word,
    _cyclic_core,
    _inverse,
    _reduce,
    letter_name,
    min_rotation,
)

__all__ = [
    "Presentation",
    "LoopClass",
    "H1Class",
    "UnsupportedGenusError",
    "dehn_reduce",
    "is_identity",
    "conjugacy_canonical",
    "are_conjugate",
    "enumerate_classes",
    "abelianize",
    "root_multiplicity",
    "trivial_class",
]


class UnsupportedGenusError(ValueError):
    pass


def _relator_letters(genus: int) -> tuple[int, ...]:
    out = []
    for j in range(genus):
        a, b = 4 * j, 4 * j + 2
        out += [a, b, a ^ 1, b ^ 1]
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError(f"genus must be >= 1, got {self.genus}")

    @property
    def relator(self) -> Word:
        return Word(self.genus, _relator_letters(self.genus))


@lru_cache(maxsize=None)
def _successors(genus: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # each letter occurs exactly once in r and once in r^-1, so a subword of a
    # cyclic rotation of r^(+-1) is a chain under one of these successor maps
    r = _relator_letters(genus)
    n = len(r)
    tables = []
    for rel in (r, _inverse(r)):
        succ = [0] * n
        for i, c in enumerate(rel):
            succ[c] = rel[(i + 1) % n]
        tables.append(tuple(succ))
    return tables[0], tables[1]


def _run_length(t: Sequence[int], start: int, succ: Sequence[int], cyclic: bool) -> int:
    m = len(t)
    limit = m if cyclic else m - start
    L = 1
    while L < limit:
        prev = t[(start + L - 1) % m]
        if t[(start + L) % m] != succ[prev]:
            break
        L += 1
    return L


def _complement(last: int, count: int, succ: Sequence[int]) -> list[int]:
    out = []
    c = last
    for _ in range(count):
        c = succ[c]
        out.append(c)
    return out


def _find_run(t: Sequence[int], genus: int, minimum: int, cyclic: bool):
    for start in range(len(t)):
        for succ in _successors(genus):
            L = _run_length(t, start, succ, cyclic)
            if L >= minimum:
                return start, L, succ
    return None


def _dehn_linear(t: tuple[int, ...], genus: int) -> tuple[int, ...]:
    n = 4 * genus
    t = _reduce(t)
    while True:
        hit = _find_run(t, genus, n // 2 + 1, cyclic=False)
        if hit is None:
            return t
        start, L, succ = hit
        P = min(L, n)
        piece_end = start + P
        if P == n:
            repl: tuple[int, ...] = ()
        else:
            repl = _inverse(_complement(t[piece_end - 1], n - P, succ))
        t = _reduce(t[:start] + repl + t[piece_end:])


def _dehn_cyclic(t: tuple[int, ...], genus: int) -> tuple[int, ...]:
    n = 4 * genus
    t, _ = _cyclic_core(t)
    while True:
        hit = _find_run(t, genus, n // 2 + 1, cyclic=True)
        if hit is None:
            return t
        start, L, succ = hit
        t = t[start:] + t[:start]
        P = min(L, n)
        if P == n:
            repl: tuple[int, ...] = ()
        else:
            repl = _inverse(_complement(t[P - 1], n - P, succ))
        t, _ = _cyclic_core(repl + t[P:])


def _require_hyperbolic(genus: int, what: str) -> None:
    if genus < 2:
        raise UnsupportedGenusError(f"{what} needs genus >= 2; genus 1 uses exponent vectors")


def dehn_reduce(w: Word, P: Presentation | None = None) -> Word:
    """Dehn-reduce ``w``: no subword is more than half of a relator rotation."""
    genus = w.genus if P is None else P.genus
    _check_genus(w, genus)
    _require_hyperbolic(genus, "dehn_reduce")
    return Word(genus, _dehn_linear(w.letters, genus))


def _check_genus(w: Word, genus: int) -> None:
    if w.genus != genus:
        raise AlphabetError(f"word of genus {w.genus} used with genus {genus} presentation")


def abelianize(w: Word, P: Presentation | None = None) -> "H1Class":
    genus = w.genus if P is None else P.genus
    _check_genus(w, genus)
    counts = [0] * (2 * genus)
    for c in w.letters:
        counts[c >> 1] += -1 if c & 1 else 1
    return H1Class(tuple(Fraction(v) for v in counts))


def is_identity(w: Word, P: Presentation | None = None) -> bool:
    genus = w.genus if P is None else P.genus
    _check_genus(w, genus)
    if genus == 1:
        return not any(abelianize(w).coords)
    return not _dehn_linear(w.letters, genus)


@dataclass(frozen=True)
class H1Class:
    """Homology class with coordinates ordered (a1, b1, ..., ag, bg)."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) % 2 or not self.coords:
            raise ValueError("H1Class needs 2g coordinates")
        if not all(c.__class__ is Fraction for c in self.coords):
            object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def zero(cls, genus: int) -> "H1Class":
        return cls((Fraction(0),) * (2 * genus))

    @classmethod
    def unit(cls, genus: int, index: int) -> "H1Class":
        v = [Fraction(0)] * (2 * genus)
        v[index] = Fraction(1)
        return cls(tuple(v))

    @property
    def genus(self) -> int:
        return len(self.coords) // 2

    def _same(self, other: "H1Class") -> None:
        if len(self.coords) != len(other.coords):
            raise ValueError(f"H1 classes of genus {self.genus} and {other.genus}")

    def __add__(self, other: "H1Class") -> "H1Class":
        self._same(other)
        if not any(other.coords):
            return self
        return H1Class(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "H1Class") -> "H1Class":
        self._same(other)
        return H1Class(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "H1Class":
        return H1Class(tuple(-a for a in self.coords))

    def __mul__(self, k) -> "H1Class":
        if k == 1:
            return self
        k = Fraction(k)
        return H1Class(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords)


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


@dataclass(frozen=True, order=False)
class LoopClass:
    """A free homotopy class of loops, i.e. a conjugacy class of pi_1.

    ``key`` is the canonical cyclic word (genus >= 2) or the exponent pair
    ``(p, q)`` (genus 1).  The trivial class has ``key == ()`` resp. ``(0, 0)``.
    """

    genus: int
    key: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.key) if self.genus == 1 else not self.key

    @property
    def length(self) -> int:
        if self.genus == 1:
            return abs(self.key[0]) + abs(self.key[1])
        return len(self.key)

    @property
    def word(self) -> Word:
        if self.genus == 1:
            p, q = self.key
            return Word(1, (0 if p > 0 else 1,) * abs(p) + (2 if q > 0 else 3,) * abs(q))
        return Word(self.genus, self.key)

    def sort_key(self):
        return (self.length, self.key)

    def __lt__(self, other: "LoopClass") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.genus == 1:
            return f"({self.key[0]},{self.key[1]})"
        return " ".join(letter_name(c) for c in self.key)

    def __repr__(self) -> str:
        return f"LoopClass({self.genus}, {str(self)!r})"

    @classmethod
    def parse(cls, text: str, genus: int) -> "LoopClass":
        """Parse ``(p,q)`` (genus 1) or a word, and canonicalize."""
        text = text.strip()
        m = _PAIR.match(text)
        if m:
            if genus != 1:
                raise ValueError(f"exponent pair {text!r} only valid for genus 1")
            return cls(1, (int(m.group(1)), int(m.group(2))))
        return conjugacy_canonical(Word.parse(text, genus))


def trivial_class(genus: int) -> LoopClass:
    return LoopClass(genus, (0, 0) if genus == 1 else ())


def _swap_neighbours(t: tuple[int, ...], genus: int) -> Iterator[tuple[int, ...]]:
    # replace each exactly-half relator piece by the inverse of its complement
    half = 2 * genus
    m = len(t)
    if m < half:
        return
    for start in range(m):
        for succ in _successors(genus):
            if _run_length(t, start, succ, cyclic=True) >= half:
                rot = t[start:] + t[:start]
                repl = _inverse(_complement(rot[half - 1], half, succ))
                yield repl + rot[half:]


@lru_cache(maxsize=200_000)
def _canonical_closure(letters: tuple[int, ...], genus: int) -> tuple[tuple[int, ...], frozenset]:
    t = _dehn_cyclic(letters, genus)
    while True:
        start = min_rotation(t)
        seen = {start}
        frontier = [start]
        shorter = None
        while frontier and shorter is None:
            nxt = []
            for cur in frontier:
                for cand in _swap_neighbours(cur, genus):
                    core = _dehn_cyclic(cand, genus)
                    if len(core) < len(cur):
                        shorter = core
                        break
                    key = min_rotation(core)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(key)
                if shorter is not None:
                    break
            frontier = nxt
        if shorter is None:
            return min(seen), frozenset(seen)
        t = _dehn_cyclic(shorter, genus)


def conjugacy_canonical(w: Word, P: Presentation | None = None) -> LoopClass:
    genus = w.genus if P is None else P.genus
    _check_genus(w, genus)
    if genus == 1:
        v = abelianize(w).coords
        return LoopClass(1, (int(v[0]), int(v[1])))
    canon, _ = _canonical_closure(_reduce(w.letters), genus)
    return LoopClass(genus, canon)


def are_conjugate(w1: Word, w2: Word, P: Presentation | None = None) -> bool:
    return conjugacy_canonical(w1, P) == conjugacy_canonical(w2, P)


def _is_power(t: tuple[int, ...], d: int) -> bool:
    k = len(t) // d
    return t == t[:k] * d


def root_multiplicity(c: LoopClass) -> int:
    """Largest ``m`` with ``c`` the class of an ``m``-th power (0 for the trivial class)."""
    if c.is_trivial:
        return 0
    if c.genus == 1:
        from math import gcd

        return gcd(abs(c.key[0]), abs(c.key[1]))
    _, closure = _canonical_closure(c.key, c.genus)
    n = len(c.key)
    best = 1
    for d in range(2, n + 1):
        if n % d == 0 and any(_is_power(t, d) for t in closure):
            best = d
    return best


def _reduced_words(genus: int, length: int) -> Iterator[tuple[int, ...]]:
    alphabet = range(4 * genus)

    def rec(prefix: list[int]):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in alphabet:
            if prefix and c == prefix[-1] ^ 1:
                continue
            prefix.append(c)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def enumerate_classes(P: Presentation | int, max_len: int) -> list[LoopClass]:
    """All loop classes of canonical length <= ``max_len``, trivial class first."""
    genus = P if isinstance(P, int) else P.genus
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    if genus == 1:
        out = [
            LoopClass(1, (p, q))
            for p in range(-max_len, max_len + 1)
            for q in range(-max_len, max_len + 1)
            if abs(p) + abs(q) <= max_len
        ]
        return sorted(out, key=LoopClass.sort_key)
    found = {()}
    for n in range(1, max_len + 1):
        for t in _reduced_words(genus, n):
            if n > 1 and t[0] == t[-1] ^ 1:
                continue
            if t != min_rotation(t):
                continue
            canon, _ = _canonical_closure(t, genus)
            found.add(canon)
    return sorted((LoopClass(genus, k) for k in found), key=LoopClass.sort_key)


def all_reduced_words(genus: int, max_len: int) -> Iterable[Word]:
    """Every freely reduced word of length <= ``max_len``, shortest first."""
    for n in range(max_len + 1):
        for t in _reduced_words(genus, n):
            yield Word(genus, t)
