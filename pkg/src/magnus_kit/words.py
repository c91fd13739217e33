"""Exact free-group word arithmetic.

Words are immutable, always freely reduced sequences of signed letters.  A
letter's symbol is either plain (``a``) or indexed (``b[3]``); the indexed
form is what the subgroup-rewriting machinery uses.  All operations return
new values, so words are safe to share and to hash.

Word grammar (CLI and config files): whitespace-separated tokens of the form
``name``, ``name^-1``, ``name[i]`` or ``name[i]^-1`` where ``name`` matches
``[A-Za-z][A-Za-z0-9_]*`` and ``i`` is a signed decimal integer.  Empty input
denotes the identity.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .errors import MissingImage, WordParseError


class GenSym(NamedTuple):
    """Generator symbol: a name plus an optional integer index."""

    name: str
    index: Optional[int] = None

    def __str__(self) -> str:
        if self.index is None:
            return self.name
        return "%s[%d]" % (self.name, self.index)


class Letter(NamedTuple):
    sym: GenSym
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.sym, -self.sign)

    def __str__(self) -> str:
        return str(self.sym) + ("^-1" if self.sign < 0 else "")


def letter(name: str, index: Optional[int] = None, sign: int = 1) -> Letter:
    if sign not in (1, -1):
        raise ValueError("letter sign must be +1 or -1, got %r" % (sign,))
    return Letter(GenSym(name, index), sign)


def letter_sort_key(l: Letter):
    # Fixed total order: name, then index (plain symbols first), then sign.
    return (l.sym.name, l.sym.index is not None, l.sym.index or 0, l.sign)


class Word:
    """A freely reduced word.  The constructor reduces whatever it is given."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        out: list[Letter] = []
        for l in letters:
            if out and out[-1].sym == l.sym and out[-1].sign == -l.sign:
                out.pop()
            else:
                out.append(l)
        self.letters: tuple[Letter, ...] = tuple(out)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(l.inverse() for l in reversed(self.letters))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        return Word(base.letters * abs(n))

    def __repr__(self) -> str:
        return "Word(%s)" % (format_word(self) or "1")

    def __str__(self) -> str:
        return format_word(self)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def names(self) -> set[str]:
        return {l.sym.name for l in self.letters}


IDENTITY = Word()


def free_reduce(raw: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence.  Idempotent."""
    return Word(raw)


def invert(w: Word) -> Word:
    return ~w


def concat(*ws: Word) -> Word:
    out: list[Letter] = []
    for w in ws:
        out.extend(w.letters)
    return Word(out)


def conjugate(w: Word, h: Word) -> Word:
    """h^-1 w h."""
    return Word((~h).letters + w.letters + h.letters)


def commutator(g: Word, h: Word) -> Word:
    """g^-1 h^-1 g h."""
    return Word((~g).letters + (~h).letters + g.letters + h.letters)


def exponent_sum(w: Word, gen: str) -> int:
    """Signed count of the occurrences of generator ``gen`` in ``w``."""
    return sum(l.sign for l in w.letters if l.sym.name == gen)


def kill_generators(w: Word, kill: Iterable[str]) -> Word:
    """Quotient map deleting every letter whose name lies in ``kill``."""
    dead = set(kill)
    return Word(l for l in w.letters if l.sym.name not in dead)


def apply_hom(w: Word, images: Mapping[str, Word]) -> Word:
    """Substitute each generator by its image word and freely reduce.

    Only defined for plain (unindexed) words; raises MissingImage when a
    generator of ``w`` has no image.
    """
    out: list[Letter] = []
    for l in w.letters:
        if l.sym.index is not None:
            raise MissingImage("apply_hom is defined on plain words, got %s" % (l,))
        img = images.get(l.sym.name)
        if img is None:
            raise MissingImage("no image for generator %r" % l.sym.name)
        out.extend(img.letters if l.sign > 0 else (~img).letters)
    return Word(out)


class CyclicWord:
    """A cyclically reduced word considered up to rotation.

    The canonical representative stored is the lexicographically least
    rotation under the fixed letter order, so equality and hashing are O(1)
    after construction.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[Letter]):
        letters = tuple(letters)
        for x, y in zip(letters, letters[1:] + letters[:1] if len(letters) > 1 else ()):
            if x == y.inverse():
                raise ValueError("input is not cyclically reduced")
        self.letters = _least_rotation(letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(("cyc", self.letters))

    def __repr__(self) -> str:
        return "CyclicWord(%s)" % (format_word(self.word) or "1")

    @property
    def word(self) -> Word:
        return Word(self.letters)


def _least_rotation(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    n = len(letters)
    if n <= 1:
        return letters
    doubled = letters + letters
    best = min(range(n), key=lambda t: tuple(letter_sort_key(l) for l in doubled[t : t + n]))
    return doubled[best : best + n]


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split ``w`` as conjugator^-1 * core * conjugator with a cyclically
    reduced core.  The core is returned in canonical rotation and the
    conjugator matches that rotation exactly."""
    letters = list(w.letters)
    conj: list[Letter] = []
    while len(letters) >= 2 and letters[0] == letters[-1].inverse():
        first = letters[0]
        letters = letters[1:-1]
        conj.insert(0, first.inverse())
    core = tuple(letters)
    canonical = _least_rotation(core)
    if canonical != core:
        # core = p * q, canonical = q * p: fold the rotation prefix into the
        # conjugator so that w == conj^-1 * canonical * conj still holds.
        t = _rotation_offset(core, canonical)
        prefix = core[:t]
        conj = [l.inverse() for l in reversed(prefix)] + conj
    return CyclicWord(canonical), Word(conj)


def _rotation_offset(core: tuple[Letter, ...], target: tuple[Letter, ...]) -> int:
    n = len(core)
    doubled = core + core
    for t in range(n):
        if doubled[t : t + n] == target:
            return t
    raise AssertionError("rotation offset not found")


def is_conjugate_free(w1: Word, w2: Word) -> Optional[Word]:
    """Free-group conjugacy test.

    Returns a word h with h^-1 w1 h == w2 when the cyclic reductions of the
    inputs are rotations of each other, else None.
    """
    core1, c1 = cyclic_reduce(w1)
    core2, c2 = cyclic_reduce(w2)
    if core1 != core2:
        return None
    # Both conjugators normalize to the shared canonical rotation.
    return concat(~c1, c2)


_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\[(-?\d+)\])?(\^-1)?$")
_TOKEN_INTERNAL_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\[(-?\d+)\])?(\^-1)?$")


def parse_word(text: str, allow_internal: bool = False) -> Word:
    """Parse the word grammar.  ``allow_internal`` also admits the reserved
    underscore-prefixed generator names used for fresh embedding generators
    (needed to read back emitted certificates)."""
    pattern = _TOKEN_INTERNAL_RE if allow_internal else _TOKEN_RE
    out: list[Letter] = []
    for token in text.split():
        m = pattern.match(token)
        if m is None:
            raise WordParseError("bad word token %r" % token)
        name, idx, inv = m.groups()
        out.append(Letter(GenSym(name, None if idx is None else int(idx)), -1 if inv else 1))
    return Word(out)


def format_word(w: Word) -> str:
    return " ".join(str(l) for l in w.letters)
