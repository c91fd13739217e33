"""The kernel N of the exponent map sending the Magnus generator x to 1.

Elements of N are words over the indexed alphabet ``b[i]``, ``y_j[i]``
(``g[i]`` stands for ``x^-i g x^i``).  N is presented by the relations
``b[i] u[i] v[i] = b[i+k]``; eliminating all ``b[i]`` outside ``[1, k]``
exhibits N as a free group on the remaining letters, which is what gives an
exact word problem, canonical forms, and the minimal-window (alpha/omega)
statistics used everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import (
    NonzeroXExponent,
    PreconditionViolated,
    ResourceCapExceeded,
    TrivialElement,
)
from .presentation import FamilyPresentation
from .words import GenSym, Letter, Word, exponent_sum

INDEX_CAP = 10**6


class Window(NamedTuple):
    lo: int
    hi: int


def _check_window(win) -> Window:
    win = Window(*win)
    if win.lo > win.hi:
        raise PreconditionViolated("empty window %r" % (win,))
    return win


@dataclass(frozen=True)
class KernelWord:
    """A freely reduced word over the indexed kernel alphabet, tied to its
    ambient presentation.  Not necessarily in canonical form."""

    word: Word
    pres: FamilyPresentation

    def __post_init__(self):
        names = {self.pres.b_gen, *self.pres.y_gens}
        for l in self.word:
            if l.sym.index is None:
                raise ValueError("kernel words use indexed letters, got %s" % (l,))
            if l.sym.name not in names:
                raise ValueError("letter %s is not in the kernel alphabet" % (l,))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return str(self.word)

    def indices(self) -> tuple[int, ...]:
        return tuple(l.sym.index for l in self.word)

    def span(self) -> Optional[Window]:
        if not self.word:
            return None
        idx = self.indices()
        return Window(min(idx), max(idx))

    def b_count(self) -> int:
        return sum(1 for l in self.word if l.sym.name == self.pres.b_gen)


class CanonicalKernelWord(KernelWord):
    """A kernel word whose b-letters all have indices in [1, k]; this is the
    free-basis normal form, so equality of canonical words decides equality
    in N."""


def _indexed(w: Word, i: int) -> list[Letter]:
    return [Letter(GenSym(l.sym.name, i), l.sign) for l in w]


def kernel_gen(pres: FamilyPresentation, name: str, i: int, sign: int = 1) -> KernelWord:
    return KernelWord(Word([Letter(GenSym(name, i), sign)]), pres)


def b_letter(pres: FamilyPresentation, i: int, sign: int = 1) -> Letter:
    return Letter(GenSym(pres.b_gen, i), sign)


def w_word(pres: FamilyPresentation, i: int) -> KernelWord:
    """The relation word b[i] u[i] v[i]; equals b[i+k] in N."""
    letters = [b_letter(pres, i)] + _indexed(pres.u, i) + _indexed(pres.v, i)
    return KernelWord(Word(letters), pres)


def rs_rewrite(pres: FamilyPresentation, w: Word) -> KernelWord:
    """Rewrite a zero-x-exponent word over the ambient generators into the
    kernel alphabet, tracking the running x-position: a non-x letter g seen
    after a prefix of x-exponent -i is emitted as g[i]."""
    x = pres.magnus_gen
    known = set(pres.generators())
    if exponent_sum(w, x) != 0:
        raise NonzeroXExponent("word has x-exponent %d" % exponent_sum(w, x))
    pos = 0
    out: list[Letter] = []
    for l in w:
        if l.sym.index is not None:
            raise ValueError("expected a plain word, got letter %s" % (l,))
        if l.sym.name not in known:
            raise ValueError("unknown generator %r" % l.sym.name)
        if l.sym.name == x:
            pos += l.sign
        else:
            out.append(Letter(GenSym(l.sym.name, -pos), l.sign))
    return KernelWord(Word(out), pres)


def expand(kw: KernelWord) -> Word:
    """Inverse of rs_rewrite: g[i] -> x^-i g x^i, concatenated and reduced."""
    x = GenSym(kw.pres.magnus_gen)
    out: list[Letter] = []
    pos = 0
    for l in kw.word:
        delta = l.sym.index - pos
        step = -1 if delta > 0 else 1
        out.extend([Letter(x, step)] * abs(delta))
        out.append(Letter(GenSym(l.sym.name), l.sign))
        pos = l.sym.index
    step = 1 if pos > 0 else -1
    out.extend([Letter(x, step)] * abs(pos))
    return Word(out)


def shift(kw: KernelWord, i: int) -> KernelWord:
    """Add i to every letter index; conjugation by x^i in the ambient group."""
    letters = [Letter(GenSym(l.sym.name, l.sym.index + i), l.sign) for l in kw.word]
    return KernelWord(Word(letters), kw.pres)


def _rewrite_b_range(pres: FamilyPresentation, letters: Iterable[Letter], blo: int, bhi: int) -> Word:
    """Eliminate every b-letter with index outside [blo, bhi].

    A too-high b[l] is replaced by b[l-k] u[l-k] v[l-k] and a too-low one by
    b[l+k] v[l]^-1 u[l]^-1, leftmost letter first, with full free reduction
    after each substitution.  The target range must have length >= k so the
    rewriting terminates on the free basis it describes.
    """
    b = pres.b_gen
    k = pres.k
    assert bhi - blo + 1 >= k
    word = Word(letters)
    while True:
        target = None
        for n, l in enumerate(word):
            if l.sym.name == b and not (blo <= l.sym.index <= bhi):
                target = (n, l)
                break
        if target is None:
            return word
        n, l = target
        idx = l.sym.index
        if abs(idx) > INDEX_CAP:
            raise ResourceCapExceeded("b-index %d exceeds the index guard" % idx)
        if idx > bhi:
            repl = [b_letter(pres, idx - k)] + _indexed(pres.u, idx - k) + _indexed(pres.v, idx - k)
        else:
            repl = (
                [b_letter(pres, idx + k)]
                + [x.inverse() for x in reversed(_indexed(pres.v, idx))]
                + [x.inverse() for x in reversed(_indexed(pres.u, idx))]
            )
        if l.sign < 0:
            repl = [x.inverse() for x in reversed(repl)]
        word = Word(word.letters[:n] + tuple(repl) + word.letters[n + 1 :])


def canonicalize(kw: KernelWord) -> CanonicalKernelWord:
    """Normal form over the free basis: all y-letters plus b[1..k] only.
    Two kernel words represent the same element of N iff their canonical
    forms are equal."""
    word = _rewrite_b_range(kw.pres, kw.word, 1, kw.pres.k)
    return CanonicalKernelWord(word, kw.pres)


def is_trivial_kernel(kw: KernelWord) -> bool:
    return not canonicalize(kw).word


def to_left_basis(kw: KernelWord, win) -> KernelWord:
    """Rewrite into the left basis of the window subgroup: keeps
    b[lo .. lo+k-1] and all y-letters.  Requires every letter index of kw to
    lie inside the window."""
    win = _check_window(win)
    _require_in_window(kw, win)
    word = _rewrite_b_range(kw.pres, kw.word, win.lo, win.lo + kw.pres.k - 1)
    return KernelWord(word, kw.pres)


def to_right_basis(kw: KernelWord, win) -> KernelWord:
    """Rewrite into the right basis of the window subgroup: keeps
    b[hi-k+1 .. hi] and all y-letters."""
    win = _check_window(win)
    _require_in_window(kw, win)
    word = _rewrite_b_range(kw.pres, kw.word, win.hi - kw.pres.k + 1, win.hi)
    return KernelWord(word, kw.pres)


def _require_in_window(kw: KernelWord, win: Window) -> None:
    span = kw.span()
    if span is not None and not (win.lo <= span.lo and span.hi <= win.hi):
        raise PreconditionViolated(
            "letters span [%d, %d], outside window [%d, %d]" % (span.lo, span.hi, win.lo, win.hi)
        )


def basis_form(kw: KernelWord, win) -> KernelWord:
    """The element written in the right basis of the window subgroup, for an
    element known to lie in it (letters may stick out of the window before
    rewriting; membership is what matters).  Raises if the element is not a
    member."""
    win = _check_window(win)
    pres = kw.pres
    word = _rewrite_b_range(pres, canonicalize(kw).word, win.hi - pres.k + 1, win.hi)
    return _checked_member(word, pres, win)


def left_basis_form(kw: KernelWord, win) -> KernelWord:
    """Mirror of basis_form for the left basis (keeps b[lo .. lo+k-1])."""
    win = _check_window(win)
    pres = kw.pres
    word = _rewrite_b_range(pres, canonicalize(kw).word, win.lo, win.lo + pres.k - 1)
    return _checked_member(word, pres, win)


def _checked_member(word: Word, pres: FamilyPresentation, win: Window) -> KernelWord:
    nf = KernelWord(word, pres)
    span = nf.span()
    if span is not None and not (win.lo <= span.lo and span.hi <= win.hi):
        raise PreconditionViolated(
            "element is not a member of the window subgroup [%d, %d]" % (win.lo, win.hi)
        )
    return nf


def in_window(kw: KernelWord, win) -> bool:
    """Exact membership test for the subgroup generated by the window's
    indexed generators: rewrite into its right basis (a subset of a free
    basis of N) and check which letters survive."""
    win = _check_window(win)
    pres = kw.pres
    word = _rewrite_b_range(pres, canonicalize(kw).word, win.hi - pres.k + 1, win.hi)
    span = KernelWord(word, pres).span()
    return span is None or (win.lo <= span.lo and span.hi <= win.hi)


def alpha_omega(kw: KernelWord) -> tuple[int, int, int]:
    """Minimal-window statistics of a nontrivial element: the window [i, j]
    containing the element with j - i minimal and, among those, i minimal.
    Returns (alpha, omega, width).

    The scan considers every window end j in the canonical-form index span
    widened by k times the number of b-letters; substitutions move b-indices
    in steps of k and leave y-letters at the old index, which caps how far a
    window can sit from the canonical span.  The normal form with respect to
    the basis keeping b[j-k+1 .. j] is maintained incrementally while j
    increases, and the element lies in [i, j] iff every surviving letter
    index does.
    """
    pres = kw.pres
    canon = canonicalize(kw)
    if not canon.word:
        raise TrivialElement("alpha/omega are undefined for the identity")
    span = canon.span()
    pad = pres.k * canon.b_count()
    jmin, jmax = span.lo - pad, span.hi + pad
    best = None  # (width, alpha, omega)
    cur = _rewrite_b_range(pres, canon.word, jmin - pres.k + 1, jmin)
    for j in range(jmin, jmax + 1):
        if j > jmin:
            cur = _rewrite_b_range(pres, cur, j - pres.k + 1, j)
        idx = [l.sym.index for l in cur]
        a, b = min(idx), max(idx)
        if b <= j:
            width = j - a + 1
            if best is None or width < best[0]:
                best = (width, a, j)
    assert best is not None  # the canonical span window always succeeds
    return best[1], best[2], best[0]


def is_trivial_in_H(pres: FamilyPresentation, w: Word) -> bool:
    """Exact word problem for the ambient one-relator group: nonzero
    x-exponent words are never trivial, the rest reduce to the kernel's free
    normal form."""
    if exponent_sum(w, pres.magnus_gen) != 0:
        return False
    return is_trivial_kernel(rs_rewrite(pres, w))
