"""Special-element normalization.

The kernel N splits as a free product of k factors, one per residue class of
the letter index mod k.  A nontrivial element decomposes into pieces (maximal
same-residue runs of its normal form).  An element is *special* when

  (1) its piece count is minimal among conjugates (first and last pieces lie
      in different factors when there is more than one),
  (2) if it has a single piece, its width is minimal among conjugates, and
  (3) no piece is conjugate in the ambient group to a power of b.

``specialize`` reaches such a form by piece-level cyclic reduction, powers of
the automorphism psi for (3), and a rotation scan of the cyclic normal
form for (2), recording the conjugator and the psi power it used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IterationCapExceeded, TrivialElement
from .kernel import (
    CanonicalKernelWord,
    KernelWord,
    alpha_omega,
    canonicalize,
    expand,
    kernel_gen,
    rs_rewrite,
)
from .presentation import FamilyPresentation, psi_apply
from .words import IDENTITY, CyclicWord, Word, cyclic_reduce, invert, letter_sort_key


def residue(i: int, k: int) -> int:
    """Residue of an index mod k, normalized to [1, k]."""
    return (i - 1) % k + 1


@dataclass(frozen=True)
class PieceDecomposition:
    pieces: tuple[KernelWord, ...]
    residues: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.pieces)


def pieces(kw: KernelWord) -> PieceDecomposition:
    """Free-product normal form of a nontrivial element: maximal runs of the
    canonical form whose letter indices share a residue class mod k.  Each
    run is a nonempty reduced word over the free basis, hence nontrivial, so
    the runs are exactly the pieces."""
    canon = canonicalize(kw)
    if not canon.word:
        raise TrivialElement("the identity has no piece decomposition")
    k = kw.pres.k
    runs: list[list] = [[canon.word.letters[0]]]
    for l in canon.word.letters[1:]:
        if residue(l.sym.index, k) == residue(runs[-1][-1].sym.index, k):
            runs[-1].append(l)
        else:
            runs.append([l])
    return PieceDecomposition(
        tuple(KernelWord(Word(run), kw.pres) for run in runs),
        tuple(residue(run[0].sym.index, k) for run in runs),
    )


def is_power_of_b_conjugate(z: KernelWord) -> bool:
    """Whether z is conjugate in the ambient group to a nonzero power of b.

    Equivalently z is conjugate in N to some b[i]^m; N is free, so this is
    equality of cyclic reductions up to rotation.  Conjugacy preserves cyclic
    length and the cyclic length of b[i]^m is |m| times that of b[i], which
    makes the search finite; candidate indices stay within one k of the
    cyclic core's index span because the core of b[i] reaches from the
    residue of i to within k of i.
    """
    pres = z.pres
    k = pres.k
    canon = canonicalize(z)
    if not canon.word:
        raise TrivialElement("the identity is not compared against b-powers")
    core, _ = cyclic_reduce(canon.word)
    n = len(core)
    idx = [l.sym.index for l in core.letters]
    for i in range(min(idx) - k, max(idx) + k + 1):
        bcore, _ = cyclic_reduce(canonicalize(kernel_gen(pres, pres.b_gen, i)).word)
        if n % len(bcore) != 0:
            continue
        m = n // len(bcore)
        for mm in (m, -m):
            if CyclicWord((bcore.word**mm).letters) == core:
                return True
    return False


@dataclass(frozen=True)
class SpecialElement:
    """A normalized kernel element.  ``conjugator`` is a word c over the
    ambient generators with  expand(element) = c^-1 psi^n(original) c  in the
    ambient group, where n = psi_power and original is the expansion of the
    input element."""

    element: CanonicalKernelWord
    pieces: PieceDecomposition
    alpha: int
    omega: int
    width: int
    conjugator: Word
    psi_power: int

    @property
    def piece_count(self) -> int:
        return len(self.pieces)


def specialize(kw: KernelWord, psi_cap: int = 64, min_psi: int = 0) -> SpecialElement:
    """Normalize a nontrivial kernel element to special form.

    ``min_psi`` forces at least that many applications of psi before the
    conditions are re-checked; the decision pipeline uses it to apply the
    same automorphism power to both elements of a pair.
    """
    pres = kw.pres
    cur = canonicalize(kw)
    if not cur.word:
        raise TrivialElement("cannot specialize the identity")
    conj = IDENTITY
    n = 0
    while n < min_psi:
        cur, conj, n = _psi_step(pres, cur, conj, n)
    while True:
        dec = pieces(cur)
        # condition (1): conjugate by the first piece until the ends lie in
        # different factors; each rotation strictly shrinks the piece count.
        while len(dec) > 1 and dec.residues[0] == dec.residues[-1]:
            z1 = dec.pieces[0]
            rest = Word(cur.word.letters[len(z1.word) :])
            cur = canonicalize(KernelWord(rest * z1.word, pres))
            conj = conj * expand(z1)
            dec = pieces(cur)
        # condition (3): push every piece away from the b-power conjugacy
        # classes by twisting with psi.
        if any(is_power_of_b_conjugate(z) for z in dec.pieces):
            if n >= psi_cap:
                raise IterationCapExceeded(
                    "no b-power-free form within %d psi applications" % psi_cap
                )
            cur, conj, n = _psi_step(pres, cur, conj, n)
            continue
        break
    if len(dec) == 1:
        cur, conj = _minimize_width(pres, cur, conj)
        dec = pieces(cur)
    a, o, width = alpha_omega(cur)
    return SpecialElement(cur, dec, a, o, width, conj, n)


def _psi_step(pres, cur, conj, n):
    image = psi_apply(pres, expand(cur), 1)
    return canonicalize(rs_rewrite(pres, image)), psi_apply(pres, conj, 1), n + 1


def _minimize_width(pres: FamilyPresentation, cur: CanonicalKernelWord, conj: Word):
    """Width minimization for single-piece elements.

    Cyclically reduce the canonical form (a conjugation), then scan every
    rotation of the cyclic core for the least (width, alpha), breaking ties
    by the letter order.  The rotation set is an invariant of the conjugacy
    class, so conjugate inputs normalize to the same width and to aligned
    window positions.
    """
    conj_in = conj
    core, c0 = cyclic_reduce(cur.word)
    if c0:
        conj = conj * expand(KernelWord(invert(c0), pres))
    letters = core.letters
    best = None
    for t in range(len(letters)):
        rot = Word(letters[t:] + letters[:t])
        a, _, width = alpha_omega(KernelWord(rot, pres))
        key = (width, a, tuple(letter_sort_key(l) for l in rot.letters))
        if best is None or key < best[0]:
            best = (key, t, rot)
    _, t, rot = best
    if rot == cur.word:  # already the chosen representative: keep it a no-op
        return cur, conj_in
    if t:
        conj = conj * expand(KernelWord(Word(letters[:t]), pres))
    return CanonicalKernelWord(rot, pres), conj
