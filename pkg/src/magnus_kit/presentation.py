"""Presentations of the one-relator family ``<x, b, y1..ye | [x^k, b] u v>``.

The surface-group case is ``k = 1`` with the Magnus generator called ``a``.
This module owns validation, the surface-genus instantiation, the swapped
presentation used when the b-exponent vanishes, the amalgam embedding used
when it does not, and the automorphism ``psi`` together with its
inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .errors import (
    EmptyUV,
    NonPositiveK,
    PresentationError,
    SharedLetters,
    TooFewY,
    UnsupportedGenus,
    ZeroBExponent,
)
from .words import IDENTITY, Word, apply_hom, concat, exponent_sum, invert, letter, parse_word

# Reserved names for the fresh generators introduced by embed_into_H; the
# user-facing validator rejects leading underscores so these can never be
# captured by an input alphabet.
FRESH_MAGNUS = "_x"
FRESH_B = "_bbar"

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class FamilyPresentation:
    magnus_gen: str
    b_gen: str
    y_gens: tuple[str, ...]
    k: int
    u: Word
    v: Word

    @property
    def e(self) -> int:
        return len(self.y_gens)

    def generators(self) -> tuple[str, ...]:
        return (self.magnus_gen, self.b_gen) + self.y_gens

    def relator(self) -> Word:
        """x^-k b^-1 x^k b u v, freely reduced."""
        x = gen_word(self.magnus_gen)
        b = gen_word(self.b_gen)
        return concat(x ** (-self.k), ~b, x**self.k, b, self.u, self.v)

    def __str__(self) -> str:
        return "<%s | [%s^%d, %s] %s %s>" % (
            ", ".join(self.generators()),
            self.magnus_gen,
            self.k,
            self.b_gen,
            self.u,
            self.v,
        )


def gen_word(name: str, power: int = 1) -> Word:
    return Word([letter(name)]) ** power


def _structural_check(p: FamilyPresentation) -> FamilyPresentation:
    names = p.generators()
    if len(set(names)) != len(names):
        raise PresentationError("generator names must be distinct: %r" % (names,))
    if p.e < 2:
        raise TooFewY("need at least two auxiliary generators, got %d" % p.e)
    if p.k < 1:
        raise NonPositiveK("exponent k must be a positive integer, got %r" % (p.k,))
    if not p.u or not p.v:
        raise EmptyUV("u and v must be nonempty reduced words")
    ys = set(p.y_gens)
    for w, label in ((p.u, "u"), (p.v, "v")):
        bad = w.names() - ys
        if bad:
            raise PresentationError("%s uses non-auxiliary generators %r" % (label, sorted(bad)))
        if any(l.sym.index is not None for l in w):
            raise PresentationError("%s must be a plain word" % label)
    if p.u.names() & p.v.names():
        raise SharedLetters("u and v share letters %r" % sorted(p.u.names() & p.v.names()))
    return p


def validate(
    magnus_gen: str,
    b_gen: str,
    y_gens,
    k: int,
    u,
    v,
) -> FamilyPresentation:
    """Validate raw presentation data.  ``u`` and ``v`` accept words or text
    in the word grammar."""
    y_gens = tuple(y_gens)
    for name in (magnus_gen, b_gen) + y_gens:
        if not _NAME_RE.match(name):
            raise PresentationError("bad generator name %r" % name)
    if isinstance(u, str):
        u = parse_word(u)
    if isinstance(v, str):
        v = parse_word(v)
    return _structural_check(FamilyPresentation(magnus_gen, b_gen, y_gens, int(k), u, v))


def _make_internal(magnus_gen, b_gen, y_gens, k, u, v) -> FamilyPresentation:
    # Same structural invariants, but fresh reserved names are allowed.
    return _structural_check(FamilyPresentation(magnus_gen, b_gen, tuple(y_gens), k, u, v))


def from_surface_genus(genus: int) -> FamilyPresentation:
    """Presentation of the genus-``genus`` nonorientable surface group,
    ``genus >= 4``: generators a, b, y1..y_{genus-2}, relator [a,b] y1^2 (y2^2...).

    The split of the squares into u and v is fixed as "first square vs the
    rest"; any letter-disjoint nonempty split presents the same group.
    """
    if genus < 4:
        raise UnsupportedGenus("supported for genus >= 4, got %r" % (genus,))
    e = genus - 2
    ys = tuple("y%d" % (i + 1) for i in range(e))
    u = gen_word(ys[0]) ** 2
    v = IDENTITY
    for name in ys[1:]:
        v = v * gen_word(name) ** 2
    return validate("a", "b", ys, 1, u, v)


def swap_presentation(p: FamilyPresentation) -> FamilyPresentation:
    """The presentation with the roles of the two non-auxiliary generators
    exchanged: relator [b, a] v^-1 u^-1.  Only defined for k = 1; the words
    of the group need no rewriting (identity map on generators)."""
    if p.k != 1:
        raise PresentationError("swap is only defined for k = 1, got k = %d" % p.k)
    return _make_internal(p.b_gen, p.magnus_gen, p.y_gens, 1, invert(p.v), invert(p.u))


def embed_into_H(p: FamilyPresentation, r: Word) -> tuple[FamilyPresentation, dict[str, Word]]:
    """Embed the k=1 group into H by adjoining a root x of a, amalgamated
    over a = x^|r_b|, then replace b by bbar = x^{r_a} b.

    Returns the presentation of H (with fresh generator names) and the lift
    mapping old generators to words over H.  For r_b < 0 the substitution
    x -> x^-1 is applied throughout so that k stays positive; in all cases
    the lifted r has zero x-exponent.
    """
    if p.k != 1:
        raise PresentationError("embedding starts from a k = 1 presentation")
    r_b = exponent_sum(r, p.b_gen)
    if r_b == 0:
        raise ZeroBExponent("r has zero b-exponent; use the swapped presentation")
    r_a = exponent_sum(r, p.magnus_gen)
    sigma = 1 if r_b > 0 else -1
    k = abs(r_b)
    hp = _make_internal(FRESH_MAGNUS, FRESH_B, p.y_gens, k, p.u, p.v)
    lift: dict[str, Word] = {
        p.magnus_gen: gen_word(FRESH_MAGNUS) ** k,
        p.b_gen: concat(gen_word(FRESH_MAGNUS) ** (-sigma * r_a), gen_word(FRESH_B)),
    }
    for y in p.y_gens:
        lift[y] = gen_word(y)
    return hp, lift


@dataclass(frozen=True)
class PsiMap:
    forward: Mapping[str, Word]
    backward: Mapping[str, Word]


@lru_cache(maxsize=None)
def psi(p: FamilyPresentation) -> PsiMap:
    """The b-stretching automorphism: x -> x, b -> bu, each letter c of u to
    x^-k c x^k, each letter d of v to (x^-k u x^k)^-1 d (x^-k u x^k).
    Generators occurring in neither u nor v are fixed.

    The inverse images are derived from the forward ones: c -> x^k c x^-k,
    b -> b (x^k u^-1 x^-k), d -> u d u^-1; the round-trip identity on every
    generator is checked at construction time.
    """
    x = gen_word(p.magnus_gen)
    xk = x**p.k
    b = gen_word(p.b_gen)
    t = concat(xk**-1, p.u, xk)  # x^-k u x^k
    forward: dict[str, Word] = {p.magnus_gen: x, p.b_gen: b * p.u}
    backward: dict[str, Word] = {
        p.magnus_gen: x,
        p.b_gen: concat(b, xk, invert(p.u), xk**-1),
    }
    u_names = p.u.names()
    v_names = p.v.names()
    for y in p.y_gens:
        yw = gen_word(y)
        if y in u_names:
            forward[y] = concat(xk**-1, yw, xk)
            backward[y] = concat(xk, yw, xk**-1)
        elif y in v_names:
            forward[y] = concat(invert(t), yw, t)
            backward[y] = concat(p.u, yw, invert(p.u))
        else:
            forward[y] = yw
            backward[y] = yw
    pm = PsiMap(forward, backward)
    for name in p.generators():
        g = gen_word(name)
        if apply_hom(apply_hom(g, forward), backward) != g:
            raise AssertionError("psi inverse fails on %r" % name)
        if apply_hom(apply_hom(g, backward), forward) != g:
            raise AssertionError("psi inverse fails on %r" % name)
    return pm


def psi_apply(p: FamilyPresentation, w: Word, n: int) -> Word:
    """Apply the n-th power of the automorphism psi (negative n uses the
    inverse)."""
    pm = psi(p)
    images = pm.forward if n >= 0 else pm.backward
    out = w
    for _ in range(abs(n)):
        out = apply_hom(out, images)
    return out


def load_presentation(text: str) -> FamilyPresentation:
    """Parse the line-oriented ``key = value`` presentation config format.

    Keys: magnus_gen, b_gen, y_gens (comma-separated), k, u, v; or the
    shorthand ``surface_genus = N``.  Blank lines and ``#`` comments are
    ignored.
    """
    data: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise PresentationError("line %d: expected key = value" % lineno)
        key, _, value = line.partition("=")
        data[key.strip()] = value.strip()
    if "surface_genus" in data:
        extra = set(data) - {"surface_genus"}
        if extra:
            raise PresentationError("surface_genus cannot be combined with %r" % sorted(extra))
        try:
            genus = int(data["surface_genus"])
        except ValueError:
            raise UnsupportedGenus("surface_genus must be an integer")
        return from_surface_genus(genus)
    missing = {"magnus_gen", "b_gen", "y_gens", "k", "u", "v"} - set(data)
    if missing:
        raise PresentationError("missing presentation keys %r" % sorted(missing))
    try:
        k = int(data["k"])
    except ValueError:
        raise NonPositiveK("k must be an integer, got %r" % data["k"])
    y_gens = tuple(name.strip() for name in data["y_gens"].split(",") if name.strip())
    return validate(data["magnus_gen"], data["b_gen"], y_gens, k, data["u"], data["v"])
