"""Decision procedures for equality of normal closures.

In a free group two elements have the same normal closure exactly when one
is conjugate to the other or to its inverse (``free_magnus``).  The same
dichotomy holds in the one-relator family handled here, and
``magnus_same_closure`` decides it, producing a conjugator certificate that
is verified against the exact word problem before being returned.
``nc_member_bounded`` is an independent brute-force oracle used by the test
suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .errors import (
    IterationCapExceeded,
    PreconditionViolated,
    ResourceCapExceeded,
)
from .kernel import (
    KernelWord,
    canonicalize,
    expand,
    is_trivial_in_H,
    rs_rewrite,
    shift,
)
from .presentation import (
    FRESH_B,
    FRESH_MAGNUS,
    FamilyPresentation,
    embed_into_H,
    gen_word,
    psi_apply,
    swap_presentation,
)
from .special import specialize
from .words import (
    IDENTITY,
    Word,
    apply_hom,
    concat,
    conjugate,
    cyclic_reduce,
    exponent_sum,
    invert,
    is_conjugate_free,
    letter,
)

SAME = "same"
DIFFERENT = "different"

REASON_TRIVIALITY = "TrivialityMismatch"
REASON_X_EXPONENT = "XExponentMismatch"
REASON_WIDTH = "WidthMismatch"
REASON_WINDOW = "WindowMismatch"
REASON_CYCLIC = "CyclicWordMismatch"


@dataclass(frozen=True)
class Verdict:
    kind: str
    sign: Optional[int] = None
    conjugator: Optional[Word] = None
    conjugator_g: Optional[Word] = None
    reason: Optional[str] = None

    @property
    def same(self) -> bool:
        return self.kind == SAME


def _same(sign: int, conjugator: Word, conjugator_g: Optional[Word] = None) -> Verdict:
    return Verdict(SAME, sign=sign, conjugator=conjugator, conjugator_g=conjugator_g)


def _different(reason: str) -> Verdict:
    return Verdict(DIFFERENT, reason=reason)


def free_magnus(r: Word, s: Word) -> Verdict:
    """Same-normal-closure decision in a free group: positive exactly when
    the cyclic reductions of r and s agree up to rotation and inversion."""
    core_r, _ = cyclic_reduce(r)
    core_s, _ = cyclic_reduce(s)
    if len(core_r) == 0 or len(core_s) == 0:
        if len(core_r) == len(core_s):
            return _same(1, IDENTITY)
        return _different(REASON_TRIVIALITY)
    for sign, candidate in ((1, r), (-1, invert(r))):
        h = is_conjugate_free(candidate, s)
        if h is not None:
            assert concat(invert(h), r, h, invert(s if sign > 0 else invert(s))).is_identity
            return _same(sign, h)
    return _different(REASON_CYCLIC)


def _route(p: FamilyPresentation, r: Word, route: str):
    """Choose the presentation in which r has zero Magnus-exponent.

    route "auto" swaps when the b-exponent of r vanishes and embeds into the
    amalgam extension otherwise; "direct" keeps the presentation as is
    (valid when the a-exponent vanishes) and exists for cross-checking."""
    r_b = exponent_sum(r, p.b_gen)
    if route == "auto":
        route = "swap" if r_b == 0 else "embed"
    if route == "direct":
        if exponent_sum(r, p.magnus_gen) != 0:
            raise PreconditionViolated("direct route needs zero a-exponent")
        return "direct", p, None
    if route == "swap":
        if r_b != 0:
            raise PreconditionViolated("swap route needs zero b-exponent")
        return "swap", swap_presentation(p), None
    hp, lift = embed_into_H(p, r)
    return "embed", hp, lift


def magnus_same_closure(
    p: FamilyPresentation,
    r: Word,
    s: Word,
    psi_cap: int = 64,
    route: str = "auto",
) -> Verdict:
    """Decide whether r and s have the same normal closure in the k = 1
    group presented by p, with a verified conjugator certificate on the
    positive side.

    Pipeline: triviality screen; move to a presentation where r has zero
    Magnus-exponent (swapping the two distinguished generators, or embedding
    into the amalgam extension H when the b-exponent of r is nonzero);
    screen s by its Magnus-exponent; rewrite both into the kernel and
    specialize them under a common psi power; compare widths; align windows
    and test conjugacy of the free-group normal forms up to inversion.  The
    certificate is assembled from the specialization conjugators, the shift,
    the free-group conjugator and the inverse psi power, then checked with
    the exact word problem.
    """
    if p.k != 1:
        raise PreconditionViolated("the decision procedure expects a k = 1 presentation")
    r_triv = is_trivial_in_H(p, r)
    s_triv = is_trivial_in_H(p, s)
    if r_triv or s_triv:
        if r_triv and s_triv:
            return _same(1, IDENTITY, IDENTITY)
        return _different(REASON_TRIVIALITY)
    route_name, hp, lift = _route(p, r, route)
    if lift is None:
        r_h, s_h = r, s
    else:
        r_h, s_h = apply_hom(r, lift), apply_hom(s, lift)
    x = hp.magnus_gen
    if exponent_sum(s_h, x) != 0:
        return _different(REASON_X_EXPONENT)
    rk = rs_rewrite(hp, r_h)
    sk = rs_rewrite(hp, s_h)
    r_star = specialize(rk, psi_cap=psi_cap)
    s_star = specialize(sk, psi_cap=psi_cap)
    # One automorphism must act on both elements: force the larger power on
    # the other side and re-check until the powers agree.
    rounds = 0
    while r_star.psi_power != s_star.psi_power:
        n = max(r_star.psi_power, s_star.psi_power)
        if r_star.psi_power < n:
            r_star = specialize(rk, psi_cap=psi_cap, min_psi=n)
        if s_star.psi_power < n:
            s_star = specialize(sk, psi_cap=psi_cap, min_psi=n)
        rounds += 1
        if rounds > psi_cap:
            raise IterationCapExceeded("psi powers of the pair failed to synchronize")
    if r_star.width != s_star.width:
        return _different(REASON_WIDTH)
    j = s_star.alpha - r_star.alpha
    if s_star.omega != r_star.omega + j:
        return _different(REASON_WINDOW)
    r_aligned = canonicalize(shift(r_star.element, j)).word
    s_canon = canonicalize(s_star.element).word
    for sign in (1, -1):
        candidate = r_aligned if sign > 0 else invert(r_aligned)
        h = is_conjugate_free(candidate, s_canon)
        if h is None:
            continue
        d = expand(KernelWord(h, hp))
        q = concat(r_star.conjugator, gen_word(x) ** j, d, invert(s_star.conjugator))
        conj = psi_apply(hp, q, -r_star.psi_power)
        target = s_h if sign > 0 else invert(s_h)
        if not is_trivial_in_H(hp, concat(invert(conj), r_h, conj, invert(target))):
            raise AssertionError("assembled certificate failed verification")
        conj_g = _project_conjugator(p, route_name, r, conj)
        if conj_g is not None:
            check = concat(invert(conj_g), r, conj_g, invert(s if sign > 0 else invert(s)))
            if not is_trivial_in_H(p, check):
                conj_g = None
        return _same(sign, conj, conj_g)
    return _different(REASON_CYCLIC)


def _project_conjugator(
    p: FamilyPresentation, route_name: str, r: Word, conj: Word
) -> Optional[Word]:
    """Best-effort rewrite of an H-conjugator over the original generators:
    replace bbar by its definition and collapse x-runs into powers of a.
    Returns None when some x-run is not a multiple of the amalgamation
    exponent."""
    if route_name != "embed":
        return conj
    r_b = exponent_sum(r, p.b_gen)
    r_a = exponent_sum(r, p.magnus_gen)
    sigma = 1 if r_b > 0 else -1
    k = abs(r_b)
    images = {
        FRESH_MAGNUS: gen_word(FRESH_MAGNUS),
        FRESH_B: concat(gen_word(FRESH_MAGNUS) ** (sigma * r_a), gen_word(p.b_gen)),
    }
    for y in p.y_gens:
        images[y] = gen_word(y)
    w = apply_hom(conj, images)
    out: list = []
    run = 0
    for l in w:
        if l.sym.name == FRESH_MAGNUS:
            run += l.sign
            continue
        if run % k != 0:
            return None
        out.extend((gen_word(p.magnus_gen) ** (run // k)).letters)
        run = 0
        out.append(l)
    if run % k != 0:
        return None
    out.extend((gen_word(p.magnus_gen) ** (run // k)).letters)
    return Word(out)


def verify_certificate(p: FamilyPresentation, r: Word, s: Word, v: Verdict) -> bool:
    """Check a positive verdict against the exact word problem: the
    conjugator must carry r to s^sign in the extension determined by r.
    Conjugators over the original generators are lifted automatically."""
    if not v.same:
        raise PreconditionViolated("only positive verdicts carry certificates")
    if v.sign not in (1, -1) or v.conjugator is None:
        return False
    route_name, hp, lift = _route(p, r, "auto")
    if lift is None:
        r_h, s_h = r, s
        conj = v.conjugator
    else:
        r_h, s_h = apply_hom(r, lift), apply_hom(s, lift)
        conj = v.conjugator
        if conj.names() <= set(p.generators()):
            conj = apply_hom(conj, lift)
    target = s_h if v.sign > 0 else invert(s_h)
    return is_trivial_in_H(hp, concat(invert(conj), r_h, conj, invert(target)))


Ambient = Union[FamilyPresentation, Sequence[str]]


def _reduced_words(gens: tuple[str, ...], max_len: int) -> Iterator[Word]:
    """All freely reduced words of length <= max_len over the generators."""
    alphabet = [letter(g, sign=s) for g in gens for s in (1, -1)]
    level: list[tuple] = [()]
    yield IDENTITY
    for _ in range(max_len):
        nxt = []
        for prefix in level:
            for l in alphabet:
                if prefix and prefix[-1] == l.inverse():
                    continue
                word = prefix + (l,)
                nxt.append(word)
                yield Word(word)
        level = nxt


def _conjugate_terms(r: Word, gens: tuple[str, ...], conj_len: int) -> list[Word]:
    seen = set()
    terms = []
    for h in _reduced_words(gens, conj_len):
        for e in (1, -1):
            t = conjugate(r**e, h)
            if t.letters not in seen:
                seen.add(t.letters)
                terms.append(t)
    return terms


@lru_cache(maxsize=4096)
def _free_closure_products(
    r_letters: tuple, gens: tuple[str, ...], depth: int, conj_len: int
) -> frozenset:
    """Free-group case: the set of reduced words expressible as a product of
    at most ``depth`` conjugates of r or its inverse with conjugators of
    length <= conj_len."""
    terms = _conjugate_terms(Word(r_letters), gens, conj_len)
    out = set()
    for d in range(1, depth + 1):
        for combo in itertools.product(terms, repeat=d):
            out.add(concat(*combo).letters)
    return frozenset(out)


def nc_member_bounded(
    target: Word,
    r: Word,
    ambient: Ambient,
    depth: int,
    conj_len: int,
    product_cap: int = 400_000,
) -> bool:
    """Bounded normal-closure membership oracle.

    True iff target equals, in the ambient group, a product of at most
    ``depth`` conjugates of r or r^-1 whose conjugators have length at most
    ``conj_len``.  Exhaustive within the bounds; sound and complete only
    there.  ``ambient`` is a family presentation or, for the free-group
    case, a sequence of generator names.
    """
    if depth < 1 or conj_len < 0:
        raise ValueError("need depth >= 1 and conj_len >= 0")
    if isinstance(ambient, FamilyPresentation):
        gens = ambient.generators()
        terms = _conjugate_terms(r, gens, conj_len)
        if sum(len(terms) ** d for d in range(1, depth + 1)) > product_cap:
            raise ResourceCapExceeded("oracle bounds enumerate too many products")
        inv_target = invert(target)
        for d in range(1, depth + 1):
            for combo in itertools.product(terms, repeat=d):
                if is_trivial_in_H(ambient, concat(inv_target, *combo)):
                    return True
        return False
    gens = tuple(ambient)
    n_terms = len(_conjugate_terms(r, gens, conj_len))
    if sum(n_terms**d for d in range(1, depth + 1)) > product_cap:
        raise ResourceCapExceeded("oracle bounds enumerate too many products")
    return target.letters in _free_closure_products(r.letters, gens, depth, conj_len)
