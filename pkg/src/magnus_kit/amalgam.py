"""Amalgamated-product splittings of windowed quotients.

For a special element r and its shifts r_i, the quotient of a window
subgroup by consecutive shifts splits as an amalgam of two smaller windowed
quotients.  These functions produce the split *descriptors* — windows,
relator lists, the edge window and the identified relation pairs — and check
the identifications hold in N; no quotient arithmetic is performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import HypothesisViolated, PreconditionViolated
from .kernel import (
    KernelWord,
    Window,
    _rewrite_b_range,
    b_letter,
    basis_form,
    canonicalize,
    kernel_gen,
    w_word,
)
from .special import SpecialElement
from .words import Letter, cyclic_reduce


@dataclass(frozen=True)
class LeftRightSets:
    """The words w_l and letters b_l flanking a shifted special element;
    both lists are empty as soon as the width exceeds k."""

    left_indices: tuple[int, ...]
    left: tuple[KernelWord, ...]
    right_indices: tuple[int, ...]
    right: tuple[Letter, ...]


def left_right_sets(r: SpecialElement, i: int) -> LeftRightSets:
    pres = r.element.pres
    k = pres.k
    a_i = r.alpha + i
    o_i = r.omega + i
    left_idx = tuple(range(o_i - k, a_i))  # subscripts increase left to right
    right_idx = tuple(range(o_i, a_i + k))
    return LeftRightSets(
        left_idx,
        tuple(w_word(pres, l) for l in left_idx),
        right_idx,
        tuple(b_letter(pres, l) for l in right_idx),
    )


@dataclass(frozen=True)
class Factor:
    window: Window  # may be empty (lo > hi), meaning the trivial group
    relator_shifts: tuple[int, ...]


@dataclass(frozen=True)
class AmalgamSplit:
    left_factor: Factor
    right_factor: Factor
    edge_window: Optional[Window]  # None encodes the trivial edge subgroup
    l_set: tuple[int, ...]
    identifications: tuple[tuple[KernelWord, Letter], ...]


def _common_checks(r: SpecialElement, j: int, i: int, m: int, n: int):
    a_j = r.alpha + j
    o_i = r.omega + i
    if j > i:
        raise HypothesisViolated("need j <= i, got j=%d > i=%d" % (j, i))
    if m > a_j:
        raise HypothesisViolated("need m <= alpha(r_j)=%d, got m=%d" % (a_j, m))
    if o_i > n:
        raise HypothesisViolated("need omega(r_i)=%d <= n, got n=%d" % (o_i, n))
    return a_j, o_i


def _l_set(r: SpecialElement, shift_index: int, m: int, n: int) -> tuple[int, ...]:
    k = r.element.pres.k
    a = r.alpha + shift_index
    o = r.omega + shift_index
    return tuple(range(max(o - k, m), min(a - 1, n - k) + 1))


def _identifications(pres, l_set):
    idents = []
    for l in l_set:
        wl = w_word(pres, l)
        bl = kernel_gen(pres, pres.b_gen, l + pres.k)
        if canonicalize(wl) != canonicalize(bl):
            raise AssertionError("identification w[%d] = b[%d] fails" % (l, l + pres.k))
        idents.append((wl, b_letter(pres, l + pres.k)))
    return tuple(idents)


def split_41(r: SpecialElement, j: int, i: int, m: int, n: int) -> AmalgamSplit:
    """Split off the last relator:  G[m,n] mod r_j..r_i  is the amalgam of
    G[m,t] mod r_j..r_{i-1}  and  G[s,n] mod r_i  over G[s,t] together with
    the identifications w_l = b_{l+k}, where s, t bracket r_i's window."""
    pres = r.element.pres
    _common_checks(r, j, i, m, n)
    s = r.alpha + i
    t = r.omega + i - 1
    l_set = _l_set(r, i, m, n)
    return AmalgamSplit(
        left_factor=Factor(Window(m, t), tuple(range(j, i))),
        right_factor=Factor(Window(s, n), (i,)),
        edge_window=Window(s, t) if s <= t else None,
        l_set=l_set,
        identifications=_identifications(pres, l_set),
    )


def split_42(r: SpecialElement, j: int, i: int, m: int, n: int) -> AmalgamSplit:
    """Mirror split peeling the first relator:  left factor G[m,t] mod r_j,
    right factor G[s,n] mod r_{j+1}..r_i, edge G[s,t] with s, t bracketing
    r_j's window from the other side."""
    pres = r.element.pres
    _common_checks(r, j, i, m, n)
    s = r.alpha + j + 1
    t = r.omega + i
    l_set = _l_set(r, j, m, n)
    return AmalgamSplit(
        left_factor=Factor(Window(m, t), (j,)),
        right_factor=Factor(Window(s, n), tuple(range(j + 1, i + 1))),
        edge_window=Window(s, t) if s <= t else None,
        l_set=l_set,
        identifications=_identifications(pres, l_set),
    )


def freiheitssatz_letter_check(g: SpecialElement, jprime: int, j: int) -> bool:
    """Whether the cyclic reduction of g, written in the right basis of the
    window [jprime, j], contains a non-b letter at index alpha(g).

    This is the executable content of the embedding statements: it must hold
    for every special element and any window containing [alpha, omega]; it
    can fail for non-special elements such as bare b-letters.
    """
    a, o = g.alpha, g.omega
    if jprime > a or o > j:
        raise PreconditionViolated(
            "window [%d, %d] must contain [%d, %d]" % (jprime, j, a, o)
        )
    pres = g.element.pres
    nf = basis_form(g.element, (a, o))
    core, _ = cyclic_reduce(nf.word)
    widened = _rewrite_b_range(pres, core.letters, j - pres.k + 1, j)
    core2, _ = cyclic_reduce(widened)
    return any(
        l.sym.name != pres.b_gen and l.sym.index == a for l in core2.letters
    )
