"""Exact decision procedures for one-relator groups of the form
``<a, b, y1..ye | [a, b] u v>`` (u, v letter-disjoint words in the y's),
which cover the fundamental groups of closed nonorientable surfaces of
genus at least 4.

The package provides free-group word arithmetic, subgroup rewriting onto
the kernel of the Magnus-generator exponent map with an exact word problem,
special-element normalization, amalgam-splitting reports, and the top-level
decision "same normal closure iff conjugate up to inversion" with verified
conjugator certificates.
"""

from .amalgam import (
    AmalgamSplit,
    Factor,
    LeftRightSets,
    freiheitssatz_letter_check,
    left_right_sets,
    split_41,
    split_42,
)
from .decide import (
    Verdict,
    free_magnus,
    magnus_same_closure,
    nc_member_bounded,
    verify_certificate,
)
from .kernel import (
    CanonicalKernelWord,
    KernelWord,
    Window,
    alpha_omega,
    canonicalize,
    expand,
    is_trivial_in_H,
    is_trivial_kernel,
    rs_rewrite,
    shift,
    to_left_basis,
    to_right_basis,
    w_word,
)
from .presentation import (
    FamilyPresentation,
    PsiMap,
    embed_into_H,
    from_surface_genus,
    load_presentation,
    psi,
    psi_apply,
    swap_presentation,
    validate,
)
from .special import (
    PieceDecomposition,
    SpecialElement,
    is_power_of_b_conjugate,
    pieces,
    residue,
    specialize,
)
from .words import (
    CyclicWord,
    GenSym,
    Letter,
    Word,
    apply_hom,
    commutator,
    concat,
    conjugate,
    cyclic_reduce,
    exponent_sum,
    format_word,
    free_reduce,
    invert,
    is_conjugate_free,
    kill_generators,
    letter,
    parse_word,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
