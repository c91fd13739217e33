import random

import pytest

from magnus_kit import FamilyPresentation, KernelWord, validate
from magnus_kit.words import Word, letter


def genus4():
    from magnus_kit import from_surface_genus

    return from_surface_genus(4)


def k2_presentation():
    return validate("x", "b", ("y1", "y2"), 2, "y1 y1", "y2 y2")


def k3_presentation():
    return validate("x", "b", ("y1", "y2", "y3"), 3, "y1 y1 y1", "y2 y3")


def presentation_suite():
    """Five presentations spanning k in [1,3] and e in [2,4]."""
    from magnus_kit import from_surface_genus

    return [
        from_surface_genus(4),
        from_surface_genus(5),
        k2_presentation(),
        k3_presentation(),
        validate("x", "b", ("y1", "y2", "y3", "y4"), 2, "y1 y2", "y3 y4 y3"),
    ]


@pytest.fixture
def p4():
    return genus4()


@pytest.fixture
def p_k2():
    return k2_presentation()


def random_word(rng: random.Random, gens, max_len: int, min_len: int = 1) -> Word:
    n = rng.randrange(min_len, max_len + 1)
    return Word([letter(rng.choice(list(gens)), sign=rng.choice((1, -1))) for _ in range(n)])


def random_zero_x_word(rng: random.Random, pres: FamilyPresentation, max_len: int) -> Word:
    """Random word with zero Magnus-generator exponent: balanced x letters
    shuffled among random other letters."""
    others = [pres.b_gen] + list(pres.y_gens)
    ls = []
    pairs = rng.randrange(0, max_len // 4 + 1)
    for _ in range(pairs):
        ls.append(letter(pres.magnus_gen, sign=1))
        ls.append(letter(pres.magnus_gen, sign=-1))
    for _ in range(rng.randrange(0, max_len - 2 * pairs + 1)):
        ls.append(letter(rng.choice(others), sign=rng.choice((1, -1))))
    rng.shuffle(ls)
    return Word(ls)


def random_kernel_word(
    rng: random.Random, pres: FamilyPresentation, max_len: int = 10, index_range=(-3, 3)
) -> KernelWord:
    names = [pres.b_gen] + list(pres.y_gens)
    ls = [
        letter(rng.choice(names), index=rng.randrange(index_range[0], index_range[1] + 1), sign=rng.choice((1, -1)))
        for _ in range(rng.randrange(1, max_len + 1))
    ]
    return KernelWord(Word(ls), pres)


def random_nontrivial_kernel_word(rng, pres, max_len=10, index_range=(-3, 3)) -> KernelWord:
    from magnus_kit import is_trivial_kernel

    while True:
        kw = random_kernel_word(rng, pres, max_len, index_range)
        if not is_trivial_kernel(kw):
            return kw
