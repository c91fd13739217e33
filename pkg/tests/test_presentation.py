import random

import pytest

from conftest import presentation_suite, random_word
from magnus_kit.errors import (
    EmptyUV,
    NonPositiveK,
    PresentationError,
    SharedLetters,
    TooFewY,
    UnsupportedGenus,
    ZeroBExponent,
)
from magnus_kit.presentation import (
    embed_into_H,
    from_surface_genus,
    gen_word,
    load_presentation,
    psi,
    psi_apply,
    swap_presentation,
    validate,
)
from magnus_kit.words import (
    CyclicWord,
    apply_hom,
    concat,
    conjugate,
    cyclic_reduce,
    exponent_sum,
    invert,
    parse_word,
)


def test_validate_genus4_data():
    p = validate("a", "b", ("y1", "y2"), 1, "y1 y1", "y2 y2")
    assert p.relator() == parse_word("a^-1 b^-1 a b y1 y1 y2 y2")


def test_validate_errors():
    with pytest.raises(SharedLetters):
        validate("a", "b", ("y1", "y2"), 1, "y1", "y1")
    with pytest.raises(TooFewY):
        validate("a", "b", ("y1",), 1, "y1", "y1")
    with pytest.raises(EmptyUV):
        validate("a", "b", ("y1", "y2"), 1, "", "y2")
    with pytest.raises(EmptyUV):
        validate("a", "b", ("y1", "y2"), 1, "y1 y1^-1", "y2")
    with pytest.raises(NonPositiveK):
        validate("a", "b", ("y1", "y2"), 0, "y1", "y2")
    with pytest.raises(PresentationError):
        validate("a", "b", ("y1", "y2"), 1, "y1 b", "y2")
    with pytest.raises(PresentationError):
        validate("a", "a", ("y1", "y2"), 1, "y1", "y2")
    with pytest.raises(PresentationError):
        validate("_x", "b", ("y1", "y2"), 1, "y1", "y2")


def test_from_surface_genus():
    p = from_surface_genus(4)
    assert p.u == parse_word("y1 y1") and p.v == parse_word("y2 y2") and p.e == 2
    p5 = from_surface_genus(5)
    assert p5.u == parse_word("y1 y1") and p5.v == parse_word("y2 y2 y3 y3") and p5.e == 3
    with pytest.raises(UnsupportedGenus):
        from_surface_genus(3)


def test_swap_presentation_genus4():
    p = from_surface_genus(4)
    q = swap_presentation(p)
    assert q.magnus_gen == "b" and q.b_gen == "a" and q.k == 1
    assert q.u == parse_word("y2^-1 y2^-1") and q.v == parse_word("y1^-1 y1^-1")
    # relators agree up to inversion and rotation
    r1, r2 = p.relator(), q.relator()
    core1, _ = cyclic_reduce(invert(r1))
    core2, _ = cyclic_reduce(r2)
    assert core1 == core2


def test_swap_twice_returns_original():
    for p in presentation_suite():
        if p.k != 1:
            continue
        assert swap_presentation(swap_presentation(p)) == p


def test_swap_requires_k1(p_k2):
    with pytest.raises(PresentationError):
        swap_presentation(p_k2)


def test_embed_into_H_exponents(p4):
    rng = random.Random(3)
    r = parse_word("b b y1")  # r_a = 0, r_b = 2
    hp, lift = embed_into_H(p4, r)
    assert hp.k == 2
    assert exponent_sum(apply_hom(r, lift), hp.magnus_gen) == 0
    # exponent relation for arbitrary words
    for _ in range(50):
        word = random_word(rng, p4.generators(), 10)
        lifted = apply_hom(word, lift)
        assert exponent_sum(lifted, hp.magnus_gen) == 2 * exponent_sum(word, "a") - 0
        for y in p4.y_gens:
            assert exponent_sum(lifted, y) == exponent_sum(word, y)


def test_embed_negative_b_exponent(p4):
    rng = random.Random(4)
    r = parse_word("a b^-1 a b^-1 b^-1 y2")  # r_a = 2, r_b = -3
    hp, lift = embed_into_H(p4, r)
    assert hp.k == 3
    assert exponent_sum(apply_hom(r, lift), hp.magnus_gen) == 0
    for _ in range(50):
        word = random_word(rng, p4.generators(), 10)
        lifted = apply_hom(word, lift)
        expected = -(-3 * exponent_sum(word, "a") - 2 * exponent_sum(word, "b"))
        assert exponent_sum(lifted, hp.magnus_gen) == expected


def test_embed_rejects_zero_b(p4):
    with pytest.raises(ZeroBExponent):
        embed_into_H(p4, parse_word("y1 a"))


def test_psi_generator_images(p4):
    pm = psi(p4)
    assert pm.forward["b"] == parse_word("b y1 y1")
    assert pm.forward["a"] == parse_word("a")
    assert pm.forward["y1"] == parse_word("a^-1 y1 a")
    assert pm.forward["y2"] == parse_word("a^-1 y1^-1 y1^-1 a y2 a^-1 y1 y1 a")


def test_psi_apply_powers(p4):
    rng = random.Random(9)
    assert psi_apply(p4, gen_word("b"), 1) == parse_word("b y1 y1")
    assert psi_apply(p4, gen_word("a"), 5) == gen_word("a")
    for _ in range(30):
        word = random_word(rng, p4.generators(), 8)
        assert psi_apply(p4, psi_apply(p4, word, 3), -3) == word
        m, n = rng.randrange(-2, 3), rng.randrange(-2, 3)
        assert psi_apply(p4, psi_apply(p4, word, m), n) == psi_apply(p4, word, m + n)


def test_psi_relator_identity_across_suite():
    # psi(R) equals R conjugated by x^-k u x^k, exactly as reduced words
    for p in presentation_suite():
        pm = psi(p)
        x = gen_word(p.magnus_gen)
        t = concat(x ** (-p.k), p.u, x**p.k)
        assert apply_hom(p.relator(), pm.forward) == conjugate(p.relator(), t)


def test_load_presentation_config(tmp_path):
    text = """
    # family instance
    magnus_gen = x
    b_gen = b
    y_gens = y1, y2
    k = 2
    u = y1 y1
    v = y2 y2
    """
    p = load_presentation(text)
    assert p.k == 2 and p.magnus_gen == "x"
    p4 = load_presentation("surface_genus = 4")
    assert p4.e == 2 and p4.magnus_gen == "a"
    with pytest.raises(PresentationError):
        load_presentation("k = 1")
    with pytest.raises(PresentationError):
        load_presentation("surface_genus = 4\nk = 1")
