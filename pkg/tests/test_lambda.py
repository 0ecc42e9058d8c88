import random

import pytest

from conftest import load_pres
from peiffer.errors import AlphabetMismatch, ClassCountError, InvalidSequence
from peiffer.fuzz import case_seeds, random_identity_sequence, random_moves, single_triple
from peiffer.lambda_map import DENOMINATOR3, cross_effect3, lambda2, lambda3
from peiffer.oracle import shadow_congruent
from peiffer.sequences import (
    IdentitySequence,
    block_decompose,
    conjugate_sequence,
    empty_sequence,
    inverse_sequence,
    item,
    juxtapose,
    realize,
)
from peiffer.words import commutator, conjugate, product


def seq(pres, *items):
    return IdentitySequence(pres, tuple(items))


def test_wu_generator(wu, wu_pres):
    val = lambda3(wu.generator_sequence())
    assert val.representative == wu_pres.word("[x1,x2]")
    assert val.bracket_spelling() == "[x1,x2]" == str(val)
    assert val.denominator_spec == DENOMINATOR3


def test_certificates_realize_blocks(wu_pres):
    P = wu_pres
    c = seq(P, item(P, 2), item(P, 1), item(P, 3, conjugator="x1"))
    val = lambda3(c)
    assert val.representative == commutator(P.word("x1"), P.word("x1^-1 x2 x1"))
    r_items, s_items = val.certificates
    assert product([realize(P, it) for it in r_items], P.alphabet) == val.blocks[0]
    assert product([realize(P, it) for it in s_items], P.alphabet) == val.blocks[1]
    assert val.representative == commutator(val.blocks[0], val.blocks[1])


def test_empty_class1_block(wu_pres):
    P = wu_pres
    c = seq(P, item(P, 2, conjugator="x1"), item(P, 2, exponent=-1, conjugator="x1"))
    assert lambda3(c).representative.is_identity()


def test_lambda2_examples():
    P = load_pres("sphere-n2.pres")
    assert lambda2(seq(P, item(P, 1), item(P, 1, exponent=-1))).representative.is_identity()
    assert lambda2(seq(P, item(P, 1), item(P, 2))).representative == P.word("x")
    assert lambda2(seq(P, item(P, 2, conjugator="x"), item(P, 2, exponent=-1, conjugator="x"))).representative.is_identity()


def test_class_count_errors(wu, wu_pres):
    P2 = load_pres("sphere-n2.pres")
    with pytest.raises(ClassCountError):
        lambda3(empty_sequence(P2))
    with pytest.raises(ClassCountError):
        lambda2(wu.generator_sequence())
    with pytest.raises(InvalidSequence):
        lambda3(seq(wu_pres, item(wu_pres, 1)))
    with pytest.raises(AlphabetMismatch):
        cross_effect3(wu.generator_sequence(), empty_sequence(load_pres("nonsurj.pres")))


def test_cross_effect_with_empty(wu, wu_pres):
    a = wu.generator_sequence()
    ce = cross_effect3(a, empty_sequence(wu_pres))
    for p in (2, 3):
        assert shadow_congruent(ce, wu_pres.identity(), wu_pres, p, 3)


def test_generator_not_in_denominator(wu, wu_pres):
    g = lambda3(wu.generator_sequence()).representative
    assert not shadow_congruent(g, wu_pres.identity(), wu_pres, 2, 3)
    assert shadow_congruent(g, g, wu_pres, 2, 3)


def test_cross_effect_self_against_square(wu, wu_pres):
    # a = b: Lambda(2a) - 2 Lambda(a) computed both ways in the shadow
    a = wu.generator_sequence()
    ce = cross_effect3(a, a)
    l2a = lambda3(juxtapose(a, a)).representative
    la = lambda3(a).representative
    for p in (2, 3):
        assert shadow_congruent(ce, l2a * ~la * ~la, wu_pres, p, 3)


def test_small_peiffer_invariance(wu_pres):
    for s in case_seeds(99, 40):
        rng = random.Random(s)
        c = random_identity_sequence(wu_pres, rng)
        c2, _ = random_moves(c, rng, 10)
        assert shadow_congruent(lambda3(c).representative, lambda3(c2).representative, wu_pres, 2, 3)


def test_single_triple_order(wu_pres):
    for s in case_seeds(4, 30):
        t = single_triple(wu_pres, random.Random(s))
        order = [it.class_index for it in t.items]
        assert sorted(order) == [1, 2, 3] and order.index(1) < order.index(2)


def test_homogeneity_and_equivariance_small(wu_pres):
    for s in case_seeds(8, 30):
        rng = random.Random(s)
        c = random_identity_sequence(wu_pres, rng)
        lc = lambda3(c).representative
        assert shadow_congruent(lambda3(inverse_sequence(c)).representative, lc, wu_pres, 3, 3)
        w = wu_pres.word("x2 x1^-1")
        assert shadow_congruent(lambda3(conjugate_sequence(c, w)).representative, conjugate(lc, w), wu_pres, 3, 3)


@pytest.mark.parametrize("p", [2, 3])
def test_cross_effect_closed_form_single_factor(wu_pres, p):
    # sharper than congruence mod the full denominator: the difference from
    # [s_b^-1, r_a][s_a^-1, r_b] lands in the single factor [R3, R1 & R2]
    from peiffer.oracle import shadow_of_I3
    from peiffer.words import invert, multiply

    sh = shadow_of_I3(wu_pres, p, 3)
    factor = sh.factors["[R3,R1&R2]"]
    for s in case_seeds(5, 60):
        rng = random.Random(s)
        a, b = single_triple(wu_pres, rng), single_triple(wu_pres, rng)
        ba, bb = block_decompose(a), block_decompose(b)
        want = multiply(commutator(invert(bb.s_c), ba.r_c), commutator(invert(ba.s_c), bb.r_c))
        assert sh.project(multiply(cross_effect3(a, b), invert(want))) in factor
