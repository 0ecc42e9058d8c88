import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_pres
from peiffer.errors import AlphabetMismatch, ClassCountError, InvalidSequence, MoveError, PresentationSyntaxError
from peiffer.fuzz import case_seeds, random_identity_sequence, random_moves, random_word, two_class_sequence
from peiffer.sequences import (
    ColoredPresentation,
    ConjugatedRelator,
    IdentitySequence,
    PeifferMove,
    apply_moves,
    block_decompose,
    conjugate_sequence,
    empty_sequence,
    format_presentation,
    format_sequence,
    inverse_sequence,
    item,
    juxtapose,
    parse_presentation,
    parse_sequence,
    peiffer_apply,
    realize,
    realized_words,
    require_valid,
    scale_sequence,
    validate,
)
from peiffer.words import invert, multiply, product


def seq(pres, *items):
    return IdentitySequence(pres, tuple(items))


def gen_seq(pres):
    return seq(pres, item(pres, 1), item(pres, 2), item(pres, 3))


def swapped(pres):
    return seq(pres, item(pres, 2), item(pres, 1), item(pres, 3, conjugator="x1"))


def bubble_blocks(c: IdentitySequence):
    """Reorder by adjacent (iv) moves only; independent of block_decompose."""
    items = list(c.items)
    changed = True
    while changed:
        changed = False
        for i in range(len(items) - 1):
            if items[i].class_index > items[i + 1].class_index:
                c = peiffer_apply(c.replace(items), PeifferMove("iv", i))
                items = list(c.items)
                changed = True
    return c.replace(items)


def test_realize_examples(wu_pres):
    P = wu_pres
    assert realize(P, item(P, 1)) == P.word("x1")
    assert realize(P, item(P, 3, conjugator="x1")) == P.word("x1^-1 x2^-1")
    assert realize(P, item(P, 2, exponent=-1, conjugator="x1")) == P.word("x1^-1 x2^-1 x1")


def test_validate_examples(wu_pres):
    P = wu_pres
    assert validate(gen_seq(P))
    assert not validate(seq(P, item(P, 1)))
    assert validate(swapped(P))
    assert validate(empty_sequence(P))
    bad = seq(P, ConjugatedRelator(1, 5, 1, P.identity()))
    assert not validate(bad)
    with pytest.raises(InvalidSequence):
        require_valid(seq(P, item(P, 1)))


def test_move_iv_example(wu_pres):
    P = wu_pres
    out = peiffer_apply(gen_seq(P), PeifferMove("iv", 0))
    assert out.items == (item(P, 2), item(P, 1, conjugator="x2"), item(P, 3))


def test_move_iii_then_ii(wu_pres):
    P = wu_pres
    pair = (item(P, 1), item(P, 1, exponent=-1))
    out = peiffer_apply(gen_seq(P), PeifferMove("iii", 0, items=pair))
    assert validate(out) and len(out) == 5
    assert peiffer_apply(out, PeifferMove("ii", 0)) == gen_seq(P)


def test_move_errors(wu_pres):
    P = wu_pres
    c = gen_seq(P)
    with pytest.raises(MoveError):
        peiffer_apply(c, PeifferMove("iv", 2))
    with pytest.raises(MoveError):
        peiffer_apply(c, PeifferMove("ii", 0))
    with pytest.raises(MoveError):
        peiffer_apply(c, PeifferMove("iii", 0, items=(item(P, 1), item(P, 2))))
    with pytest.raises(MoveError):
        peiffer_apply(c, PeifferMove("i", 7))
    with pytest.raises(MoveError):
        PeifferMove("vi", 0)
    assert peiffer_apply(c, PeifferMove("i", 1, word=P.identity())) == c


def test_deletion_needs_formal_inverse():
    # realized words cancel but the items come from different classes
    P = ColoredPresentation.from_strings(["x"], [["x"], ["x^-1"]])
    c = seq(P, item(P, 1), item(P, 2))
    assert validate(c)
    with pytest.raises(MoveError):
        peiffer_apply(c, PeifferMove("ii", 0))


def test_v_then_iv_restores(wu_pres):
    P = wu_pres
    for s in case_seeds(5, 50):
        rng = random.Random(s)
        c = random_identity_sequence(P, rng)
        if len(c) < 2:
            continue
        i = rng.randrange(len(c) - 1)
        back = apply_moves(c, [PeifferMove("v", i), PeifferMove("iv", i)])
        assert realized_words(back) == realized_words(c)
        assert back == c


def test_juxtapose_and_inverse(wu_pres):
    P = wu_pres
    c = gen_seq(P)
    assert juxtapose(empty_sequence(P), c) == c
    two = juxtapose(c, c)
    assert len(two) == 6 and validate(two)
    cc = juxtapose(c, inverse_sequence(c))
    assert validate(cc)
    while len(cc):
        cc = peiffer_apply(cc, PeifferMove("ii", len(cc) // 2 - 1))
    assert cc == empty_sequence(P)
    inv = inverse_sequence(c)
    assert [(it.class_index, it.exponent) for it in inv.items] == [(3, -1), (2, -1), (1, -1)]
    assert inverse_sequence(inv) == c
    other = ColoredPresentation.from_strings(["x1", "x2"], [["x1"], ["x2"]])
    with pytest.raises(AlphabetMismatch):
        juxtapose(c, empty_sequence(other))


def test_conjugate_sequence(wu_pres):
    P = wu_pres
    c = gen_seq(P)
    assert conjugate_sequence(c, P.identity()) == c
    f = P.word("x1 x2^-1")
    assert conjugate_sequence(conjugate_sequence(c, f), invert(f)) == c
    assert all(it.conjugator == P.word("x1") for it in conjugate_sequence(c, P.word("x1")).items)
    assert scale_sequence(c, 2) == juxtapose(c, c)
    assert scale_sequence(c, -1) == inverse_sequence(c)


def test_block_examples(wu_pres):
    P = wu_pres
    bd = block_decompose(gen_seq(P))
    assert (bd.r_c, bd.s_c, bd.t_c) == (P.word("x1"), P.word("x2"), P.word("x2^-1 x1^-1"))
    bd = block_decompose(swapped(P))
    assert bd.r_c == P.word("x1")
    assert bd.s_c == P.word("x1^-1 x2 x1")
    assert bd.t_c == P.word("x1^-1 x2^-1")
    single = seq(P, item(P, 2), item(P, 2, exponent=-1, conjugator="x1"), item(P, 2, conjugator="x1"),
                 item(P, 2, exponent=-1))
    bd = block_decompose(single)
    assert bd.r_c.is_identity() and bd.t_c.is_identity()
    assert bd.s_c == product(realized_words(single)) == P.identity()


def test_block_errors(wu_pres):
    with pytest.raises(InvalidSequence):
        block_decompose(seq(wu_pres, item(wu_pres, 1)))
    P4 = ColoredPresentation.from_strings(["a"], [["a"], ["a"], ["a"], ["a^-1"]])
    with pytest.raises(ClassCountError):
        block_decompose(empty_sequence(P4))


def _check_blocks(c):
    bd = block_decompose(c)
    assert product(bd.products).is_identity()
    assert validate(bd.reordered)
    assert [it.class_index for it in bd.reordered.items] == sorted(it.class_index for it in c.items)
    oracle = bubble_blocks(c)
    assert oracle.items == bd.reordered.items
    return bd


def test_blocks_match_bubble_oracle(wu_pres):
    for s in case_seeds(11, 150):
        rng = random.Random(s)
        c, _ = random_moves(random_identity_sequence(wu_pres, rng), rng, 6)
        _check_blocks(c)


def test_two_class_blocks():
    P = load_pres("sphere-n2.pres")
    for s in case_seeds(3, 60):
        rng = random.Random(s)
        c = two_class_sequence(P, rng, (1, 2))
        bd = _check_blocks(c)
        assert bd.t_c is None


def test_same_class_transposition_keeps_blocks(wu_pres):
    hits = 0
    for s in case_seeds(17, 200):
        rng = random.Random(s)
        c = random_identity_sequence(wu_pres, rng, pieces=4)
        spots = [i for i in range(len(c) - 1) if c.items[i].class_index == c.items[i + 1].class_index]
        if not spots:
            continue
        hits += 1
        i = rng.choice(spots)
        d = peiffer_apply(c, PeifferMove("iv", i))
        a, b = block_decompose(c), block_decompose(d)
        assert (a.r_c, a.s_c) == (b.r_c, b.s_c)
    assert hits > 20


def test_random_moves_preserve_validity(wu_pres):
    for s in case_seeds(23, 200):
        rng = random.Random(s)
        c = random_identity_sequence(wu_pres, rng)
        assert validate(c)
        c2, moves = random_moves(c, rng, 10)
        assert validate(c2)
        assert apply_moves(c, moves) == c2


@given(st.integers(min_value=0, max_value=2 ** 64 - 1))
@settings(max_examples=60, deadline=None)
def test_fuzz_sequences_valid(seed):
    P = load_pres("sew1.pres")
    rng = random.Random(seed)
    assert validate(random_identity_sequence(P, rng))
    assert validate(two_class_sequence(P, rng, (2, 3)))


def test_sequence_text_roundtrip(wu_pres):
    P = wu_pres
    c = swapped(P)
    assert parse_sequence(format_sequence(c), P) == c
    text = "# comment\nseq {\n  (1:1 - @ x1 x2)   # trailing\n  (1:1 + @ x1x2)\n}\n"
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_sequence(text, P)
    assert exc.value.line == 4
    ok = parse_sequence(text.replace("x1x2", "x1 x2"), P)
    assert validate(ok)
    for bad, line in [("seq {\n(4:1 + @ e)\n}", 2), ("(1:1 + @ e)", 1), ("seq {\n(1:1 + @ e)\n", 2)]:
        with pytest.raises(PresentationSyntaxError) as exc:
            parse_sequence(bad, P)
        assert exc.value.line == line


def test_presentation_files(data_dir):
    wu = parse_presentation((data_dir / "wu-n2.pres").read_text())
    assert wu.n_classes == 3
    assert [r for cls in wu.classes for r in cls] == [wu.word("x1"), wu.word("x2"), wu.word("x2^-1 x1^-1")]
    ns = parse_presentation((data_dir / "nonsurj.pres").read_text())
    assert ns.classes[1] == (ns.word("x1^-1 x2^-1 x1 x2"),)
    assert ns.classes[2][0] == ns.word("[x1,x2,x1]") and len(ns.classes[2][0]) == 8
    assert parse_presentation(format_presentation(ns)) == ns


@pytest.mark.parametrize("text,line", [
    ("gens: x1\nclass: x1\nclass: x2\n", 3),
    ("gens: x1 x1\nclass: x1\nclass: x1\n", 1),
    ("gens: x1\n", None),
    ("class: x1\n", 1),
    ("gens: x1\nclass: x1\n", 2),
    ("gens: x1\nclass: x1\nclass: x1 x1^-1\n", 3),
    ("gens: x1\nfoo: x1\n", 2),
])
def test_presentation_errors(text, line):
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation(text)
    if line is not None:
        assert exc.value.line == line
