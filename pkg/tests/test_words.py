import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peiffer.errors import AlphabetMismatch, WordSyntaxError
from peiffer.words import (
    Alphabet,
    Word,
    commutator,
    conjugate,
    format_word,
    invert,
    left_normed_commutator,
    multiply,
    names_in,
    parse_word,
    power,
    product,
)

A = Alphabet(("x1", "x2"))
A3 = Alphabet(("a", "b", "c"))


def W(text, alphabet=A):
    return parse_word(text, alphabet)


def string_reduce(tokens):
    """Independent reducer on name/sign pairs (stack based)."""
    out = []
    for name, sign in tokens:
        if out and out[-1] == (name, -sign):
            out.pop()
        else:
            out.append((name, sign))
    return out


def as_tokens(w: Word):
    return [(w.alphabet.names[abs(l) - 1], 1 if l > 0 else -1) for l in w.letters]


letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)
words3 = letters.map(lambda ls: Word(tuple(ls), A3))


def test_cancelling_pair_is_empty():
    assert W("x1 x1^-1").is_identity()


def test_commutator_convention():
    assert W("[x1,x2]").letters == (-1, -2, 1, 2)


def test_nested_commutator_expansion():
    assert W("[[x1,x2],x1]") == W("x2^-1 x1^-1 x2 x1^-1 x2^-1 x1 x2 x1")
    assert len(W("[[x1,x2],x1]")) == 8


def test_multiply_examples():
    assert multiply(W("x1"), W("x1^-1")).is_identity()
    assert multiply(W("x1 x2"), W("x2^-1 x1")) == W("x1 x1")
    assert multiply(A.identity(), W("x2 x1")) == W("x2 x1")


def test_invert_examples():
    assert invert(W("x1 x2")) == W("x2^-1 x1^-1")
    assert invert(A.identity()).is_identity()
    assert invert(W("[x1,x2]")) == W("[x2,x1]") == W("x2^-1 x1^-1 x2 x1")


def test_conjugate_examples():
    assert conjugate(W("x1"), A.identity()) == W("x1")
    assert conjugate(W("x1"), W("x2")) == W("x2^-1 x1 x2")
    assert conjugate(W("x1 x2"), W("x1")) == W("x2 x1")


def test_left_normed_examples():
    x1, x2 = A.gen(0), A.gen(1)
    assert left_normed_commutator([x1, x2]) == W("x1^-1 x2^-1 x1 x2")
    triple = left_normed_commutator([x1, x2, x1])
    assert len(triple) == 8 and triple == W("[x1,x2,x1]")
    assert left_normed_commutator([x1, x1]).is_identity()
    with pytest.raises(ValueError):
        left_normed_commutator([x1])


def test_grammar():
    assert W("x1^3") == product([A.gen(0)] * 3)
    assert W("x1^-2") == power(A.gen(0), -2)
    assert W("x1^x2") == W("x2^-1 x1 x2")
    assert W("x1^x2^x1") == conjugate(A.gen(0), W("x2^x1"))
    assert W("[x1,x2]^x1 (x2 x1)^-1") == multiply(conjugate(W("[x1,x2]"), W("x1")), W("x1^-1 x2^-1"))
    assert W("1").is_identity() and W("").is_identity()
    assert W("x1^0").is_identity()


@pytest.mark.parametrize("text", ["x1 ^", "[x1,", "(x1", "x1)", "x1 ^ x", "[x1]x2,"])
def test_syntax_errors(text):
    with pytest.raises((WordSyntaxError, Exception)):
        W(text)


def test_unknown_generator_has_position():
    with pytest.raises(WordSyntaxError) as exc:
        W("x1 x3")
    assert exc.value.position == 3


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        multiply(W("x1"), W("a", A3))


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("x", "x"))
    with pytest.raises(ValueError):
        Alphabet(("1x",))


def test_format_and_names():
    assert format_word(W("x1 x1 x2^-1 x2^-1 x2^-1")) == "x1^2 x2^-3"
    assert format_word(A.identity()) == "1"
    assert names_in("[x10,x2] x1") == ["x1", "x2", "x10"]


@given(letters)
def test_reduction_matches_independent_reducer(ls):
    w = Word(tuple(ls), A3)
    names = A3.names
    expect = string_reduce([(names[abs(l) - 1], 1 if l > 0 else -1) for l in ls])
    assert as_tokens(w) == expect
    assert Word(w.letters, A3) == w  # idempotent


@given(words3, words3, words3)
def test_group_laws(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
    assert multiply(u, invert(u)).is_identity() and multiply(invert(u), u).is_identity()
    assert multiply(A3.identity(), u) == u == multiply(u, A3.identity())
    assert invert(multiply(u, v)) == multiply(invert(v), invert(u))
    assert len(multiply(u, v)) <= len(u) + len(v)


@given(words3, words3, words3)
def test_conjugation_action(u, g, h):
    assert conjugate(u, multiply(g, h)) == conjugate(conjugate(u, g), h)
    assert conjugate(u, A3.identity()) == u
    assert (u ^ g) == conjugate(u, g)


@given(words3, words3)
@settings(max_examples=200)
def test_commutator_expansion(u, v):
    expect = multiply(multiply(invert(u), invert(v)), multiply(u, v))
    assert left_normed_commutator([u, v]) == expect == commutator(u, v)


@given(words3)
def test_format_parse_roundtrip(u):
    assert parse_word(format_word(u), A3) == u
