"""Wu's presentations of the 2-sphere and bracket generators.

``wu_presentation(n)`` is the colored presentation
``< y0..y{n-1} | y0 ; y1 ; ... ; y{n-1} ; (y0 ... y{n-1})^-1 >`` with one
class per relator.  The extra symbol ``y_{-1}`` is never a generator; it
always stands for the word ``(y0 ... y{n-1})^-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .sequences import ColoredPresentation, IdentitySequence, fundamental_sequence
from .words import Alphabet, Word, commutator, invert, left_normed_commutator, parse_word, product


@dataclass(frozen=True)
class WuInstance:
    n: int
    presentation: ColoredPresentation

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    def y_minus_one(self) -> Word:
        return invert(product(self.alphabet.gen(i) for i in range(self.n)))

    def generator_sequence(self) -> IdentitySequence:
        """The identity sequence of all relators in class order."""
        seq = fundamental_sequence(self.presentation)
        assert seq is not None
        return seq


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"y{i}" for i in range(n))


def wu_presentation(n: int, names: Sequence[str] | None = None) -> WuInstance:
    """Wu's ``n+1``-class presentation of the trivial group.

    ``names`` overrides the generator names (``y0..y{n-1}`` by default);
    ``wu_presentation(2, ("x1", "x2"))`` is ``< x1, x2 | x1 ; x2 ; x2^-1 x1^-1 >``.
    """
    if n < 1:
        raise ValueError("Wu presentations need n >= 1")
    names = tuple(names) if names is not None else default_names(n)
    if len(names) != n:
        raise ValueError(f"need {n} generator names")
    alphabet = Alphabet(names)
    gens = [alphabet.gen(i) for i in range(n)]
    classes = [(g,) for g in gens] + [(invert(product(gens)),)]
    return WuInstance(n, ColoredPresentation(alphabet, tuple(classes)))


def _symbols(inst: WuInstance) -> dict[int, Word]:
    table = {i: inst.alphabet.gen(i) for i in range(inst.n)}
    table[-1] = inst.y_minus_one()
    return table


def candidate_tuples(n: int, length: int):
    """Sign/symbol tuples of the given length using every one of the ``n+1`` symbols.

    Entries are ``(symbol index, sign)`` with symbol index in ``-1..n-1``;
    yields in lexicographic order.
    """
    alphabet = [(s, e) for s in range(-1, n) for e in (-1, 1)]
    need = set(range(-1, n))
    for tup in itertools.product(alphabet, repeat=length):
        if {s for s, _ in tup} == need:
            yield tup


def wu_bracket_generators(n: int, max_len: int, names: Sequence[str] | None = None) -> list[Word]:
    """Distinct nonempty left-normed brackets ``[z1^e1, ..., zt^et]`` with ``t <= max_len``
    in which every symbol ``y_{-1}, y_0, ..., y_{n-1}`` occurs."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_len < n + 1:
        raise ValueError(f"max_len must be at least n+1 = {n + 1}")
    inst = wu_presentation(n, names)
    sym = _symbols(inst)
    inv = {s: invert(w) for s, w in sym.items()}
    seen: set[Word] = set()
    out: list[Word] = []
    for t in range(n + 1, max_len + 1):
        for tup in candidate_tuples(n, t):
            w = left_normed_commutator([sym[s] if e > 0 else inv[s] for s, e in tup])
            if w.is_identity() or w in seen:
                continue
            seen.add(w)
            out.append(w)
    return out


_SPHERE_WORDS = {
    3: (("x1", "x2"), "[x1,x2]"),
    4: (("y0", "y1", "y2"), "[[y0,y1],[y0,y1 y2]]"),
    5: (("y0", "y1", "y2", "y3"), "[[[y0,y1],[y0,y1 y2]],[[y0,y1],[y0,y1 y2 y3]]]"),
}


def sphere_generator_word(k: int) -> Word:
    """Free-group word representing a generator of ``pi_k(S^2)`` for ``k`` in 3..5."""
    if k not in _SPHERE_WORDS:
        raise ValueError("sphere generator words are known for k in {3, 4, 5}")
    names, text = _SPHERE_WORDS[k]
    return parse_word(text, Alphabet(names))


def sphere_generator_bracket(k: int) -> Word:
    """Same words built by explicit bracket calls (independent of the parser)."""
    if k == 3:
        a = Alphabet(("x1", "x2"))
        return commutator(a.gen(0), a.gen(1))
    a = Alphabet(default_names(k - 1))
    y = [a.gen(i) for i in range(k - 1)]
    c4 = commutator(commutator(y[0], y[1]), commutator(y[0], y[1] * y[2]))
    if k == 4:
        return c4
    right = commutator(commutator(y[0], y[1]), commutator(y[0], y[1] * y[2] * y[3]))
    return commutator(c4, right)
