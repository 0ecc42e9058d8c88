"""Seeded random identity sequences and Peiffer move chains.

Every generator takes a ``random.Random``.  Campaigns derive one seed per
case from a master seed with :func:`case_seeds`, so a failing case can be
replayed alone.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

import numpy as np

from .sequences import (
    ColoredPresentation,
    ConjugatedRelator,
    IdentitySequence,
    PeifferMove,
    conjugate_sequence,
    empty_sequence,
    fundamental_sequence,
    inverse_sequence,
    is_inverse_pair,
    juxtapose,
    peiffer_apply,
    realize,
)
from .words import Alphabet, Word, invert, multiply


def case_seeds(master: int, count: int) -> list[int]:
    """Independent 64-bit seeds for ``count`` cases (numpy ``SeedSequence.spawn``)."""
    children = np.random.SeedSequence(master & (2 ** 64 - 1)).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def random_word(alphabet: Alphabet, rng: random.Random, max_len: int = 4) -> Word:
    k = len(alphabet)
    n = rng.randint(0, max_len)
    letters = [rng.choice((1, -1)) * rng.randint(1, k) for _ in range(n)]
    return Word(tuple(letters), alphabet)


def random_item(pres: ColoredPresentation, rng: random.Random, classes: Sequence[int] | None = None,
                max_conj: int = 3) -> ConjugatedRelator:
    choices = [c for c in (classes or range(1, pres.n_classes + 1)) if pres.classes[c - 1]]
    ci = rng.choice(choices)
    ri = rng.randint(1, len(pres.classes[ci - 1]))
    return ConjugatedRelator(ci, ri, rng.choice((1, -1)), random_word(pres.alphabet, rng, max_conj))


def inverse_pair(pres, rng, classes=None) -> IdentitySequence:
    it = random_item(pres, rng, classes)
    return IdentitySequence(pres, (it, it.inverse()))


def peiffer_element(pres, rng, class_a: int, class_b: int) -> IdentitySequence:
    """``(r, s, r^-1, (s^-1)^(r^-1))``: a two-class identity sequence."""
    r = random_item(pres, rng, [class_a])
    s = random_item(pres, rng, [class_b])
    last = s.inverse().with_conjugator(multiply(s.conjugator, invert(realize(pres, r))))
    return IdentitySequence(pres, (r, s, r.inverse(), last))


def shared_relator_pairs(pres: ColoredPresentation, class_a: int, class_b: int) -> list[tuple]:
    """Relator pairs of two classes that are equal or mutually inverse words."""
    out = []
    for i, ra in enumerate(pres.classes[class_a - 1], 1):
        for j, rb in enumerate(pres.classes[class_b - 1], 1):
            if ra == rb:
                out.append((i, j, -1))
            elif ra == invert(rb):
                out.append((i, j, 1))
    return out


def random_moves(seq: IdentitySequence, rng: random.Random, count: int,
                 kinds: Sequence[str] = ("i", "ii", "iii", "iv", "v"),
                 insert_classes: Sequence[int] | None = None) -> tuple[IdentitySequence, list[PeifferMove]]:
    """Apply up to ``count`` random Peiffer moves; return the result and the moves."""
    pres = seq.presentation
    applied = []
    for _ in range(count):
        m = len(seq.items)
        options = [k for k in kinds if k == "iii" or (k == "i" and m) or (k in ("iv", "v") and m >= 2)]
        if "ii" in kinds and m >= 2:
            spots = [i for i in range(m - 1) if is_inverse_pair(seq.items[i], seq.items[i + 1])]
            if spots:
                options.append("ii")
        if not options:
            break
        kind = rng.choice(options)
        if kind == "i":
            i = rng.randrange(m)
            mv = PeifferMove("i", i, word=seq.items[i].conjugator)
        elif kind == "ii":
            mv = PeifferMove("ii", rng.choice(spots))
        elif kind == "iii":
            pair = inverse_pair(pres, rng, insert_classes).items
            if rng.random() < 0.5:
                pair = (pair[1], pair[0])
            mv = PeifferMove("iii", rng.randint(0, m), items=pair)
        else:
            mv = PeifferMove(kind, rng.randrange(m - 1))
        seq = peiffer_apply(seq, mv)
        applied.append(mv)
    return seq, applied


def _signed(seq: IdentitySequence, rng: random.Random) -> IdentitySequence:
    seq = inverse_sequence(seq) if rng.random() < 0.5 else seq
    return conjugate_sequence(seq, random_word(seq.presentation.alphabet, rng, 3))


def random_identity_sequence(pres: ColoredPresentation, rng: random.Random,
                             bases: Iterable[IdentitySequence] | None = None,
                             pieces: int = 3, moves: int = 4) -> IdentitySequence:
    """Juxtapose random pieces, then scramble with Peiffer moves.

    Pieces are signed conjugates of the ``bases`` (by default the fundamental
    sequence when the first relators multiply to 1), inverse pairs, and
    Peiffer elements.
    """
    if bases is None:
        fs = fundamental_sequence(pres)
        bases = [fs] if fs is not None else []
    bases = list(bases)
    live = [c for c in range(1, pres.n_classes + 1) if pres.classes[c - 1]]
    seq = empty_sequence(pres)
    for _ in range(rng.randint(1, pieces)):
        roll = rng.random()
        if bases and roll < 0.6:
            piece = _signed(rng.choice(bases), rng)
        elif roll < 0.8 or len(live) < 2:
            piece = inverse_pair(pres, rng)
        else:
            a, b = rng.sample(live, 2)
            piece = peiffer_element(pres, rng, a, b)
        seq = juxtapose(seq, piece)
    seq, _ = random_moves(seq, rng, moves, kinds=("iv", "v"))
    return seq


def two_class_sequence(pres: ColoredPresentation, rng: random.Random, classes: tuple[int, int],
                       pieces: int = 3, moves: int = 4) -> IdentitySequence:
    """Random identity sequence whose items all lie in the two given classes."""
    a, b = classes
    shared = shared_relator_pairs(pres, a, b)
    seq = empty_sequence(pres)
    for _ in range(rng.randint(1, pieces)):
        roll = rng.random()
        if shared and roll < 0.4:
            i, j, e = rng.choice(shared)
            w = random_word(pres.alphabet, rng, 3)
            s = rng.choice((1, -1))
            piece = IdentitySequence(pres, (ConjugatedRelator(a, i, s, w), ConjugatedRelator(b, j, s * e, w)))
            if rng.random() < 0.5:
                piece = inverse_sequence(piece)
        elif roll < 0.7 and pres.classes[a - 1] and pres.classes[b - 1]:
            x, y = (a, b) if rng.random() < 0.5 else (b, a)
            piece = peiffer_element(pres, rng, x, y)
        else:
            piece = inverse_pair(pres, rng, [rng.choice(classes)])
        seq = juxtapose(seq, piece)
    seq, _ = random_moves(seq, rng, moves, kinds=("iv", "v", "iii"), insert_classes=classes)
    return seq


def single_triple(pres: ColoredPresentation, rng: random.Random, base: IdentitySequence | None = None,
                  moves: int = 3) -> IdentitySequence:
    """A three-item identity sequence, one item per class, class 1 before class 2."""
    base = base if base is not None else fundamental_sequence(pres)
    if base is None or len(base) != 3:
        raise ValueError("need a three-item base sequence")
    while True:
        seq = _signed(base, rng)
        seq, _ = random_moves(seq, rng, rng.randint(0, moves), kinds=("iv", "v"))
        order = [it.class_index for it in seq.items]
        if order.index(1) < order.index(2):
            return seq
