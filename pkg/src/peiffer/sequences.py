"""Identity sequences over colored presentations and Peiffer rewriting.

An item ``(class i, relator j, exponent e, conjugator w)`` realizes the word
``(t_ij^e)^w = w^-1 t_ij^e w``.  A sequence is an identity sequence when the
ordered product of its realized items is trivial in the free group.  Class
and relator indices are 1-based; positions in a sequence are 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    AlphabetMismatch,
    ClassCountError,
    InvalidSequence,
    MoveError,
    PresentationSyntaxError,
    WordSyntaxError,
)
from .words import (
    Alphabet,
    Word,
    conjugate,
    format_word,
    invert,
    multiply,
    parse_word,
    product,
)


@dataclass(frozen=True)
class ColoredPresentation:
    alphabet: Alphabet
    classes: tuple[tuple[Word, ...], ...]

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if len(classes) < 2:
            raise ClassCountError("a colored presentation needs at least two classes")
        for ci, cls in enumerate(classes, 1):
            for ri, r in enumerate(cls, 1):
                if r.alphabet != self.alphabet:
                    raise AlphabetMismatch(f"relator {ci}:{ri} is over another alphabet")
                if r.is_identity():
                    raise ValueError(f"relator {ci}:{ri} is the empty word")

    @classmethod
    def from_strings(cls, names: Sequence[str], classes: Sequence[Sequence[str]]):
        alphabet = Alphabet(tuple(names))
        return cls(alphabet, tuple(tuple(parse_word(r, alphabet) for r in c) for c in classes))

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def relator(self, class_index: int, relator_index: int) -> Word:
        if not 1 <= class_index <= len(self.classes):
            raise IndexError(f"class index {class_index} out of range 1..{len(self.classes)}")
        cls = self.classes[class_index - 1]
        if not 1 <= relator_index <= len(cls):
            raise IndexError(f"relator index {relator_index} out of range for class {class_index}")
        return cls[relator_index - 1]

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def identity(self) -> Word:
        return self.alphabet.identity()


@dataclass(frozen=True)
class ConjugatedRelator:
    class_index: int
    relator_index: int
    exponent: int
    conjugator: Word

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError("exponent must be +1 or -1")

    def with_conjugator(self, w: Word) -> "ConjugatedRelator":
        return ConjugatedRelator(self.class_index, self.relator_index, self.exponent, w)

    def inverse(self) -> "ConjugatedRelator":
        return ConjugatedRelator(self.class_index, self.relator_index, -self.exponent, self.conjugator)


@dataclass(frozen=True)
class IdentitySequence:
    """Ordered signed conjugated relators; not checked on construction."""

    presentation: ColoredPresentation
    items: tuple[ConjugatedRelator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def replace(self, items) -> "IdentitySequence":
        return IdentitySequence(self.presentation, tuple(items))


def item(pres: ColoredPresentation, class_index: int, relator_index: int = 1,
         exponent: int = 1, conjugator: Word | str | None = None) -> ConjugatedRelator:
    """Convenience constructor; ``conjugator`` may be a word or its text."""
    if conjugator is None:
        conjugator = pres.identity()
    elif isinstance(conjugator, str):
        conjugator = pres.word(conjugator)
    pres.relator(class_index, relator_index)
    return ConjugatedRelator(class_index, relator_index, exponent, conjugator)


def realize(pres: ColoredPresentation, it: ConjugatedRelator) -> Word:
    r = pres.relator(it.class_index, it.relator_index)
    if it.exponent < 0:
        r = invert(r)
    return conjugate(r, it.conjugator)


def realized_words(seq: IdentitySequence) -> list[Word]:
    return [realize(seq.presentation, it) for it in seq.items]


def sequence_product(seq: IdentitySequence) -> Word:
    return product(realized_words(seq), seq.presentation.alphabet)


def validate(seq: IdentitySequence) -> bool:
    try:
        return sequence_product(seq).is_identity()
    except (IndexError, AlphabetMismatch):
        return False


def require_valid(seq: IdentitySequence) -> None:
    if not validate(seq):
        raise InvalidSequence("not an identity sequence: product of items is not trivial")


# -- Peiffer operations ---------------------------------------------------

MOVE_KINDS = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class PeifferMove:
    """One elementary Peiffer operation at 0-based position ``index``.

    ``i``   respell the conjugator of item ``index`` as ``word`` (must be freely equal)
    ``ii``  delete items ``index, index+1`` (must be an inverse pair)
    ``iii`` insert the inverse pair ``items`` before position ``index``

    An inverse pair is one item followed by its formal inverse: same class,
    same relator, opposite exponent, same conjugator.  Equal-but-inverse
    realized words from different relators do not qualify; on presentations
    that repeat a relator word across classes that would delete nontrivial
    identities.
    ``iv``  ``(c, d) -> (d, c^d)`` on items ``index, index+1``
    ``v``   ``(c, d) -> (d^(c^-1), c)`` on items ``index, index+1``
    """

    kind: str
    index: int
    items: tuple[ConjugatedRelator, ...] = field(default=())
    word: Word | None = None

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveError(f"unknown Peiffer move kind {self.kind!r}")


def is_inverse_pair(a: ConjugatedRelator, b: ConjugatedRelator) -> bool:
    return b == a.inverse()


def peiffer_apply(seq: IdentitySequence, move: PeifferMove) -> IdentitySequence:
    pres = seq.presentation
    items = list(seq.items)
    i = move.index
    m = len(items)
    kind = move.kind

    if kind == "i":
        if not 0 <= i < m:
            raise MoveError(f"position {i} out of range")
        if move.word is not None and move.word != items[i].conjugator:
            raise MoveError("replacement conjugator is not freely equal to the original")
        return seq

    if kind == "iii":
        if not 0 <= i <= m:
            raise MoveError(f"insertion position {i} out of range")
        if len(move.items) != 2:
            raise MoveError("insertion needs exactly two items")
        a, b = move.items
        if not is_inverse_pair(a, b):
            raise MoveError("inserted items are not an inverse pair")
        return seq.replace(items[:i] + [a, b] + items[i:])

    if not 0 <= i < m - 1:
        raise MoveError(f"position {i} has no right neighbour in a sequence of length {m}")
    c, d = items[i], items[i + 1]

    if kind == "ii":
        if not is_inverse_pair(c, d):
            raise MoveError("items are not an inverse pair")
        return seq.replace(items[:i] + items[i + 2:])
    if kind == "iv":
        moved = c.with_conjugator(multiply(c.conjugator, realize(pres, d)))
        return seq.replace(items[:i] + [d, moved] + items[i + 2:])
    # kind == "v"
    moved = d.with_conjugator(multiply(d.conjugator, invert(realize(pres, c))))
    return seq.replace(items[:i] + [moved, c] + items[i + 2:])


def apply_moves(seq: IdentitySequence, moves) -> IdentitySequence:
    for mv in moves:
        seq = peiffer_apply(seq, mv)
    return seq


# -- the abelian group of sequences ---------------------------------------

def _same_pres(a: IdentitySequence, b: IdentitySequence) -> None:
    if a.presentation != b.presentation:
        raise AlphabetMismatch("sequences are over different presentations")


def empty_sequence(pres: ColoredPresentation) -> IdentitySequence:
    return IdentitySequence(pres, ())


def juxtapose(a: IdentitySequence, b: IdentitySequence) -> IdentitySequence:
    _same_pres(a, b)
    return a.replace(a.items + b.items)


def inverse_sequence(c: IdentitySequence) -> IdentitySequence:
    return c.replace(it.inverse() for it in reversed(c.items))


def conjugate_sequence(c: IdentitySequence, f: Word) -> IdentitySequence:
    if f.alphabet != c.presentation.alphabet:
        raise AlphabetMismatch("conjugating word is over another alphabet")
    return c.replace(it.with_conjugator(multiply(it.conjugator, f)) for it in c.items)


def scale_sequence(c: IdentitySequence, n: int) -> IdentitySequence:
    """``n`` copies of ``c`` (or of its inverse when ``n < 0``)."""
    base = c if n >= 0 else inverse_sequence(c)
    return c.replace(base.items * abs(n))


# -- block decomposition --------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    reordered: IdentitySequence
    blocks: tuple[tuple[ConjugatedRelator, ...], ...]
    r_c: Word
    s_c: Word
    t_c: Word | None

    @property
    def products(self) -> tuple[Word, ...]:
        return (self.r_c, self.s_c) if self.t_c is None else (self.r_c, self.s_c, self.t_c)


def block_decompose(c: IdentitySequence) -> BlockDecomposition:
    """Reorder ``c`` into class blocks by exchange moves.

    Class-1 items stay as they are.  A class-2 item is conjugated by the
    product of the class-1 realizations after it; a class-3 item by the
    class-1 realizations after it followed by the (already conjugated)
    class-2 realizations after it.  Products run in increasing position.
    """
    pres = c.presentation
    n = pres.n_classes
    if n not in (2, 3):
        raise ClassCountError(f"block decomposition needs 2 or 3 classes, got {n}")
    require_valid(c)

    words = realized_words(c)
    one = pres.identity()
    m = len(words)

    # suffix products of class-1 realizations: after[j] = prod of class-1 words at positions > j
    after1 = [one] * (m + 1)
    for j in range(m - 1, -1, -1):
        nxt = after1[j + 1]
        after1[j] = multiply(words[j], nxt) if c.items[j].class_index == 1 else nxt

    bar: list[Word | None] = [None] * m
    for j, it in enumerate(c.items):
        if it.class_index == 2:
            bar[j] = conjugate(words[j], after1[j + 1])

    after2 = [one] * (m + 1)
    for j in range(m - 1, -1, -1):
        nxt = after2[j + 1]
        after2[j] = multiply(bar[j], nxt) if c.items[j].class_index == 2 else nxt

    blocks: list[list[ConjugatedRelator]] = [[] for _ in range(n)]
    prods = [one] * n
    for j, it in enumerate(c.items):
        k = it.class_index
        if k == 1:
            g = None
            w = words[j]
        elif k == 2:
            g = after1[j + 1]
            w = bar[j]
        else:
            g = multiply(after1[j + 1], after2[j + 1])
            w = conjugate(words[j], g)
        new = it if g is None else it.with_conjugator(multiply(it.conjugator, g))
        blocks[k - 1].append(new)
        prods[k - 1] = multiply(prods[k - 1], w)

    reordered = c.replace(x for b in blocks for x in b)
    t_c = prods[2] if n == 3 else None
    return BlockDecomposition(reordered, tuple(tuple(b) for b in blocks), prods[0], prods[1], t_c)


# -- text format ----------------------------------------------------------

_ITEM_RE = re.compile(r"^\(\s*(\d+)\s*:\s*(\d+)\s*([+-])\s*@\s*(.*?)\s*\)$")


def parse_sequence(text: str, pres: ColoredPresentation) -> IdentitySequence:
    """Parse a ``seq { (<class>:<relator> <+|-> @ <word>) ... }`` block."""
    lines = [(k, ln.split("#", 1)[0].strip()) for k, ln in enumerate(text.splitlines(), 1)]
    lines = [(k, ln) for k, ln in lines if ln]
    if not lines or not re.fullmatch(r"seq\s*\{", lines[0][1]):
        raise PresentationSyntaxError("sequence must open with 'seq {'", lines[0][0] if lines else 1)
    if lines[-1][1] != "}":
        raise PresentationSyntaxError("sequence must close with '}'", lines[-1][0])
    items = []
    for k, ln in lines[1:-1]:
        m = _ITEM_RE.match(ln)
        if not m:
            raise PresentationSyntaxError(f"cannot parse item {ln!r}", k)
        ci, ri, sign, wtext = int(m.group(1)), int(m.group(2)), m.group(3), m.group(4)
        try:
            if wtext in ("e", "") and "e" not in pres.alphabet.names:
                w = pres.identity()
            else:
                w = parse_word(wtext, pres.alphabet)
            pres.relator(ci, ri)
        except (WordSyntaxError, IndexError) as exc:
            raise PresentationSyntaxError(str(exc), k) from None
        items.append(ConjugatedRelator(ci, ri, 1 if sign == "+" else -1, w))
    return IdentitySequence(pres, tuple(items))


def format_item(it: ConjugatedRelator) -> str:
    w = "e" if it.conjugator.is_identity() else format_word(it.conjugator)
    sign = "+" if it.exponent > 0 else "-"
    return f"({it.class_index}:{it.relator_index} {sign} @ {w})"


def format_sequence(seq: IdentitySequence) -> str:
    body = "".join(f"  {format_item(it)}\n" for it in seq.items)
    return "seq {\n" + body + "}\n"


def parse_presentation(text: str) -> ColoredPresentation:
    """Parse the ``gens:`` / ``class:`` presentation format."""
    names = None
    raw_classes: list[tuple[int, list[str]]] = []
    for k, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        key, sep, rest = ln.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "class"):
            raise PresentationSyntaxError(f"expected 'gens:' or 'class:', got {ln!r}", k)
        if key == "gens":
            if names is not None:
                raise PresentationSyntaxError("second 'gens:' line", k)
            names = rest.split()
            seen = set()
            for nm in names:
                if nm in seen:
                    raise PresentationSyntaxError(f"duplicate generator {nm!r}", k)
                seen.add(nm)
            try:
                alphabet = Alphabet(tuple(names))
            except ValueError as exc:
                raise PresentationSyntaxError(str(exc), k) from None
        else:
            if names is None:
                raise PresentationSyntaxError("'class:' before 'gens:'", k)
            rels = [r.strip() for r in rest.split(";")]
            raw_classes.append((k, [r for r in rels if r]))
    if names is None:
        raise PresentationSyntaxError("missing 'gens:' line")
    if not raw_classes:
        raise PresentationSyntaxError("no 'class:' lines")
    if len(raw_classes) < 2:
        raise PresentationSyntaxError("need at least two classes", raw_classes[0][0])
    classes = []
    for k, rels in raw_classes:
        words = []
        for r in rels:
            try:
                w = parse_word(r, alphabet)
            except WordSyntaxError as exc:
                raise PresentationSyntaxError(str(exc), k) from None
            if w.is_identity():
                raise PresentationSyntaxError(f"relator {r!r} reduces to the empty word", k)
            words.append(w)
        classes.append(tuple(words))
    return ColoredPresentation(alphabet, tuple(classes))


def format_presentation(pres: ColoredPresentation) -> str:
    lines = ["gens: " + " ".join(pres.alphabet.names)]
    for cls in pres.classes:
        lines.append(("class: " + " ; ".join(format_word(r) for r in cls)).rstrip())
    return "\n".join(lines) + "\n"


def fundamental_sequence(pres: ColoredPresentation) -> IdentitySequence | None:
    """The sequence of first relators in class order, if it is an identity sequence."""
    if any(not cls for cls in pres.classes):
        return None
    seq = IdentitySequence(
        pres, tuple(ConjugatedRelator(i, 1, 1, pres.identity()) for i in range(1, pres.n_classes + 1))
    )
    return seq if validate(seq) else None


__all__ = [
    "ColoredPresentation", "ConjugatedRelator", "IdentitySequence", "PeifferMove",
    "BlockDecomposition", "MOVE_KINDS", "item", "realize", "realized_words",
    "sequence_product", "validate", "require_valid", "is_inverse_pair", "peiffer_apply", "apply_moves",
    "empty_sequence", "juxtapose", "inverse_sequence", "conjugate_sequence",
    "scale_sequence", "block_decompose", "parse_sequence", "format_sequence",
    "format_item", "parse_presentation", "format_presentation", "fundamental_sequence",
]
