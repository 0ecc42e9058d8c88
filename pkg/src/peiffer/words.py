"""Reduced words in a finitely generated free group.

Conventions: ``[a, b] = a^-1 b^-1 a b`` and ``a^g = g^-1 a g``.  Longer
brackets are left-normed, ``[a, b, c] = [[a, b], c]``.

Letters are nonzero ints, generator ``i`` being ``i + 1`` and its inverse
``-(i + 1)``.  Words are always stored freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .errors import AlphabetMismatch, WordSyntaxError

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Generator:
    id: int
    name: str


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n in names:
            if not NAME_RE.fullmatch(n):
                raise ValueError(f"bad generator name {n!r}")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator(i, n) for i, n in enumerate(self.names))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise WordSyntaxError(f"unknown generator {name!r}") from None

    def gen(self, name_or_id) -> "Word":
        i = name_or_id if isinstance(name_or_id, int) else self.index(name_or_id)
        if not 0 <= i < len(self.names):
            raise IndexError(f"generator id {i} out of range")
        return Word((i + 1,), self)

    def identity(self) -> "Word":
        return Word((), self)

    def word(self, text: str) -> "Word":
        return parse_word(text, self)


@dataclass(frozen=True, eq=True)
class Word:
    """An element of the free group on ``alphabet``, freely reduced."""

    letters: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        letters = tuple(self.letters)
        k = len(self.alphabet)
        for x in letters:
            if x == 0 or abs(x) > k:
                raise ValueError(f"letter {x} outside alphabet of size {k}")
        object.__setattr__(self, "letters", _kernels.reduce_letters(letters))

    @classmethod
    def _raw(cls, letters: tuple, alphabet: Alphabet) -> "Word":
        # letters already validated and reduced
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "alphabet", alphabet)
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __xor__(self, g: "Word") -> "Word":
        return conjugate(self, g)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _check_same(u: Word, v: Word) -> None:
    if u.alphabet is not v.alphabet and u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {u.alphabet.names} vs {v.alphabet.names}")


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word._raw(_kernels.concat_reduce(u.letters, v.letters), u.alphabet)


def invert(u: Word) -> Word:
    return Word._raw(tuple(-x for x in reversed(u.letters)), u.alphabet)


def power(u: Word, n: int) -> Word:
    base = u if n >= 0 else invert(u)
    out = u.alphabet.identity()
    for _ in range(abs(n)):
        out = multiply(out, base)
    return out


def conjugate(u: Word, g: Word) -> Word:
    """Return ``g^-1 u g``."""
    _check_same(u, g)
    return multiply(multiply(invert(g), u), g)


def commutator(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return multiply(multiply(invert(u), invert(v)), multiply(u, v))


def left_normed_commutator(ws: Sequence[Word]) -> Word:
    if len(ws) < 2:
        raise ValueError("a commutator needs at least two entries")
    out = ws[0]
    for w in ws[1:]:
        out = commutator(out, w)
    return out


def product(ws: Iterable[Word], alphabet: Alphabet | None = None) -> Word:
    out = None
    for w in ws:
        out = w if out is None else multiply(out, w)
    if out is None:
        if alphabet is None:
            raise ValueError("empty product needs an alphabet")
        return alphabet.identity()
    return out


def format_word(w: Word) -> str:
    """Spell ``w`` in the input grammar, runs folded into integer powers."""
    if not w.letters:
        return "1"
    names = w.alphabet.names
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        x, run = letters[i], j - i
        exp = run if x > 0 else -run
        name = names[abs(x) - 1]
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return " ".join(parts)


# -- parsing -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<op>[\[\]\(\),^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    # expr   := term+
    # term   := atom ('^' INT)* ['^' term]
    # atom   := NAME | '1' | '(' expr ')' | '[' expr (',' expr)+ ']'

    def __init__(self, text: str, alphabet: Alphabet):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise WordSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Word:
        w = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise WordSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return w

    def starts_atom(self, tok) -> bool:
        return tok[0] == "name" or tok[1] in ("(", "[", "1")

    def expr(self) -> Word:
        tok = self.peek()
        if not self.starts_atom(tok):
            raise WordSyntaxError(f"expected a word, found {tok[1] or 'end of input'!r}", tok[2])
        w = self.term()
        while self.starts_atom(self.peek()):
            w = multiply(w, self.term())
        return w

    def term(self) -> Word:
        w = self.atom()
        while self.peek()[1] == "^":
            self.take("^")
            tok = self.peek()
            if tok[0] == "int":
                self.take()
                w = power(w, int(tok[1]))
            elif self.starts_atom(tok):
                return conjugate(w, self.term())
            else:
                raise WordSyntaxError("expected exponent or conjugator after '^'", tok[2])
        return w

    def atom(self) -> Word:
        kind, value, pos = self.take()
        if kind == "name":
            if value not in self.alphabet.names:
                raise WordSyntaxError(f"unknown generator {value!r}", pos)
            return self.alphabet.gen(value)
        if value == "1":
            return self.alphabet.identity()
        if value == "(":
            w = self.expr()
            self.take(")")
            return w
        if value == "[":
            parts = [self.expr()]
            while self.peek()[1] == ",":
                self.take(",")
                parts.append(self.expr())
            self.take("]")
            if len(parts) < 2:
                raise WordSyntaxError("commutator needs at least two entries", pos)
            return left_normed_commutator(parts)
        raise WordSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_word(text: str, alphabet: Alphabet | Sequence[str]) -> Word:
    """Parse ``text`` into a reduced word.

    Juxtaposition multiplies, ``^-1`` and ``^n`` take powers, ``u^v`` is the
    conjugate ``v^-1 u v`` (right-associative) and ``[u, v, ...]`` is a
    left-normed commutator.  ``1`` or blank text denotes the identity.
    """
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    if not text.strip():
        return alphabet.identity()
    return _Parser(text, alphabet).parse()


def names_in(text: str) -> list[str]:
    """Generator-looking identifiers of ``text`` in natural sort order."""
    found = set(NAME_RE.findall(text))

    def key(s):
        return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]

    return sorted(found, key=key)
