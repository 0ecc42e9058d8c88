"""The Lambda maps from identity sequences to symmetric-commutator quotients.

For three classes, ``lambda3`` sends a sequence to ``[r_c, s_c]`` where
``r_c, s_c`` are its first two block products; the value is a coset
representative in ``R1 & R2 & R3`` modulo
``[R1, R2 & R3] [R2, R3 & R1] [R3, R1 & R2]``.  For two classes, ``lambda2``
sends it to ``r_c`` modulo ``[R1, R2]``.  No normal form exists for these
cosets; compare values with :func:`peiffer.oracle.shadow_congruent`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ClassCountError
from .sequences import (
    ConjugatedRelator,
    IdentitySequence,
    block_decompose,
    juxtapose,
)
from .words import Word, commutator, format_word, invert, multiply

# class-index pairs (i, (j, k)) naming the factors [R_i, R_j & R_k]
DENOMINATOR3 = ((1, (2, 3)), (2, (3, 1)), (3, (1, 2)))
DENOMINATOR2 = ((1, (2,)),)


@dataclass(frozen=True)
class LambdaValue:
    representative: Word
    blocks: tuple[Word, ...]
    denominator_spec: tuple
    certificates: tuple[tuple[ConjugatedRelator, ...], ...]

    def bracket_spelling(self) -> str:
        if len(self.blocks) >= 2 and len(self.denominator_spec) == 3:
            r, s = self.blocks[:2]
            return f"[{format_word(r)},{format_word(s)}]"
        return format_word(self.representative)

    def __str__(self) -> str:
        return self.bracket_spelling()


def _need_classes(c: IdentitySequence, n: int) -> None:
    if c.presentation.n_classes != n:
        raise ClassCountError(f"expected {n} classes, got {c.presentation.n_classes}")


def lambda3(c: IdentitySequence) -> LambdaValue:
    _need_classes(c, 3)
    bd = block_decompose(c)
    return LambdaValue(
        representative=commutator(bd.r_c, bd.s_c),
        blocks=(bd.r_c, bd.s_c, bd.t_c),
        denominator_spec=DENOMINATOR3,
        certificates=bd.blocks[:2],
    )


def lambda2(c: IdentitySequence) -> LambdaValue:
    _need_classes(c, 2)
    bd = block_decompose(c)
    return LambdaValue(
        representative=bd.r_c,
        blocks=(bd.r_c, bd.s_c),
        denominator_spec=DENOMINATOR2,
        certificates=bd.blocks[:1],
    )


def cross_effect3(a: IdentitySequence, b: IdentitySequence) -> Word:
    """Representative of ``Lambda(a+b) - Lambda(a) - Lambda(b)``.

    Spelled ``Lambda(a+b) Lambda(b)^-1 Lambda(a)^-1``.
    """
    ab = lambda3(juxtapose(a, b)).representative
    la = lambda3(a).representative
    lb = lambda3(b).representative
    return multiply(multiply(ab, invert(lb)), invert(la))
