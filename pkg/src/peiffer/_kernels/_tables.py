"""Index tables for dense truncated series in noncommuting variables.

A series truncated at degree ``d`` over ``k`` variables with constant term 1
is stored as its coefficients on the monomials of degree 1..d.  Monomials are
laid out graded-lexicographically: all degree-1 monomials, then degree 2, ...;
inside a degree block the position is the base-``k`` number spelled by the
variable indices (first variable most significant).
"""

from __future__ import annotations

from array import array
from functools import lru_cache


class MonomialTable:
    __slots__ = (
        "nvars", "degree", "modulus", "size", "offsets", "monomials",
        "last", "prefix", "split_ptr", "split_u", "split_v",
    )

    def __init__(self, nvars: int, degree: int, modulus: int):
        if nvars < 1 or degree < 1:
            raise ValueError("need at least one variable and degree >= 1")
        if not 2 <= modulus < 256:
            raise ValueError("modulus must lie in [2, 256)")
        self.nvars = nvars
        self.degree = degree
        self.modulus = modulus

        offsets = [0]
        for j in range(1, degree + 1):
            offsets.append(offsets[-1] + nvars ** j)
        # offsets[j-1] is where degree j starts; offsets[degree] is the size
        self.offsets = tuple(offsets)
        self.size = offsets[-1]

        monomials: list[tuple[int, ...]] = []
        for j in range(1, degree + 1):
            for b in range(nvars ** j):
                word = []
                for _ in range(j):
                    b, r = divmod(b, nvars)
                    word.append(r)
                monomials.append(tuple(reversed(word)))
        self.monomials = tuple(monomials)
        index = {m: i for i, m in enumerate(monomials)}

        last = array("i")
        prefix = array("i")
        split_ptr = array("i", [0])
        split_u = array("i")
        split_v = array("i")
        for m in monomials:
            last.append(m[-1])
            prefix.append(index[m[:-1]] if len(m) > 1 else -1)
            for cut in range(1, len(m)):
                split_u.append(index[m[:cut]])
                split_v.append(index[m[cut:]])
            split_ptr.append(len(split_u))
        self.last = last
        self.prefix = prefix
        self.split_ptr = split_ptr
        self.split_u = split_u
        self.split_v = split_v

    def index_of(self, monomial: tuple[int, ...]) -> int:
        j = len(monomial)
        b = 0
        for v in monomial:
            b = b * self.nvars + v
        return self.offsets[j - 1] + b

    def degree_of(self, i: int) -> int:
        return len(self.monomials[i])


@lru_cache(maxsize=64)
def monomial_table(nvars: int, degree: int, modulus: int) -> MonomialTable:
    return MonomialTable(nvars, degree, modulus)
