"""Reference kernels in plain Python.

Same signatures as the compiled module.  Letters are nonzero ints: generator
``i`` is ``i + 1`` and its inverse ``-(i + 1)``.  Group elements of a mod-p
truncated Magnus quotient are ``bytes`` of length ``table.size``.
"""

from __future__ import annotations

from ..errors import BudgetExceeded
from ._tables import MonomialTable

BACKEND = "python"


def reduce_letters(letters) -> tuple:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def concat_reduce(a: tuple, b: tuple) -> tuple:
    # both inputs already reduced: cancellation only happens at the seam
    i, n, m = 0, len(a), len(b)
    while i < n and i < m and a[n - 1 - i] == -b[i]:
        i += 1
    return a[: n - i] + b[i:]


def series_mul(a: bytes, b: bytes, tab: MonomialTable) -> bytes:
    p = tab.modulus
    ptr, su, sv = tab.split_ptr, tab.split_u, tab.split_v
    out = bytearray(tab.size)
    for w in range(tab.size):
        acc = a[w] + b[w]
        for s in range(ptr[w], ptr[w + 1]):
            acc += a[su[s]] * b[sv[s]]
        out[w] = acc % p
    return bytes(out)


def series_inv(a: bytes, tab: MonomialTable) -> bytes:
    p = tab.modulus
    ptr, su, sv = tab.split_ptr, tab.split_u, tab.split_v
    out = bytearray(tab.size)
    for w in range(tab.size):
        acc = a[w]
        for s in range(ptr[w], ptr[w + 1]):
            acc += a[su[s]] * out[sv[s]]
        out[w] = (-acc) % p
    return bytes(out)


def _letter_step(c: bytearray, x: int, tab: MonomialTable) -> None:
    p = tab.modulus
    last, prefix = tab.last, tab.prefix
    g = abs(x) - 1
    if x > 0:
        # right multiplication by 1 + X_g reads the old values, so walk down
        for w in range(tab.size - 1, -1, -1):
            if last[w] == g:
                q = prefix[w]
                c[w] = (c[w] + (1 if q < 0 else c[q])) % p
    else:
        # right multiplication by (1 + X_g)^-1 reads the new values
        for w in range(tab.size):
            if last[w] == g:
                q = prefix[w]
                c[w] = (c[w] - (1 if q < 0 else c[q])) % p


def project_letters(letters, tab: MonomialTable) -> bytes:
    c = bytearray(tab.size)
    for x in letters:
        if not 0 < abs(x) <= tab.nvars:
            raise ValueError(f"letter {x} outside alphabet of size {tab.nvars}")
        _letter_step(c, x, tab)
    return bytes(c)


def closure(gens, start, tab: MonomialTable, budget: int) -> set:
    """Close ``start`` (plus the identity) under right multiplication by ``gens``."""
    seen = set(start)
    seen.add(bytes(tab.size))
    frontier = list(seen)
    gens = list(gens)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                y = series_mul(h, g, tab)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > budget:
            raise BudgetExceeded(f"closure exceeded element budget {budget}")
        frontier = nxt
    return seen
