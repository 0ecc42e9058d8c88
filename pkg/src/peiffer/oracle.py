"""Finite shadows of free-group subgroup data through the Magnus embedding.

``x_i -> 1 + X_i`` embeds the free group into the units of noncommuting power
series.  Truncating at degree ``d`` over the integers detects the lower
central series exactly (``w`` lies in ``gamma_k`` iff its terms of degree
``1..k-1`` vanish).  Truncating mod a prime ``p`` gives a finite ``p``-group
quotient ``Q`` of ``F``, in which normal closures, intersections and
commutator subgroups are computed by enumeration.

Congruences are tested through these shadows: ``u == v mod D`` in ``F``
implies ``proj(u) D' == proj(v) D'`` where ``D'`` is built from the images
of the ``R_i``.  A mismatch refutes the congruence; agreement is evidence.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, ClassCountError, PeifferError
from .sequences import ColoredPresentation
from .words import Alphabet, Word, invert, multiply

DEFAULT_BUDGET = 2_000_000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


# -- truncated Magnus series ----------------------------------------------

def _block_starts(nvars: int, degree: int) -> list[int]:
    starts = [0]
    for j in range(degree + 1):
        starts.append(starts[-1] + nvars ** j)
    return starts


class TruncatedSeries:
    """A noncommutative polynomial truncated above ``degree``.

    Coefficients are exact integers (``modulus is None``) or residues mod a
    prime.  Stored densely, constant term first, then each degree block in
    base-``nvars`` lexicographic order.
    """

    __slots__ = ("nvars", "degree", "modulus", "coeffs")

    def __init__(self, nvars: int, degree: int, modulus: int | None, coeffs):
        self.nvars = nvars
        self.degree = degree
        self.modulus = modulus
        coeffs = np.asarray(coeffs)
        if coeffs.shape != (_block_starts(nvars, degree)[-1],):
            raise ValueError("coefficient vector has the wrong length")
        if modulus is not None:
            coeffs = coeffs % modulus
        self.coeffs = coeffs

    def block(self, j: int) -> np.ndarray:
        s = _block_starts(self.nvars, self.degree)
        return self.coeffs[s[j]:s[j + 1]]

    def coefficient(self, monomial: Sequence[int]) -> int:
        j = len(monomial)
        if j > self.degree:
            return 0
        b = 0
        for v in monomial:
            b = b * self.nvars + v
        return int(self.block(j)[b])

    def terms(self) -> dict[tuple[int, ...], int]:
        """Nonzero coefficients keyed by monomial (tuple of variable indices)."""
        out = {}
        for j in range(self.degree + 1):
            blk = self.block(j)
            for b in np.flatnonzero(blk):
                value = int(blk[b])
                b = int(b)
                mono = []
                for _ in range(j):
                    b, r = divmod(b, self.nvars)
                    mono.append(r)
                out[tuple(reversed(mono))] = value
        return out

    def low_degree(self) -> int | None:
        """Smallest positive degree carrying a nonzero coefficient."""
        for j in range(1, self.degree + 1):
            if np.any(self.block(j) != 0):
                return j
        return None

    def _compatible(self, other: "TruncatedSeries") -> None:
        if (self.nvars, self.degree, self.modulus) != (other.nvars, other.degree, other.modulus):
            raise PeifferError("series live in different truncated algebras")

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._compatible(other)
        d = self.degree
        dtype = np.result_type(self.coeffs, other.coeffs)
        blocks = []
        for j in range(d + 1):
            acc = np.zeros(self.nvars ** j, dtype=dtype)
            for a in range(j + 1):
                acc += np.outer(self.block(a), other.block(j - a)).ravel()
            blocks.append(acc)
        return TruncatedSeries(self.nvars, d, self.modulus, np.concatenate(blocks))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return ((self.nvars, self.degree, self.modulus) == (other.nvars, other.degree, other.modulus)
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def to_element(self) -> bytes:
        if self.modulus is None or self.modulus >= 256:
            raise PeifferError("only series mod a small prime encode as quotient elements")
        return bytes(int(c) for c in self.coeffs[1:])

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for mono, c in sorted(self.terms().items(), key=lambda t: (len(t[0]), t[0])):
            body = "*".join(f"X_{names[v]}" for v in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        text = " + ".join(parts) if parts else "0"
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        mod = "" if self.modulus is None else f" mod {self.modulus}"
        return f"TruncatedSeries({self.format()}{mod}, deg<={self.degree})"



def _expand_exact(letters: Sequence[int], nvars: int, degree: int) -> np.ndarray:
    # |coefficient| <= C(L + d, d) for a word of length L
    safe = math.comb(len(letters) + degree, degree) < 2 ** 62
    dtype = np.int64 if safe else object
    blocks = [np.zeros(nvars ** j, dtype=dtype) for j in range(degree + 1)]
    blocks[0][0] = 1
    for x in letters:
        g = abs(x) - 1
        if x > 0:
            for j in range(degree, 0, -1):
                blocks[j].reshape(-1, nvars)[:, g] += blocks[j - 1]
        else:
            for j in range(1, degree + 1):
                blocks[j].reshape(-1, nvars)[:, g] -= blocks[j - 1]
    return np.concatenate(blocks)


def magnus_expand(w: Word, d: int, p: int | None = None) -> TruncatedSeries:
    """Image of ``w`` under ``x_i -> 1 + X_i``, truncated above degree ``d``."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    k = len(w.alphabet)
    if p is not None and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p is not None and p < 256:
        tab = _kernels.monomial_table(k, d, p)
        body = np.frombuffer(_kernels.project_letters(w.letters, tab), dtype=np.uint8)
        return TruncatedSeries(k, d, p, np.concatenate(([1], body.astype(np.int64))))
    return TruncatedSeries(k, d, p, _expand_exact(w.letters, k, d))


def lcs_degree(w: Word, d: int) -> int | None:
    """Lower-central degree of ``w`` as seen up to ``d``.

    Returns the smallest ``k <= d`` with a nonzero degree-``k`` Magnus term,
    so ``w`` lies in ``gamma_k`` but not ``gamma_{k+1}``; returns ``None``
    when every term of degree ``1..d`` vanishes (``w`` in ``gamma_{d+1}``).
    """
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    if w.is_identity():
        return None
    return magnus_expand(w, d).low_degree()


# -- the finite quotient ----------------------------------------------------

class QuotientGroup:
    """Image of the free group in the mod-``p`` Magnus algebra truncated at ``d``.

    Elements are ``bytes`` holding the coefficients of degree ``1..d``.
    """

    def __init__(self, nvars: int, p: int, d: int, budget: int = DEFAULT_BUDGET):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 256:
            raise ValueError("the finite quotient supports primes below 256")
        if d < 1:
            raise ValueError("degree bound must be >= 1")
        self.nvars = nvars
        self.p = p
        self.d = d
        self.budget = budget
        self.table = _kernels.monomial_table(nvars, d, p)
        self.identity = bytes(self.table.size)
        self.generators = tuple(self.project_letters((i + 1,)) for i in range(nvars))
        self._full: SubgroupHandle | None = None

    @property
    def ambient_log_order(self) -> int:
        """``log_p`` of the order of the whole unit group (constant term 1)."""
        return self.table.size

    def project_letters(self, letters) -> bytes:
        return _kernels.project_letters(letters, self.table)

    def project(self, w: Word) -> bytes:
        if len(w.alphabet) != self.nvars:
            raise PeifferError("word alphabet does not match the quotient")
        return _kernels.project_letters(w.letters, self.table)

    def mul(self, a: bytes, b: bytes) -> bytes:
        return _kernels.series_mul(a, b, self.table)

    def inv(self, a: bytes) -> bytes:
        return _kernels.series_inv(a, self.table)

    def conj(self, a: bytes, g: bytes) -> bytes:
        return self.mul(self.mul(self.inv(g), a), g)

    def comm(self, a: bytes, b: bytes) -> bytes:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def power(self, a: bytes, n: int) -> bytes:
        if n < 0:
            a, n = self.inv(a), -n
        out = self.identity
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def element_order(self, a: bytes) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def closure(self, gens: Iterable[bytes], start: Iterable[bytes] = ()) -> frozenset:
        return frozenset(_kernels.closure(list(gens), list(start), self.table, self.budget))

    def full(self) -> "SubgroupHandle":
        if self._full is None:
            self._full = SubgroupHandle(self, self.closure(self.generators), self.generators)
        return self._full

    def order(self) -> int:
        return len(self.full())

    def trivial(self) -> "SubgroupHandle":
        return SubgroupHandle(self, frozenset([self.identity]), ())

    def subgroup(self, gens: Iterable[bytes]) -> "SubgroupHandle":
        gens = tuple(g for g in gens if g != self.identity)
        return SubgroupHandle(self, self.closure(gens), gens)

    def __repr__(self) -> str:
        return f"QuotientGroup(nvars={self.nvars}, p={self.p}, d={self.d})"


def build_quotient(alphabet_size: int, p: int, d: int, budget: int = DEFAULT_BUDGET) -> QuotientGroup:
    return QuotientGroup(alphabet_size, p, d, budget)


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    group: QuotientGroup
    elements: frozenset
    gens: tuple

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: bytes) -> bool:
        return x in self.elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        return self.group is other.group and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def issubset(self, other: "SubgroupHandle") -> bool:
        return self.elements <= other.elements

    def is_closed(self) -> bool:
        """Closed under products and inverses (checked on all elements)."""
        g = self.group
        if g.identity not in self.elements:
            return False
        return all(g.mul(a, b) in self.elements for a in self.elements for b in self.gens) and all(
            g.inv(a) in self.elements for a in self.elements
        )

    def is_normalized_by(self, conjugators: Iterable[bytes]) -> bool:
        g = self.group
        gens = self.gens or tuple(self.elements)
        return all(g.conj(h, x) in self.elements for h in gens for x in conjugators)

    def is_normal(self) -> bool:
        return self.is_normalized_by(self.group.generators)


def _sorted(elements: Iterable[bytes]) -> list[bytes]:
    return sorted(elements)


def small_generating_set(group: QuotientGroup, elements: Iterable[bytes]) -> tuple:
    """Greedy generators for the subgroup whose element set is ``elements``."""
    gens: list[bytes] = []
    current = frozenset([group.identity])
    for x in _sorted(elements):
        if x not in current:
            gens.append(x)
            current = group.closure(gens, current)
    return tuple(gens)


def _normal_closure(group: QuotientGroup, gens: Iterable[bytes], conjugators: Sequence[bytes]) -> SubgroupHandle:
    chosen: list[bytes] = []
    current = frozenset([group.identity])
    queue: list[bytes] = []
    for g in gens:
        if g not in current:
            chosen.append(g)
            current = group.closure(chosen, current)
            queue.append(g)
    while queue:
        g = queue.pop()
        for x in conjugators:
            y = group.conj(g, x)
            if y not in current:
                chosen.append(y)
                current = group.closure(chosen, current)
                queue.append(y)
    return SubgroupHandle(group, current, tuple(chosen))


def normal_closure(group: QuotientGroup, gens: Iterable[Word | bytes]) -> SubgroupHandle:
    """Smallest normal subgroup of the image containing the projected ``gens``."""
    elems = [g if isinstance(g, bytes) else group.project(g) for g in gens]
    return _normal_closure(group, elems, group.generators)


def _owner(a: SubgroupHandle, b: SubgroupHandle) -> QuotientGroup:
    if a.group is not b.group:
        raise PeifferError("subgroups belong to different quotient groups")
    return a.group


def meet(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    g = _owner(a, b)
    elems = a.elements & b.elements
    return SubgroupHandle(g, elems, small_generating_set(g, elems))


def join(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    g = _owner(a, b)
    gens = small_generating_set(g, a.gens + b.gens) if (a.gens or b.gens) else ()
    return SubgroupHandle(g, g.closure(a.gens + b.gens), gens)


def commutator_subgroup(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    """``[A, B]`` as the normal closure in ``<A, B>`` of generator commutators."""
    g = _owner(a, b)
    comms = [g.comm(x, y) for x in a.gens for y in b.gens]
    return _normal_closure(g, comms, a.gens + b.gens)


def commutator_subgroup_bruteforce(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    """``[A, B]`` generated by all commutators of all element pairs."""
    g = _owner(a, b)
    comms = {g.comm(x, y) for x in a.elements for y in b.elements}
    comms.discard(g.identity)
    gens = small_generating_set(g, comms)
    return SubgroupHandle(g, g.closure(gens), gens)


def subgroup_op(kind: str, a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    if kind == "meet":
        return meet(a, b)
    if kind == "commutator":
        return commutator_subgroup(a, b)
    if kind == "join":
        return join(a, b)
    raise ValueError(f"unknown subgroup operation {kind!r}")


# -- shadows of I_n ---------------------------------------------------------

def _label(S: Sequence[int]) -> str:
    return "&".join(f"R{i}" for i in S)


def denominator_factors(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered splittings ``I | J`` of ``{1..n}`` into two nonempty parts."""
    full = range(1, n + 1)
    out = []
    for size in range(1, n):
        for I in itertools.combinations(full, size):
            J = tuple(i for i in full if i not in I)
            if (J, I) not in out:
                out.append((I, J))
    return out


def _abelian_invariants(p: int, orders: list[int]) -> list[int]:
    """Invariants of an abelian p-group from the multiset of element orders."""
    if not orders:
        return []
    top = max(orders)
    e = round(math.log(top, p))
    omega = []  # log_p of #{x : x^(p^j) = 1}
    for j in range(e + 1):
        cnt = sum(1 for o in orders if (p ** j) % o == 0)
        omega.append(round(math.log(cnt, p)))
    at_least = [omega[j] - omega[j - 1] for j in range(1, e + 1)]  # #{i : e_i >= j}
    inv = []
    for j in range(e, 0, -1):
        exact = at_least[j - 1] - (at_least[j] if j < e else 0)
        inv.extend([p ** j] * exact)
    return sorted(inv)


@dataclass
class Shadow:
    """Finite images of the ``R_i``, their intersection and the denominator."""

    presentation: ColoredPresentation
    group: QuotientGroup
    R: tuple
    meets: dict
    factors: dict
    D: SubgroupHandle
    N: SubgroupHandle
    _labels: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.group.p

    @property
    def d(self) -> int:
        return self.group.d

    def project(self, w: Word) -> bytes:
        return self.group.project(w)

    def coset_label(self, x: Word | bytes) -> str:
        """Canonical name of the coset ``x D``: hex of its least element."""
        if isinstance(x, Word):
            x = self.project(x)
        lab = self._labels.get(x)
        if lab is None:
            rep = min(self.group.mul(x, y) for y in self.D.elements)
            lab = rep.hex()
            self._labels[x] = lab
        return lab

    def in_denominator(self, w: Word | bytes) -> bool:
        x = w if isinstance(w, bytes) else self.project(w)
        return x in self.D.elements

    def congruent(self, u: Word, v: Word) -> bool:
        return self.in_denominator(multiply(u, invert(v)))

    def quotient_cosets(self) -> list[bytes]:
        """One representative per coset of ``D`` in ``N`` (least in sorted order)."""
        covered: set = set()
        reps = []
        for x in _sorted(self.N.elements):
            if x in covered:
                continue
            reps.append(x)
            covered.update(self.group.mul(x, y) for y in self.D.elements)
        return reps

    def quotient_order_of(self, x: Word | bytes) -> int:
        if isinstance(x, Word):
            x = self.project(x)
        g = self.group
        n, y = 1, x
        while y not in self.D.elements:
            y = g.mul(y, x)
            n += 1
        return n

    def quotient_invariants(self) -> list[int]:
        orders = [self.quotient_order_of(x) for x in self.quotient_cosets()]
        return _abelian_invariants(self.p, orders)

    def report(self, words: dict[str, Word] | None = None) -> "ShadowReport":
        names = self.presentation.alphabet.names
        labels = {}
        for key, w in (words or {}).items():
            x = self.project(w)
            labels[key] = {
                "coset": self.coset_label(x),
                "in_N": x in self.N.elements,
                "in_D": x in self.D.elements,
                "order_mod_D": self.quotient_order_of(x) if x in self.N.elements else None,
            }
        n_over_d = len(self.N) // len(self.D)
        return ShadowReport(
            p=self.p,
            d=self.d,
            generators=list(names),
            n_classes=self.presentation.n_classes,
            image_order=self.group.order(),
            R_orders={f"R{i}": len(r) for i, r in enumerate(self.R, 1)},
            meet_orders={k: len(v) for k, v in self.meets.items()},
            factor_orders={k: len(v) for k, v in self.factors.items()},
            D_order=len(self.D),
            N_order=len(self.N),
            quotient_order=n_over_d,
            quotient_invariants=self.quotient_invariants(),
            D_normal=self.D.is_normal() and self.D.issubset(self.N),
            D_generators=[x.hex() for x in self.D.gens],
            labels=labels,
        )


@dataclass
class ShadowReport:
    p: int
    d: int
    generators: list
    n_classes: int
    image_order: int
    R_orders: dict
    meet_orders: dict
    factor_orders: dict
    D_order: int
    N_order: int
    quotient_order: int
    quotient_invariants: list
    D_normal: bool
    D_generators: list
    labels: dict

    @property
    def quotient_is_cyclic(self) -> bool:
        return len(self.quotient_invariants) <= 1

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "p": self.p,
            "d": self.d,
            "generators": self.generators,
            "n_classes": self.n_classes,
            "image_order": self.image_order,
            "R_orders": self.R_orders,
            "meet_orders": self.meet_orders,
            "factor_orders": self.factor_orders,
            "D_order": self.D_order,
            "N_order": self.N_order,
            "quotient_order": self.quotient_order,
            "quotient_invariants": self.quotient_invariants,
            "quotient_is_cyclic": self.quotient_is_cyclic,
            "D_normal_in_N": self.D_normal,
            "D_generators": self.D_generators,
            "labels": self.labels,
        }


@lru_cache(maxsize=32)
def shadow(pres: ColoredPresentation, p: int, d: int, budget: int = DEFAULT_BUDGET) -> Shadow:
    """Finite shadow of ``I_n(F; R_1..R_n)`` for any number of classes."""
    Q = build_quotient(len(pres.alphabet), p, d, budget)
    n = pres.n_classes
    R = tuple(normal_closure(Q, cls) for cls in pres.classes)

    inter: dict[tuple[int, ...], SubgroupHandle] = {}

    def meet_of(S: tuple[int, ...]) -> SubgroupHandle:
        if S not in inter:
            inter[S] = R[S[0] - 1] if len(S) == 1 else meet(meet_of(S[:-1]), R[S[-1] - 1])
        return inter[S]

    factors = {}
    for I, J in denominator_factors(n):
        factors[f"[{_label(I)},{_label(J)}]"] = commutator_subgroup(meet_of(I), meet_of(J))
    N = meet_of(tuple(range(1, n + 1)))

    D = Q.trivial()
    for f in factors.values():
        D = join(D, f)
    meets = {_label(S): h for S, h in sorted(inter.items()) if len(S) > 1}
    return Shadow(pres, Q, R, meets, factors, D, N)


def shadow_of_I3(pres: ColoredPresentation, p: int, d: int, budget: int = DEFAULT_BUDGET) -> Shadow:
    if pres.n_classes != 3:
        raise ClassCountError(f"expected 3 classes, got {pres.n_classes}")
    return shadow(pres, p, d, budget)


def shadow_congruent(u: Word, v: Word, pres: ColoredPresentation, p: int, d: int,
                     budget: int = DEFAULT_BUDGET) -> bool:
    """``proj(u v^-1)`` lies in the shadow denominator of ``pres``."""
    return shadow(pres, p, d, budget).congruent(u, v)


__all__ = [
    "DEFAULT_BUDGET", "TruncatedSeries", "magnus_expand", "lcs_degree",
    "QuotientGroup", "build_quotient", "SubgroupHandle", "normal_closure",
    "meet", "join", "commutator_subgroup", "commutator_subgroup_bruteforce",
    "subgroup_op", "small_generating_set", "denominator_factors", "Shadow",
    "ShadowReport", "shadow", "shadow_of_I3", "shadow_congruent", "is_prime",
    "BudgetExceeded",
]
