"""Whitehead's quadratic functors on free abelian groups of finite rank.

For ``A = Z^r`` with basis ``e_1..e_r``:

* ``SP2(A)``: basis ``e_i e_j`` (``i <= j``)
* ``Gamma(A)``: basis ``gamma(e_i)`` then ``[e_i, e_j] = gamma(e_i + e_j) - gamma(e_i) - gamma(e_j)`` (``i < j``)
* ``P2(A) = Delta / Delta^3``: basis ``u_i = e_i - 1`` then ``u_i u_j`` (``i <= j``)
* ``A (x) Z/2``: presented as ``Z^r / 2 Z^r``

The maps of ``0 -> SP2 -> P2 -> A -> 0`` and ``0 -> SP2 -> Gamma -> A/2 -> 0``
are built from the class functions ``gamma_class`` and ``p2_class`` and
checked for exactness with Smith normal forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import intlin
from .intlin import Matrix

KINDS = ("SP2", "GammaW", "P2", "TensorZ2")


@dataclass(frozen=True)
class FreeAbelian:
    rank: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(self.rank)))


@dataclass(frozen=True)
class IntMatrixMap:
    domain_rank: int
    codomain_rank: int
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_columns(cls, cols, codomain_rank: int) -> "IntMatrixMap":
        rows = intlin.from_columns(cols, codomain_rank)
        return cls(len(cols), codomain_rank, tuple(tuple(r) for r in rows))

    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def __call__(self, v):
        return intlin.matvec(self.rows(), v)

    def compose(self, first: "IntMatrixMap") -> "IntMatrixMap":
        """``self o first``."""
        if first.codomain_rank != self.domain_rank:
            raise ValueError("maps do not compose")
        if self.codomain_rank == 0 or first.domain_rank == 0:
            m = [[0] * first.domain_rank for _ in range(self.codomain_rank)]
        else:
            m = intlin.matmul(self.rows(), first.rows())
        return IntMatrixMap(first.domain_rank, self.codomain_rank, tuple(tuple(r) for r in m))


@dataclass(frozen=True)
class FunctorValue:
    kind: str
    free_rank: int
    torsion: tuple[int, ...]
    basis: tuple[str, ...]

    @property
    def order(self) -> int | None:
        """Group order when finite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out


def _pairs(r: int, strict: bool):
    it = itertools.combinations(range(r), 2) if strict else itertools.combinations_with_replacement(range(r), 2)
    return list(it)


def functor_data(kind: str, A: FreeAbelian) -> FunctorValue:
    r, lab = A.rank, A.labels
    if kind == "SP2":
        basis = tuple(f"{lab[i]}.{lab[j]}" for i, j in _pairs(r, False))
        return FunctorValue(kind, len(basis), (), basis)
    if kind == "GammaW":
        basis = tuple(f"g({l})" for l in lab) + tuple(f"[{lab[i]},{lab[j]}]" for i, j in _pairs(r, True))
        return FunctorValue(kind, len(basis), (), basis)
    if kind == "P2":
        basis = tuple(f"u({l})" for l in lab) + tuple(f"u({lab[i]})u({lab[j]})" for i, j in _pairs(r, False))
        return FunctorValue(kind, len(basis), (), basis)
    if kind == "TensorZ2":
        return FunctorValue(kind, 0, (2,) * r, tuple(f"{l}(x)1" for l in lab))
    raise ValueError(f"unknown functor {kind!r}; expected one of {KINDS}")


# -- class functions --------------------------------------------------------

def _sym_index(r: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(_pairs(r, False))}


def _cross_index(r: int) -> dict[tuple[int, int], int]:
    return {p: r + k for k, p in enumerate(_pairs(r, True))}


def gamma_class(a) -> list[int]:
    """Coordinates of ``gamma(a)`` for ``a = sum n_i e_i``.

    Uses ``gamma(x + y) = gamma(x) + gamma(y) + [x, y]`` and ``gamma(n x) = n^2 gamma(x)``.
    """
    r = len(a)
    out = [0] * (r + r * (r - 1) // 2)
    for i in range(r):
        out[i] = a[i] * a[i]
    for (i, j), k in _cross_index(r).items():
        out[k] = a[i] * a[j]
    return out


def gamma_bracket(a, b) -> list[int]:
    """``[a, b] = gamma(a + b) - gamma(a) - gamma(b)``."""
    s = gamma_class([x + y for x, y in zip(a, b)])
    ga, gb = gamma_class(a), gamma_class(b)
    return [x - y - z for x, y, z in zip(s, ga, gb)]


def p2_class(a) -> list[int]:
    """Coordinates of ``a - 1`` in ``Delta / Delta^3`` for ``a = sum n_i e_i``.

    Expands ``prod (1 + u_i)^{n_i} - 1`` to degree two; the group ring is
    commutative, so ``u_i u_j = u_j u_i``.
    """
    r = len(a)
    sym = _sym_index(r)
    out = [0] * (r + len(sym))
    for i in range(r):
        out[i] = a[i]
    for (i, j), k in sym.items():
        out[r + k] = a[i] * (a[i] - 1) // 2 if i == j else a[i] * a[j]
    return out


def p2_product(x, y, r: int) -> list[int]:
    """Product of two classes of ``Delta / Delta^3`` (only linear parts survive)."""
    sym = _sym_index(r)
    out = [0] * (r + len(sym))
    for i in range(r):
        for j in range(r):
            out[r + sym[(min(i, j), max(i, j))]] += x[i] * y[j]
    return out


def _unit(r: int, i: int) -> list[int]:
    return [int(k == i) for k in range(r)]


def sequence_maps(r: int) -> dict[str, IntMatrixMap]:
    """Matrices of the four maps, each built from the defining formulas."""
    e = [_unit(r, i) for i in range(r)]
    sym_pairs = _pairs(r, False)
    n_sym = len(sym_pairs)
    n_gamma = r + r * (r - 1) // 2
    n_p2 = r + n_sym

    sp2_to_gamma = [gamma_bracket(e[i], e[j]) for i, j in sym_pairs]
    # gamma(a) -> a (x) 1, extended additively over the basis of Gamma
    gamma_basis_images = [e[i] for i in range(r)]
    for i, j in _pairs(r, True):
        s = [x + y for x, y in zip(e[i], e[j])]
        gamma_basis_images.append([x - y - z for x, y, z in zip(s, e[i], e[j])])
    sp2_to_p2 = [p2_product(p2_class(e[i]), p2_class(e[j]), r) for i, j in sym_pairs]
    p2_to_a = [e[i] for i in range(r)] + [[0] * r for _ in range(n_sym)]
    return {
        "SP2->Gamma": IntMatrixMap.from_columns(sp2_to_gamma, n_gamma),
        "Gamma->A/2": IntMatrixMap.from_columns(gamma_basis_images, r),
        "SP2->P2": IntMatrixMap.from_columns(sp2_to_p2, n_p2),
        "P2->A": IntMatrixMap.from_columns(p2_to_a, r),
    }


def induced_maps(phi: Matrix) -> dict[str, IntMatrixMap]:
    """Maps induced on each functor by an endomorphism ``phi`` of ``Z^r`` (columns = images)."""
    r = len(phi)
    img = [[phi[i][j] for i in range(r)] for j in range(r)]
    sym_pairs = _pairs(r, False)
    sym = _sym_index(r)
    n_sym = len(sym_pairs)

    sp2_cols = []
    for i, j in sym_pairs:
        col = [0] * n_sym
        for a in range(r):
            for b in range(r):
                col[sym[(min(a, b), max(a, b))]] += img[i][a] * img[j][b]
        sp2_cols.append(col)
    gamma_cols = [gamma_class(img[i]) for i in range(r)]
    gamma_cols += [gamma_bracket(img[i], img[j]) for i, j in _pairs(r, True)]
    p2_cols = [p2_class(img[i]) for i in range(r)]
    p2_cols += [p2_product(p2_class(img[i]), p2_class(img[j]), r) for i, j in sym_pairs]
    return {
        "SP2": IntMatrixMap.from_columns(sp2_cols, n_sym),
        "Gamma": IntMatrixMap.from_columns(gamma_cols, r + r * (r - 1) // 2),
        "P2": IntMatrixMap.from_columns(p2_cols, r + n_sym),
        "A": IntMatrixMap.from_columns(img, r),
    }


# -- exactness ----------------------------------------------------------------

def _kernel_mod(g: IntMatrixMap, relations: Matrix | None) -> list[list[int]]:
    """Kernel of ``Z^m -> Z^k / relations`` given by ``g``."""
    m, k = g.domain_rank, g.codomain_rank
    if relations is None or not relations:
        return intlin.kernel_basis(g.rows(), m) if k else [_unit(m, i) for i in range(m)]
    extended = intlin.hstack(g.rows(), [[-x for x in row] for row in relations])
    return [v[:m] for v in intlin.kernel_basis(extended, m + len(relations[0]))]


def _surjective(g: IntMatrixMap, relations: Matrix | None) -> bool:
    k = g.codomain_rank
    if k == 0:
        return True
    rows = g.rows() if g.domain_rank else [[] for _ in range(k)]
    if relations:
        rows = intlin.hstack(rows, relations)
    ncols = len(rows[0])
    if ncols == 0:
        return False
    inv = intlin.invariant_factors(rows, ncols)
    return len(inv) == k and all(x == 1 for x in inv)


def check_short_exact(f: IntMatrixMap, g: IntMatrixMap, relations: Matrix | None = None) -> dict:
    """Exactness of ``0 -> Z^a --f--> Z^b --g--> Z^c / relations -> 0``."""
    a, b = f.domain_rank, f.codomain_rank
    f_cols = intlin.columns(f.rows(), a) if b else [[] for _ in range(a)]
    injective = a == 0 or intlin.rank(f.rows(), a) == a

    composite = g.compose(f)
    comp_cols = intlin.columns(composite.rows(), a) if composite.codomain_rank else []
    if relations:
        rel_cols = intlin.columns(relations)
        composite_zero = all(intlin.lattice_contains(rel_cols, [c], g.codomain_rank) for c in comp_cols)
    else:
        composite_zero = all(x == 0 for c in comp_cols for x in c)

    ker = _kernel_mod(g, relations)
    middle = composite_zero and (not ker or (a > 0 and intlin.lattice_contains(f_cols, ker, b)))
    surjective = _surjective(g, relations)
    return {
        "injective": injective,
        "composite_zero": composite_zero,
        "exact_middle": middle,
        "surjective": surjective,
        "exact": injective and middle and surjective,
    }


@dataclass
class SequencesReport:
    rank: int
    ranks: dict
    o1: dict
    o2: dict
    cokernel_invariants: list
    cokernel_order: int
    naturality: bool | None = None
    maps: dict = field(default_factory=dict, repr=False)

    @property
    def exact(self) -> bool:
        return self.o1["exact"] and self.o2["exact"]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "rank": self.rank,
            "ranks": self.ranks,
            "o1": self.o1,
            "o2": self.o2,
            "cokernel_SP2_to_Gamma": {"invariants": self.cokernel_invariants, "order": self.cokernel_order},
            "naturality": self.naturality,
            "exact": self.exact,
        }


DEFAULT_RANK_BOUND = 6


def _naturality(r: int, maps: dict[str, IntMatrixMap]) -> bool:
    """Commutation of both sequences with maps induced by basis permutations."""
    perms = list(itertools.permutations(range(r)))
    for perm in perms[1:4] + perms[-1:] if r > 1 else []:
        phi = [[int(perm[j] == i) for j in range(r)] for i in range(r)]
        ind = induced_maps(phi)
        checks = [
            (maps["SP2->Gamma"].compose(ind["SP2"]), ind["Gamma"].compose(maps["SP2->Gamma"])),
            (maps["SP2->P2"].compose(ind["SP2"]), ind["P2"].compose(maps["SP2->P2"])),
            (maps["P2->A"].compose(ind["P2"]), ind["A"].compose(maps["P2->A"])),
            (maps["Gamma->A/2"].compose(ind["Gamma"]), ind["A"].compose(maps["Gamma->A/2"])),
        ]
        if any(x.matrix != y.matrix for x, y in checks):
            return False
    return True


def verify_sequences(A: FreeAbelian | int, bound: int = DEFAULT_RANK_BOUND) -> SequencesReport:
    if isinstance(A, int):
        A = FreeAbelian(A)
    r = A.rank
    if r > bound:
        raise ValueError(f"rank {r} exceeds the configured bound {bound}")
    maps = sequence_maps(r)
    two = [[2 * int(i == j) for j in range(r)] for i in range(r)]
    o1 = check_short_exact(maps["SP2->P2"], maps["P2->A"])
    o2 = check_short_exact(maps["SP2->Gamma"], maps["Gamma->A/2"], two if r else None)
    f = maps["SP2->Gamma"]
    inv = intlin.invariant_factors(f.rows(), f.domain_rank) if f.codomain_rank else []
    nontrivial = [x for x in inv if x != 1]
    order = 1
    for x in nontrivial:
        order *= x
    if len(inv) < f.codomain_rank:
        order = 0  # infinite cokernel
    ranks = {k: functor_data(k, A).free_rank for k in KINDS}
    ranks["A"] = r
    ranks["TensorZ2_order"] = functor_data("TensorZ2", A).order
    return SequencesReport(
        rank=r,
        ranks=ranks,
        o1=o1,
        o2=o2,
        cokernel_invariants=nontrivial,
        cokernel_order=order,
        naturality=_naturality(r, maps),
        maps=maps,
    )
