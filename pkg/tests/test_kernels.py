import os
import random
import subprocess
import sys

import pytest

from peiffer import _kernels
from peiffer.errors import BudgetExceeded
from peiffer.oracle import magnus_expand
from peiffer.words import Alphabet, Word

BACKENDS = _kernels.available_backends()
A = Alphabet(("a", "b", "c"))


@pytest.fixture(params=sorted(BACKENDS))
def kern(request):
    return BACKENDS[request.param]


def rand_letters(rng, n, k=3):
    return [rng.choice((1, -1)) * rng.randint(1, k) for _ in range(n)]


def test_selected_backend_is_available():
    assert _kernels.BACKEND in BACKENDS
    if "cython" in BACKENDS and not os.environ.get("PEIFFER_PURE_PYTHON"):
        assert _kernels.BACKEND == "cython"


def test_pure_python_switch():
    code = "import peiffer._kernels as k; print(k.BACKEND)"
    env = dict(os.environ, PEIFFER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_reduce(kern):
    rng = random.Random(0)
    for _ in range(300):
        ls = rand_letters(rng, rng.randint(0, 20))
        assert tuple(kern.reduce_letters(ls)) == Word(tuple(ls), A).letters
        u = Word(tuple(rand_letters(rng, 8)), A).letters
        v = Word(tuple(rand_letters(rng, 8)), A).letters
        assert tuple(kern.concat_reduce(u, v)) == Word(u + v, A).letters


@pytest.mark.parametrize("p,d", [(2, 3), (3, 3), (5, 2), (2, 5)])
def test_projection_matches_series(kern, p, d):
    tab = _kernels.monomial_table(3, d, p)
    rng = random.Random(p * 10 + d)
    for _ in range(100):
        ls = rand_letters(rng, rng.randint(0, 12))
        w = Word(tuple(ls), A)
        x = kern.project_letters(w.letters, tab)
        assert x == magnus_expand(w, d, p).to_element()


@pytest.mark.parametrize("p,d", [(2, 3), (3, 4)])
def test_mul_inv_agree_across_backends(kern, p, d):
    tab = _kernels.monomial_table(3, d, p)
    ref = BACKENDS["python"]
    rng = random.Random(d)
    one = bytes(tab.size)
    for _ in range(100):
        x = ref.project_letters(rand_letters(rng, 10), tab)
        y = ref.project_letters(rand_letters(rng, 10), tab)
        assert kern.series_mul(x, y, tab) == ref.series_mul(x, y, tab)
        assert kern.series_mul(x, kern.series_inv(x, tab), tab) == one
        assert kern.series_inv(x, tab) == ref.series_inv(x, tab)


def test_project_rejects_foreign_letters(kern):
    tab = _kernels.monomial_table(2, 2, 2)
    with pytest.raises(ValueError):
        kern.project_letters((3,), tab)


def test_closure(kern):
    tab = _kernels.monomial_table(2, 3, 2)
    gens = [kern.project_letters((1,), tab), kern.project_letters((2,), tab)]
    els = kern.closure(gens, [], tab, 10 ** 6)
    assert len(els) == 128
    assert set(els) == set(BACKENDS["python"].closure(gens, [], tab, 10 ** 6))
    with pytest.raises(BudgetExceeded):
        kern.closure(gens, [], tab, 50)


def test_table_shape():
    tab = _kernels.monomial_table(2, 3, 2)
    assert tab.size == 2 + 4 + 8
    for w in range(tab.size):
        splits = range(tab.split_ptr[w], tab.split_ptr[w + 1])
        assert len(splits) == len(tab.monomials[w]) - 1
        for s in splits:
            assert tab.monomials[tab.split_u[s]] + tab.monomials[tab.split_v[s]] == tab.monomials[w]
    with pytest.raises(ValueError):
        _kernels.MonomialTable(2, 2, 256)
