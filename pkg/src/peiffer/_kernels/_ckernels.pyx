# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; drop-in replacement for ``_pykernels``."""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport malloc, free

from ..errors import BudgetExceeded

BACKEND = "cython"


def reduce_letters(letters):
    cdef list out = []
    cdef Py_ssize_t n = 0
    cdef long x
    for x in letters:
        if n and <long>out[n - 1] == -x:
            out.pop()
            n -= 1
        else:
            out.append(x)
            n += 1
    return tuple(out)


def concat_reduce(tuple a, tuple b):
    cdef Py_ssize_t i = 0, n = len(a), m = len(b)
    while i < n and i < m and <long>a[n - 1 - i] == -<long>b[i]:
        i += 1
    if i == 0:
        return a + b
    return a[: n - i] + b[i:]


cdef inline void _mul(const unsigned char[:] a, const unsigned char[:] b,
                      unsigned char* out, int size, int p,
                      const int[:] ptr, const int[:] su, const int[:] sv) noexcept nogil:
    cdef int w, s
    cdef long acc
    for w in range(size):
        acc = a[w] + b[w]
        for s in range(ptr[w], ptr[w + 1]):
            acc += a[su[s]] * b[sv[s]]
        out[w] = <unsigned char>(acc % p)


def series_mul(const unsigned char[:] a, const unsigned char[:] b, tab):
    cdef int size = tab.size
    cdef bytes res = PyBytes_FromStringAndSize(NULL, size)
    cdef unsigned char* out = <unsigned char*><char*>res
    _mul(a, b, out, size, tab.modulus, tab.split_ptr, tab.split_u, tab.split_v)
    return res


def series_inv(const unsigned char[:] a, tab):
    cdef int size = tab.size
    cdef int p = tab.modulus
    cdef const int[:] ptr = tab.split_ptr
    cdef const int[:] su = tab.split_u
    cdef const int[:] sv = tab.split_v
    cdef bytes res = PyBytes_FromStringAndSize(NULL, size)
    cdef unsigned char* out = <unsigned char*><char*>res
    cdef int w, s
    cdef long acc
    for w in range(size):
        acc = a[w]
        for s in range(ptr[w], ptr[w + 1]):
            acc += a[su[s]] * out[sv[s]]
        acc = (-acc) % p
        if acc < 0:
            acc += p
        out[w] = <unsigned char>acc
    return res


def project_letters(letters, tab):
    cdef int size = tab.size
    cdef int p = tab.modulus
    cdef int nvars = tab.nvars
    cdef const int[:] last = tab.last
    cdef const int[:] prefix = tab.prefix
    cdef bytes res = PyBytes_FromStringAndSize(NULL, size)
    cdef unsigned char* c = <unsigned char*><char*>res
    cdef int w, q, g
    cdef long x, v
    for w in range(size):
        c[w] = 0
    for x in letters:
        if x == 0 or x > nvars or -x > nvars:
            raise ValueError(f"letter {x} outside alphabet of size {nvars}")
        if x > 0:
            g = x - 1
            for w in range(size - 1, -1, -1):
                if last[w] == g:
                    q = prefix[w]
                    v = c[w] + (1 if q < 0 else c[q])
                    c[w] = <unsigned char>(v % p)
        else:
            g = -x - 1
            for w in range(size):
                if last[w] == g:
                    q = prefix[w]
                    v = c[w] - (1 if q < 0 else c[q])
                    v %= p
                    if v < 0:
                        v += p
                    c[w] = <unsigned char>v
    return res


def closure(gens, start, tab, Py_ssize_t budget):
    """Close ``start`` (plus the identity) under right multiplication by ``gens``."""
    cdef int size = tab.size
    cdef int p = tab.modulus
    cdef const int[:] ptr = tab.split_ptr
    cdef const int[:] su = tab.split_u
    cdef const int[:] sv = tab.split_v
    cdef set seen = set(start)
    seen.add(bytes(size))
    cdef list frontier = list(seen)
    cdef list gl = list(gens)
    cdef list nxt
    cdef bytes h, g, y
    cdef unsigned char* buf = <unsigned char*>malloc(size if size > 0 else 1)
    if buf == NULL:
        raise MemoryError()
    try:
        while frontier:
            nxt = []
            for h in frontier:
                for g in gl:
                    _mul(h, g, buf, size, p, ptr, su, sv)
                    y = PyBytes_FromStringAndSize(<char*>buf, size)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > budget:
                raise BudgetExceeded(f"closure exceeded element budget {budget}")
            frontier = nxt
    finally:
        free(buf)
    return seen
