# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contract as ``_pykernels``.

Moduli below 2**31 run on C ``long long`` buffers, everything else (the
integer path used for Q, and huge primes) runs on Python ints.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

cdef long long SMALL_P = 2147483648


cdef long long* _load(list src, Py_ssize_t size) except NULL:
    cdef long long* buf = <long long*> PyMem_Malloc((size if size > 0 else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t t
    for t in range(size):
        buf[t] = src[t]
    return buf


cdef void _mm_small(long long* a, long long* b, long long* out,
                    Py_ssize_t n, Py_ssize_t k, Py_ssize_t m, long long p) nogil:
    cdef Py_ssize_t i, j, t
    cdef long long acc, x
    for i in range(n):
        for j in range(m):
            out[i * m + j] = 0
        for t in range(k):
            x = a[i * k + t]
            if x == 0:
                continue
            for j in range(m):
                acc = out[i * m + j] + x * b[t * m + j]
                out[i * m + j] = acc % p


cdef list _mm_obj(list a, list b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m, object p):
    cdef list out = [0] * (n * m)
    cdef Py_ssize_t i, j, t
    cdef object x, acc
    for i in range(n):
        for t in range(k):
            x = a[i * k + t]
            if x == 0:
                continue
            for j in range(m):
                out[i * m + j] = out[i * m + j] + x * b[t * m + j]
    if p:
        for i in range(n * m):
            out[i] = out[i] % p
    return out


def matmul(list a, list b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m, p=0):
    """(n x k) @ (k x m) on flat lists."""
    cdef long long* ca
    cdef long long* cb
    cdef long long* co
    cdef long long cp
    cdef Py_ssize_t t
    if p and p < SMALL_P:
        cp = p
        ca = _load(a, n * k)
        cb = _load(b, k * m)
        co = <long long*> PyMem_Malloc((n * m if n * m > 0 else 1) * sizeof(long long))
        try:
            _mm_small(ca, cb, co, n, k, m, cp)
            return [co[t] for t in range(n * m)]
        finally:
            PyMem_Free(ca)
            PyMem_Free(cb)
            PyMem_Free(co)
    return _mm_obj(a, b, n, k, m, p)


def power_scan(list a, Py_ssize_t n, Py_ssize_t r_max, p=0):
    """First r in 2..r_max where A^r differs from the entrywise r-th power."""
    cdef Py_ssize_t size = n * n
    cdef Py_ssize_t r, t
    cdef long long cp
    cdef long long* ca
    cdef long long* cur
    cdef long long* nxt
    cdef long long* had
    cdef long long* swap
    cdef list power, hadl
    if p and p < SMALL_P:
        cp = p
        ca = _load(a, size)
        cur = _load(a, size)
        had = _load(a, size)
        nxt = <long long*> PyMem_Malloc((size if size > 0 else 1) * sizeof(long long))
        try:
            for r in range(2, r_max + 1):
                _mm_small(cur, ca, nxt, n, n, n, cp)
                swap = cur
                cur = nxt
                nxt = swap
                for t in range(size):
                    had[t] = had[t] * ca[t] % cp
                for t in range(size):
                    if cur[t] != had[t]:
                        return r, t, cur[t], had[t]
            return None
        finally:
            PyMem_Free(ca)
            PyMem_Free(cur)
            PyMem_Free(had)
            PyMem_Free(nxt)
    power = list(a)
    hadl = list(a)
    for r in range(2, r_max + 1):
        power = _mm_obj(power, a, n, n, n, p)
        if p:
            for t in range(size):
                hadl[t] = hadl[t] * a[t] % p
        else:
            for t in range(size):
                hadl[t] = hadl[t] * a[t]
        for t in range(size):
            if power[t] != hadl[t]:
                return r, t, power[t], hadl[t]
    return None
