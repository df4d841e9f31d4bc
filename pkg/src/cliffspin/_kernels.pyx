# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, overflowcheck=True, cdivision=True
"""Compiled integer row-reduction kernels.

int64 twins of ``_kernels_py``.  Arithmetic is overflow-checked: an
OverflowError means the caller must rerun the pure-Python kernel.
"""

import numpy as np
from libc.stdint cimport int64_t

BACKEND = "cython"

# rows are divided by their content once an entry passes this bound
cdef int64_t _GROWTH = 1 << 24


cdef inline int64_t _abs(int64_t x):
    return -x if x < 0 else x


cdef int64_t _gcd(int64_t a, int64_t b):
    cdef int64_t t
    a = _abs(a)
    b = _abs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _primitive(int64_t[::1] row) except -1:
    cdef Py_ssize_t k, n = row.shape[0]
    cdef int64_t g = 0
    for k in range(n):
        if row[k]:
            g = _gcd(g, row[k])
            if g == 1:
                return 0
    if g > 1:
        for k in range(n):
            row[k] = row[k] // g
    return 0


cdef int64_t _maxabs(int64_t[::1] row):
    cdef Py_ssize_t k
    cdef int64_t m = 0, a
    for k in range(row.shape[0]):
        a = _abs(row[k])
        if a > m:
            m = a
    return m


def rref(a):
    """Fraction-free Gauss-Jordan elimination; see ``_kernels_py.rref``."""
    arr = np.array(a, dtype=np.int64, order="C", copy=True)
    if arr.ndim != 2 or arr.shape[0] == 0:
        return arr.reshape(0, arr.shape[-1] if arr.ndim == 2 else 0), []
    cdef int64_t[:, ::1] A = arr
    cdef Py_ssize_t nrows = A.shape[0], ncols = A.shape[1]
    cdef Py_ssize_t i, k, c, best, rank = 0
    cdef int64_t p, f, t
    for i in range(nrows):
        _primitive(A[i])
    pivots = []
    for c in range(ncols):
        if rank == nrows:
            break
        best = -1
        for i in range(rank, nrows):
            if A[i, c] and (best < 0 or _abs(A[i, c]) < _abs(A[best, c])):
                best = i
        if best < 0:
            continue
        if best != rank:
            for k in range(ncols):
                t = A[rank, k]
                A[rank, k] = A[best, k]
                A[best, k] = t
        if A[rank, c] < 0:
            for k in range(ncols):
                A[rank, k] = -A[rank, k]
        p = A[rank, c]
        for i in range(nrows):
            if i == rank:
                continue
            f = A[i, c]
            if f:
                for k in range(ncols):
                    A[i, k] = p * A[i, k] - f * A[rank, k]
                _primitive(A[i])
        pivots.append(c)
        rank += 1
    return arr[:rank].copy(), pivots


cdef int _insert(int64_t[:, ::1] B, int64_t[::1] piv, Py_ssize_t rank,
                 int64_t[::1] w) except -1:
    """Reduce ``w`` against the first ``rank`` rows; return 1 if appended."""
    cdef Py_ssize_t r, k, n = w.shape[0], pc
    cdef int64_t f, p
    for r in range(rank):
        pc = piv[r]
        f = w[pc]
        if f:
            p = B[r, pc]
            for k in range(n):
                w[k] = p * w[k] - f * B[r, k]
            if _maxabs(w) > _GROWTH:
                _primitive(w)
    pc = -1
    for k in range(n):
        if w[k]:
            pc = k
            break
    if pc < 0:
        return 0
    _primitive(w)
    if w[pc] < 0:
        for k in range(n):
            w[k] = -w[k]
    for k in range(n):
        B[rank, k] = w[k]
    piv[rank] = pc
    return 1


def spin(gens, seed):
    """Spinning closure of ``seed`` under ``gens``; see ``_kernels_py.spin``."""
    G_arr = np.ascontiguousarray(gens, dtype=np.int64)
    s_arr = np.array(seed, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t n = s_arr.shape[0]
    if G_arr.size == 0:
        G_arr = np.zeros((0, n, n), dtype=np.int64)
    cdef int64_t[:, :, ::1] G = G_arr
    cdef int64_t[::1] s = s_arr
    B_arr = np.zeros((n, n), dtype=np.int64)
    piv_arr = np.zeros(n, dtype=np.int64)
    w_arr = np.zeros(n, dtype=np.int64)
    nz_arr = np.zeros(n, dtype=np.intp)
    cdef int64_t[:, ::1] B = B_arr
    cdef int64_t[::1] piv = piv_arr
    cdef int64_t[::1] w = w_arr
    cdef Py_ssize_t[::1] nz = nz_arr
    cdef Py_ssize_t ngen = G.shape[0], rank = 0, i = 0, g, r, k, q, nnz
    cdef int64_t x
    rank += _insert(B, piv, rank, s)
    while i < rank and rank < n:
        nnz = 0
        for k in range(n):
            if B[i, k]:
                nz[nnz] = k
                nnz += 1
        for g in range(ngen):
            for r in range(n):
                x = 0
                for q in range(nnz):
                    k = nz[q]
                    if G[g, r, k]:
                        x += G[g, r, k] * B[i, k]
                w[r] = x
            rank += _insert(B, piv, rank, w)
            if rank == n:
                break
        i += 1
    return B_arr[:rank].copy()


cdef int64_t _powmod(int64_t a, int64_t e, int64_t p):
    cdef int64_t r = 1
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


def spin_rank_mod(gens, seed, int64_t p):
    """Rank over GF(p) of the spinning closure; see ``_kernels_py.spin_rank_mod``."""
    if p >= (1 << 31):
        raise ValueError("modulus must be below 2**31")
    G_arr = np.ascontiguousarray(np.mod(gens, p), dtype=np.int64)
    s_arr = np.ascontiguousarray(np.mod(seed, p), dtype=np.int64)
    cdef Py_ssize_t n = s_arr.shape[0]
    if G_arr.size == 0:
        G_arr = np.zeros((0, n, n), dtype=np.int64)
    cdef int64_t[:, :, ::1] G = G_arr
    B_arr = np.zeros((n, n), dtype=np.int64)
    piv_arr = np.zeros(n, dtype=np.intp)
    w_arr = np.zeros(n, dtype=np.int64)
    nz_arr = np.zeros(n, dtype=np.intp)
    cdef int64_t[:, ::1] B = B_arr
    cdef Py_ssize_t[::1] piv = piv_arr
    cdef int64_t[::1] w = w_arr
    cdef int64_t[::1] s = s_arr
    cdef Py_ssize_t[::1] nz = nz_arr
    cdef Py_ssize_t ngen = G.shape[0], rank = 0, i = 0, g, r, k, q, nnz
    cdef int64_t x
    for k in range(n):
        w[k] = s[k]
    rank += _insert_mod(B, piv, rank, w, p)
    while i < rank and rank < n:
        nnz = 0
        for k in range(n):
            if B[i, k]:
                nz[nnz] = k
                nnz += 1
        for g in range(ngen):
            for r in range(n):
                x = 0
                for q in range(nnz):
                    k = nz[q]
                    if G[g, r, k]:
                        x = (x + G[g, r, k] * B[i, k]) % p
                w[r] = x
            rank += _insert_mod(B, piv, rank, w, p)
            if rank == n:
                break
        i += 1
    return rank


cdef int _insert_mod(int64_t[:, ::1] B, Py_ssize_t[::1] piv, Py_ssize_t rank,
                     int64_t[::1] w, int64_t p) except -1:
    cdef Py_ssize_t r, k, n = w.shape[0], pc
    cdef int64_t f, inv
    for r in range(rank):
        f = w[piv[r]]
        if f:
            for k in range(n):
                if B[r, k]:
                    w[k] = (w[k] - f * B[r, k]) % p
                    if w[k] < 0:
                        w[k] += p
    pc = -1
    for k in range(n):
        if w[k]:
            pc = k
            break
    if pc < 0:
        return 0
    inv = _powmod(w[pc], p - 2, p)
    for k in range(n):
        B[rank, k] = w[k] * inv % p
    piv[rank] = pc
    return 1
