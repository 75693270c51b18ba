# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see _kernels_py for the contracts."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef unsigned long long u64


cdef inline u64 _mix(u64 z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def product_table(images, e_images, lookup):
    cdef const int[:, ::1] a = np.ascontiguousarray(images, dtype=np.int32)
    cdef const int[::1] e = np.ascontiguousarray(e_images, dtype=np.int32)
    cdef const int[::1] lk = np.ascontiguousarray(lookup, dtype=np.int32)
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    out = np.empty((m, m), dtype=np.int32)
    cdef int[:, ::1] t = out
    cdef Py_ssize_t i, j, x
    cdef int y
    cdef long long code, w
    cdef int[16] mid
    if n > 16:
        raise ValueError("product_table supports n <= 16")
    for i in range(m):
        for x in range(n):
            y = a[i, x]
            mid[x] = e[y - 1] if y else 0
        for j in range(m):
            code = 0
            w = 1
            for x in range(n):
                y = mid[x]
                if y:
                    code += a[j, y - 1] * w
                w *= n + 1
            t[i, j] = lk[code]
    return out


def check_morphism(t1, t2, perm):
    cdef const int[:, ::1] a = np.ascontiguousarray(t1, dtype=np.int32)
    cdef const int[:, ::1] b = np.ascontiguousarray(t2, dtype=np.int32)
    cdef const long long[::1] p = np.ascontiguousarray(perm, dtype=np.int64)
    cdef Py_ssize_t m = a.shape[0], i, j
    cdef long long pi
    for i in range(m):
        pi = p[i]
        for j in range(m):
            if p[a[i, j]] != b[pi, p[j]]:
                return False
    return True


def pair_codes(table, colors, long long ncolors):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef const long long[::1] c = np.ascontiguousarray(colors, dtype=np.int64)
    cdef Py_ssize_t m = t.shape[0], i, x
    out = np.empty((m, m), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef int ix, xi
    cdef long long bits
    for i in range(m):
        for x in range(m):
            ix = t[i, x]
            xi = t[x, i]
            bits = (ix == i) | ((ix == x) << 1) | ((xi == i) << 2) | ((xi == x) << 3)
            o[i, x] = ((c[x] * ncolors + c[ix]) * ncolors + c[xi]) * 16 + bits
    return out


def row_hashes(table, colors, long long ncolors):
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef const long long[::1] c = np.ascontiguousarray(colors, dtype=np.int64)
    cdef Py_ssize_t m = t.shape[0], i, x
    out = np.empty(m, dtype=np.uint64)
    cdef u64[::1] o = out
    cdef int ix, xi
    cdef long long bits, code
    cdef u64 h
    with nogil:
        for i in range(m):
            h = 0
            for x in range(m):
                ix = t[i, x]
                xi = t[x, i]
                bits = (ix == i) | ((ix == x) << 1) | ((xi == i) << 2) | ((xi == x) << 3)
                code = ((c[x] * ncolors + c[ix]) * ncolors + c[xi]) * 16 + bits
                h += _mix(<u64>code)
            o[i] = h
    return out
