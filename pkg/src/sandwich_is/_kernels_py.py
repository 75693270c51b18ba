"""Numpy implementations of the hot kernels.

Used when the compiled ``_kernels_c`` extension is missing or when
``SANDWICH_IS_PURE=1`` is set. Signatures and results must match the
Cython versions exactly.
"""

import numpy as np


def product_table(images, e_images, lookup):
    """Table of ``a_i * e * a_j`` as canonical indices.

    ``images`` is the (m, n) image matrix, ``e_images`` the image tuple of
    the sandwich element and ``lookup`` maps base-(n+1) codes to indices.
    """
    images = np.asarray(images, dtype=np.int64)
    m, n = images.shape
    e_ext = np.concatenate(([0], np.asarray(e_images, dtype=np.int64)))
    through_e = e_ext[images]                              # (m, n): a_i then e
    right = np.concatenate((np.zeros((m, 1), np.int64), images), axis=1)
    prod = right[:, through_e]                             # (m_j, m_i, n)
    powers = (n + 1) ** np.arange(n, dtype=np.int64)
    codes = prod @ powers
    return np.ascontiguousarray(np.asarray(lookup)[codes].T, dtype=np.int32)


def check_morphism(t1, t2, perm):
    """True iff ``perm[t1[i, j]] == t2[perm[i], perm[j]]`` for all i, j."""
    t1 = np.asarray(t1)
    t2 = np.asarray(t2)
    perm = np.asarray(perm, dtype=np.intp)
    return bool(np.array_equal(perm[t1], t2[np.ix_(perm, perm)]))


_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def mix64(z):
    """splitmix64 finaliser on a uint64 array (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def pair_codes(table, colors, ncolors):
    """Per-pair invariant codes used by colour refinement.

    Entry (i, x) packs the colours of x, i*x and x*i together with four
    equality bits (i*x == i, i*x == x, x*i == i, x*i == x).
    """
    t = np.asarray(table, dtype=np.int64)
    c = np.asarray(colors, dtype=np.int64)
    m = t.shape[0]
    idx = np.arange(m)
    tt = t.T
    bits = (
        (t == idx[:, None]).astype(np.int64)
        | (t == idx[None, :]).astype(np.int64) << 1
        | (tt == idx[:, None]).astype(np.int64) << 2
        | (tt == idx[None, :]).astype(np.int64) << 3
    )
    return ((c[None, :] * ncolors + c[t]) * ncolors + c[tt]) * 16 + bits


def row_hashes(table, colors, ncolors):
    """Order-independent hash of each row of :func:`pair_codes` (sum of mixed codes)."""
    with np.errstate(over="ignore"):
        return mix64(pair_codes(table, colors, ncolors).astype(np.uint64)).sum(axis=1, dtype=np.uint64)
