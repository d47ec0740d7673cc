# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adjacency test for the double description method."""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange

cnp.import_array()

ctypedef unsigned long long u64


cdef extern from *:
    """
    static inline int mw_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    """
    int mw_popcount(u64 x) nogil


cdef inline int _adjacent(const u64[:, ::1] Z, Py_ssize_t p, Py_ssize_t q, int min_common) noexcept nogil:
    cdef Py_ssize_t w, r, n = Z.shape[0], words = Z.shape[1]
    cdef int common = 0
    cdef u64 c
    for w in range(words):
        common += mw_popcount(Z[p, w] & Z[q, w])
    if common < min_common:
        return 0
    # p and q are adjacent iff no third ray's zero set contains Z_p & Z_q
    for r in range(n):
        if r == p or r == q:
            continue
        for w in range(words):
            c = Z[p, w] & Z[q, w]
            if (Z[r, w] & c) != c:
                break
        else:
            return 0
    return 1


def adjacent_pairs(const u64[:, ::1] Z, const long long[::1] pos, const long long[::1] neg,
                   int min_common, int n_threads=0):
    """Pairs (pos[a], neg[b]) of adjacent rays, in row-major (a, b) order."""
    cdef Py_ssize_t npos = pos.shape[0], nneg = neg.shape[0]
    cdef Py_ssize_t total = npos * nneg, k
    flags_arr = np.zeros(total, dtype=np.uint8)
    cdef unsigned char[::1] flags = flags_arr
    cdef int threads = n_threads if n_threads > 0 else 1
    if total and (total * Z.shape[0] < 20000 or n_threads == 1):
        # too little work to pay for a thread team
        for k in range(total):
            flags[k] = _adjacent(Z, pos[k // nneg], neg[k % nneg], min_common)
    elif total:
        if n_threads == 0:
            for k in prange(total, nogil=True, schedule="dynamic"):
                flags[k] = _adjacent(Z, pos[k // nneg], neg[k % nneg], min_common)
        else:
            for k in prange(total, nogil=True, schedule="dynamic", num_threads=threads):
                flags[k] = _adjacent(Z, pos[k // nneg], neg[k % nneg], min_common)
    idx = np.nonzero(flags_arr)[0]
    P = np.asarray(pos)[idx // nneg] if nneg else np.zeros(0, dtype=np.int64)
    Q = np.asarray(neg)[idx % nneg] if nneg else np.zeros(0, dtype=np.int64)
    return P.astype(np.int64), Q.astype(np.int64)
