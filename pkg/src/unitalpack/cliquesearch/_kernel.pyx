# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled clique-search kernels.

Contract identical to pure.py: adjacency rows are little-endian uint64
words, vertices are walked in ascending order, cliques come back as
sorted tuples in lexicographic order.
"""

from libc.stdint cimport int64_t, uint64_t

import numpy as np


cdef extern from *:
    """
    #include <stdint.h>
    static inline int upk_popcount(uint64_t x){ return __builtin_popcountll(x); }
    static inline int upk_ctz(uint64_t x){ return __builtin_ctzll(x); }
    """
    int upk_popcount(uint64_t x) nogil
    int upk_ctz(uint64_t x) nogil


cdef int _count(const uint64_t* w, int W) nogil:
    cdef int i, c = 0
    for i in range(W):
        c += upk_popcount(w[i])
    return c


cdef bint _find_rec(const uint64_t* adj, int W,
                    uint64_t* cand_stack, uint64_t* iter_stack,
                    int64_t* prefix, int need, int depth) nogil:
    cdef uint64_t* cand = cand_stack + depth * W
    cdef uint64_t* m = iter_stack + depth * W
    cdef uint64_t* child = cand_stack + (depth + 1) * W
    cdef uint64_t low
    cdef int i, wi, v
    if need == 0:
        return True
    if _count(cand, W) < need:
        return False
    for i in range(W):
        m[i] = cand[i]
    for wi in range(W):
        while m[wi]:
            low = m[wi] & (0 - m[wi])
            v = wi * 64 + upk_ctz(m[wi])
            m[wi] ^= low
            prefix[depth] = v
            if need == 1:
                return True
            for i in range(W):
                child[i] = cand[i] & adj[v * W + i]
            for i in range(wi):
                child[i] = 0
            child[wi] &= ~((low << 1) - 1)
            if _find_rec(adj, W, cand_stack, iter_stack, prefix, need - 1, depth + 1):
                return True
    return False


cdef void _enum_rec(const uint64_t* adj, int W,
                    uint64_t* cand_stack, uint64_t* iter_stack,
                    int64_t* prefix, int need, int depth, int size, list out):
    cdef uint64_t* cand = cand_stack + depth * W
    cdef uint64_t* m = iter_stack + depth * W
    cdef uint64_t* child = cand_stack + (depth + 1) * W
    cdef uint64_t low
    cdef int i, wi, v
    if need == 0:
        out.append(tuple([prefix[i] for i in range(size)]))
        return
    if _count(cand, W) < need:
        return
    for i in range(W):
        m[i] = cand[i]
    for wi in range(W):
        while m[wi]:
            low = m[wi] & (0 - m[wi])
            v = wi * 64 + upk_ctz(m[wi])
            m[wi] ^= low
            prefix[depth] = v
            for i in range(W):
                child[i] = cand[i] & adj[v * W + i]
            for i in range(wi):
                child[i] = 0
            child[wi] &= ~((low << 1) - 1)
            _enum_rec(adj, W, cand_stack, iter_stack, prefix, need - 1, depth + 1, size, out)


def find_clique(uint64_t[:, ::1] adj, int size, uint64_t[::1] mask):
    cdef int W = adj.shape[1]
    if size <= 0:
        return ()
    cand_np = np.zeros(((size + 1) * W,), dtype=np.uint64)
    iter_np = np.zeros(((size + 1) * W,), dtype=np.uint64)
    prefix_np = np.zeros((size,), dtype=np.int64)
    cdef uint64_t[::1] cand_stack = cand_np
    cdef uint64_t[::1] iter_stack = iter_np
    cdef int64_t[::1] prefix = prefix_np
    cdef int i
    for i in range(W):
        cand_stack[i] = mask[i]
    if adj.shape[0] == 0:
        return None
    if _find_rec(&adj[0, 0], W, &cand_stack[0], &iter_stack[0], &prefix[0], size, 0):
        return tuple([int(prefix[i]) for i in range(size)])
    return None


def enumerate_cliques(uint64_t[:, ::1] adj, int size, uint64_t[::1] mask):
    cdef int W = adj.shape[1]
    if size <= 0:
        return [()]
    out: list = []
    cand_np = np.zeros(((size + 1) * W,), dtype=np.uint64)
    iter_np = np.zeros(((size + 1) * W,), dtype=np.uint64)
    prefix_np = np.zeros((size,), dtype=np.int64)
    cdef uint64_t[::1] cand_stack = cand_np
    cdef uint64_t[::1] iter_stack = iter_np
    cdef int64_t[::1] prefix = prefix_np
    cdef int i
    for i in range(W):
        cand_stack[i] = mask[i]
    if adj.shape[0] == 0:
        return out
    _enum_rec(&adj[0, 0], W, &cand_stack[0], &iter_stack[0], &prefix[0], size, 0, size, out)
    return out
