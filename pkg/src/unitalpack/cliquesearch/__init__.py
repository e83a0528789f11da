"""Clique-search kernels: compiled extension when available, pure Python
otherwise.

Both implementations share one contract (see pure.py); which one runs
never changes any result, only the speed.  Set UNITALPACK_PURE=1 to force
the fallback, e.g. for benchmarking.

Repeated searches over one graph should go through ``prepare``: the
compiled kernel wants the adjacency as a packed word matrix, and packing
once instead of per call is what makes many small queries (say, hundreds
of subset searches) cheap.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

try:
    from . import _kernel
except ImportError:
    _kernel = None

_FORCE_PURE = bool(os.environ.get("UNITALPACK_PURE"))
ACTIVE = "pure" if (_FORCE_PURE or _kernel is None) else "compiled"


class PreparedGraph:
    """An adjacency list with its packed word matrix, built once."""

    __slots__ = ("adj", "n", "words", "wordcount")

    def __init__(self, adj: list[int], pack: bool | None = None):
        self.adj = adj
        self.n = len(adj)
        self.wordcount = max(1, (self.n + 63) // 64)
        if pack is None:
            pack = ACTIVE == "compiled"
        if pack and self.n:
            arr = np.empty((self.n, self.wordcount), dtype=np.uint64)
            for v, bits in enumerate(adj):
                arr[v] = np.frombuffer(
                    int(bits).to_bytes(self.wordcount * 8, "little"), dtype="<u8"
                )
            self.words = arr
        else:
            self.words = None


def prepare(adj) -> PreparedGraph:
    return adj if isinstance(adj, PreparedGraph) else PreparedGraph(adj)


def _pack_mask(g: PreparedGraph, mask: int | None):
    full = (1 << g.n) - 1
    mask = full if mask is None else (mask & full)
    return np.frombuffer(int(mask).to_bytes(g.wordcount * 8, "little"), dtype="<u8").copy()


def _pack(adj: list[int], mask: int | None):
    g = PreparedGraph(adj, pack=True)
    return g.words, _pack_mask(g, mask)


def find_clique(adj, size: int, mask: int | None = None) -> tuple | None:
    """First `size`-clique (sorted tuple, lexicographic order) inside `mask`."""
    g = adj if isinstance(adj, PreparedGraph) else None
    if ACTIVE == "compiled" and (g.n if g else len(adj)):
        g = g or PreparedGraph(adj)
        return _kernel.find_clique(g.words, size, _pack_mask(g, mask))
    return pure.find_clique(g.adj if g else adj, size, mask)


def enumerate_cliques(adj, size: int, mask: int | None = None) -> list[tuple]:
    """All `size`-cliques inside `mask`, in lexicographic order."""
    g = adj if isinstance(adj, PreparedGraph) else None
    if ACTIVE == "compiled" and (g.n if g else len(adj)):
        g = g or PreparedGraph(adj)
        return _kernel.enumerate_cliques(g.words, size, _pack_mask(g, mask))
    return pure.enumerate_cliques(g.adj if g else adj, size, mask)


def adj_from_edges(n: int, edges) -> list[int]:
    """Bitset adjacency from an iterable of (u, v) pairs."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> tuple[int, ...]:
    """Set bit positions of `mask`, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)
