"""Pure-Python clique-search kernels over bitset adjacency.

Adjacency is a list of ints: bit v of adj[u] is set iff uv is an edge.
The compiled kernel (_kernel.pyx) implements the identical contract, so
results are interchangeable bit for bit: both walk vertices in ascending
order and return cliques as sorted tuples in lexicographic order.
"""

from __future__ import annotations


def _find(adj, cand: int, need: int, prefix: tuple) -> tuple | None:
    if need == 0:
        return prefix
    if cand.bit_count() < need:
        return None
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        if need == 1:
            return prefix + (v,)
        r = _find(adj, cand & adj[v] & -(low << 1), need - 1, prefix + (v,))
        if r is not None:
            return r
    return None


def _enum(adj, cand: int, need: int, prefix: tuple, out: list) -> None:
    if need == 0:
        out.append(prefix)
        return
    if cand.bit_count() < need:
        return
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        _enum(adj, cand & adj[v] & -(low << 1), need - 1, prefix + (v,), out)


def find_clique(adj: list[int], size: int, mask: int | None = None) -> tuple | None:
    """Lexicographically first `size`-clique inside `mask`, or None."""
    n = len(adj)
    if mask is None:
        mask = (1 << n) - 1
    else:
        mask &= (1 << n) - 1
    if size <= 0:
        return ()
    return _find(adj, mask, size, ())


def enumerate_cliques(adj: list[int], size: int, mask: int | None = None) -> list[tuple]:
    """All `size`-cliques inside `mask`, sorted tuples in lexicographic order."""
    n = len(adj)
    if mask is None:
        mask = (1 << n) - 1
    else:
        mask &= (1 << n) - 1
    if size <= 0:
        return [()]
    out: list[tuple] = []
    _enum(adj, mask, size, (), out)
    return out
