from itertools import combinations

import pytest

from unitalpack import cliquesearch, rng
from unitalpack.cliquesearch import pure

HAVE_KERNEL = cliquesearch._kernel is not None


def _random_graph(n, density_num, density_den, seed):
    adj = [0] * n
    bg = rng.raw_stream(seed, 99)
    words = rng.raw(bg, n * (n - 1) // 2)
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            if int(words[idx]) % density_den < density_num:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            idx += 1
    return adj


def _brute_cliques(adj, size, mask=None):
    n = len(adj)
    verts = [v for v in range(n) if mask is None or (mask >> v) & 1]
    out = []
    for combo in combinations(verts, size):
        if all((adj[u] >> v) & 1 for u, v in combinations(combo, 2)):
            out.append(combo)
    return out


def test_pure_enumeration_matches_itertools_oracle():
    for seed in range(6):
        adj = _random_graph(11, 1, 2, seed)
        for size in (2, 3, 4):
            assert pure.enumerate_cliques(adj, size) == _brute_cliques(adj, size)


def test_pure_find_returns_lexicographic_first():
    for seed in range(6):
        adj = _random_graph(10, 2, 3, seed)
        for size in (2, 3, 4):
            all_cliques = _brute_cliques(adj, size)
            assert pure.find_clique(adj, size) == (all_cliques[0] if all_cliques else None)


def test_mask_restriction():
    adj = cliquesearch.adj_from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
    assert pure.find_clique(adj, 3) == (0, 1, 2)
    m = cliquesearch.mask_of([3, 4, 5])
    assert pure.find_clique(adj, 3, m) == (3, 4, 5)
    assert pure.enumerate_cliques(adj, 3) == [(0, 1, 2), (3, 4, 5)]


def test_trivial_sizes():
    adj = [0, 0, 0]
    assert pure.find_clique(adj, 0) == ()
    assert pure.enumerate_cliques(adj, 0) == [()]
    assert pure.enumerate_cliques(adj, 1) == [(0,), (1,), (2,)]
    assert pure.find_clique(adj, 2) is None
    assert pure.find_clique([], 1) is None


@pytest.mark.skipif(not HAVE_KERNEL, reason="compiled kernel not built")
def test_kernel_agrees_with_pure():
    from unitalpack.cliquesearch import _kernel, _pack

    for seed in range(8):
        for n in (5, 40, 70, 130):
            adj = _random_graph(n, 1, 2, seed)
            for size in (3, 4):
                arr, m = _pack(adj, None)
                assert _kernel.find_clique(arr, size, m) == pure.find_clique(adj, size)
                assert _kernel.enumerate_cliques(arr, size, m) == pure.enumerate_cliques(adj, size)
            submask = cliquesearch.mask_of(range(0, n, 2))
            arr, m = _pack(adj, submask)
            assert _kernel.find_clique(arr, 3, m) == pure.find_clique(adj, 3, submask)


@pytest.mark.skipif(not HAVE_KERNEL, reason="compiled kernel not built")
def test_kernel_word_boundary_vertices():
    # cliques straddling the 64-bit word boundary
    from unitalpack.cliquesearch import _kernel, _pack

    edges = [(62, 63), (62, 64), (62, 65), (63, 64), (63, 65), (64, 65)]
    adj = cliquesearch.adj_from_edges(70, edges)
    arr, m = _pack(adj, None)
    assert _kernel.find_clique(arr, 4, m) == (62, 63, 64, 65)
    assert _kernel.enumerate_cliques(arr, 4, m) == [(62, 63, 64, 65)]


def test_dispatcher_and_helpers():
    adj = cliquesearch.adj_from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert cliquesearch.find_clique(adj, 3) == (0, 1, 2)
    assert cliquesearch.enumerate_cliques(adj, 3) == [(0, 1, 2)]
    assert cliquesearch.bits_of(cliquesearch.mask_of([4, 1])) == (1, 4)
    assert cliquesearch.ACTIVE in ("pure", "compiled")


def test_turan_graph_has_expected_cliques():
    from unitalpack.bounds import turan_graph

    adj = turan_graph(30, 3)
    assert cliquesearch.find_clique(adj, 3) is not None
    assert cliquesearch.find_clique(adj, 4) is None
