import math

import pytest

from unitalpack import cliquesearch
from unitalpack.bounds import (
    NotCliqueFreeError,
    ceil_half_sqrt,
    kfree_subset,
    lower_bound_table,
    turan_graph,
)
from unitalpack.sparsify import SparsifyParams, sparsify


def test_ceil_half_sqrt_exact():
    for x in range(0, 4000):
        assert ceil_half_sqrt(x) == math.ceil(math.sqrt(x) / 2)


def test_turan_graph_structure():
    adj = turan_graph(10, 3)
    # parts 4,3,3: degrees 6,6,6,7,7,7,7,7,7... vertex in the big part has degree 6
    assert adj[0].bit_count() == 6
    assert adj[9].bit_count() == 7
    assert cliquesearch.find_clique(adj, 4) is None


@pytest.mark.parametrize("n", [50, 100, 200])
@pytest.mark.parametrize("k", [3, 4])
def test_kfree_subset_on_turan_graphs(n, k):
    adj = turan_graph(n, k)
    vs = kfree_subset(adj, k, seed=5)
    assert len(vs) >= ceil_half_sqrt(k * n)
    # independent verification: exhaustive search finds no K_k inside
    assert cliquesearch.find_clique(adj, k, cliquesearch.mask_of(vs)) is None


def test_kfree_subset_rejects_clique_bearing_input():
    adj = cliquesearch.adj_from_edges(6, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    with pytest.raises(NotCliqueFreeError) as info:
        kfree_subset(adj, 3, seed=1)
    assert info.value.witness == (0, 1, 2, 3)


def test_kfree_subset_edgeless():
    assert kfree_subset([0] * 30, 3, seed=0) == (0, 1, 2, 3, 4)  # ceil(sqrt(90)/2) = 5


def test_kfree_subset_on_sparsified_pattern(pattern3):
    sp = sparsify(pattern3, SparsifyParams(k=3, alpha=0.5, seed=0))
    assert cliquesearch.find_clique(sp.adj, 4) is None  # fixture seed is K_4-free
    vs = kfree_subset(sp.adj, 3, seed=17)
    assert len(vs) >= ceil_half_sqrt(3 * sp.n)  # >= 7 on 63 vertices
    assert cliquesearch.find_clique(sp.adj, 3, cliquesearch.mask_of(vs)) is None


def test_kfree_subset_sampling_branch():
    # sparse ring-of-triangles graph: max degree too small for the
    # neighborhood branch, so the sampling loop runs
    n = 120
    edges = []
    for i in range(0, n, 3):
        edges += [(i, i + 1), (i + 1, i + 2), (i, i + 2)]
    adj = cliquesearch.adj_from_edges(n, edges)
    assert max(a.bit_count() for a in adj) == 2
    target = ceil_half_sqrt(3 * n)  # 10
    vs = kfree_subset(adj, 3, seed=3)
    assert len(vs) >= target
    assert cliquesearch.find_clique(adj, 3, cliquesearch.mask_of(vs)) is None


def test_kfree_subset_determinism(pattern3):
    sp = sparsify(pattern3, SparsifyParams(k=3, alpha=0.5, seed=0))
    assert kfree_subset(sp.adj, 3, seed=17) == kfree_subset(sp.adj, 3, seed=17)


def test_kfree_subset_validation():
    with pytest.raises(ValueError):
        kfree_subset([0] * 5, 2, seed=0)
    assert kfree_subset([], 3, seed=0) == ()


def test_lower_bound_table_base_case():
    tb = lower_bound_table(3, 3)
    assert tb.rows == [(3, 2, 9)]  # ceil(27/16)=2 but the two-color value 9 wins


def test_lower_bound_table_recursion_row():
    tb = lower_bound_table(4, 4)
    # from 16: smallest P with P - ceil(sqrt(4P)/2) >= 16 is 21
    assert tb.rows == [(3, 3, 16), (4, 4, 21)]


def test_lower_bound_recursion_minimality():
    # each row is the smallest value satisfying the implicit inequality
    for k in (3, 4, 5):
        tb = lower_bound_table(k, 8)
        prev = k * k
        for r, _, rec in tb.rows[1:]:
            assert rec - ceil_half_sqrt(k * rec) >= prev
            assert (rec - 1) - ceil_half_sqrt(k * (rec - 1)) < prev
            prev = rec


def test_lower_bound_table_monotone_and_dominant():
    for k in range(3, 21):
        tb = lower_bound_table(k, 20)
        values = [rv for _, _, rv in tb.rows]
        assert values == sorted(values)
        assert tb.recursion_dominates()


def test_lower_bound_table_csv():
    text = lower_bound_table(3, 5).to_csv()
    rows = text.strip().split("\n")
    assert rows[0] == "r,closed_form,recursion_value"
    assert rows[1] == "3,2,9"
    assert len(rows) == 4


def test_lower_bound_table_validation():
    with pytest.raises(ValueError):
        lower_bound_table(2, 5)
    with pytest.raises(ValueError):
        lower_bound_table(3, 2)
