from itertools import combinations

import pytest

from unitalpack import rng
from unitalpack.coloring import sample_coloring
from unitalpack.geometry import StructuralViolationError
from unitalpack.pattern import (
    CliqueKind,
    QualityError,
    build_pattern,
    classify_kplus1_clique,
    count_fans_through_edge,
    enumerate_kplus1,
    export_graph,
    import_graph,
    verify_pattern,
)


def test_single_color_shape(pattern3):
    assert len(pattern3.point_cliques) == 27
    assert {len(pc.members) for pc in pattern3.point_cliques} == {9}
    assert pattern3.edge_count == 27 * 36  # 27 cliques, C(9,2) pairs each


def test_quality_gate(pencil3):
    bad = sample_coloring(pencil3, 2, 0)  # no quality 2-coloring exists at q=3
    with pytest.raises(QualityError):
        build_pattern(pencil3, bad)
    graphs = build_pattern(pencil3, bad, relaxed=True)
    assert len(graphs) == 2


def test_edges_match_intersection_colors(pencil3):
    """Independent oracle: recompute every edge from raw line intersections."""
    coloring = sample_coloring(pencil3, 2, 0)
    graphs = build_pattern(pencil3, coloring, relaxed=True)
    plane = pencil3.plane
    lpos = {lid: i for i, lid in enumerate(pencil3.L_ids)}
    expected = {color: set() for color in range(coloring.m)}
    for l1, l2 in combinations(pencil3.L_ids, 2):
        pid = plane.intersection_id(l1, l2)
        color = coloring.assignment.get(pid)
        if color is not None:
            a, b = sorted((lpos[l1], lpos[l2]))
            expected[color].add((a, b))
    for g in graphs:
        assert set(g.edges) == expected[g.color]


def test_cross_color_edge_disjointness(pencil3):
    coloring = sample_coloring(pencil3, 2, 3)
    graphs = build_pattern(pencil3, coloring, relaxed=True)
    seen = set()
    for g in graphs:
        es = set(g.edges)
        assert not es & seen
        seen |= es
    # total matches the number of L-pairs meeting inside P
    plane = pencil3.plane
    total = sum(
        (plane.point_lines[pid] & pencil3.L_mask).bit_count()
        * ((plane.point_lines[pid] & pencil3.L_mask).bit_count() - 1)
        // 2
        for pid in pencil3.P_ids
    )
    assert len(seen) == total


def test_every_edge_in_exactly_one_clique(pattern3):
    counts = {e: 0 for e in pattern3.edges}
    for pc in pattern3.point_cliques:
        for pair in combinations(pc.members, 2):
            counts[pair] += 1
    assert set(counts.values()) == {1}


def test_vertex_membership_equals_line_color_count(pencil3, pattern3):
    plane = pencil3.plane
    cmask = 0
    for pc in pattern3.point_cliques:
        cmask |= 1 << pc.point_id
    for v, lid in enumerate(pencil3.L_ids):
        assert pattern3.membership(v) == (plane.line_points[lid] & cmask).bit_count()


def test_verify_pattern_certificate(pencil3, pattern3):
    cert = verify_pattern([pattern3], pencil3)
    assert cert.passed and cert.all_passed
    names = {r.check for r in cert.checks}
    assert "color-0/point-clique-maximality" in names
    assert "edge-total-matches-meeting-pairs" in names


def test_maximality_violation_detected():
    # synthetic graph: a triangle assembled from three 2-cliques, so each
    # 2-clique extends to the triangle and fails maximality
    from unitalpack.pattern import PatternGraph, PointClique

    cliques = [PointClique(10, (0, 1)), PointClique(11, (1, 2)), PointClique(12, (0, 2))]
    g = PatternGraph(color=0, q=3, c=1, n=3, line_ids=(0, 1, 2), point_cliques=cliques)
    cert = verify_pattern([g])
    maxim = next(r for r in cert.checks if r.check.endswith("maximality"))
    assert not maxim.passed
    assert maxim.details["violations"]


def test_classify_degenerate(pattern3):
    four = pattern3.point_cliques[0].members[:4]
    w = classify_kplus1_clique(pattern3, four)
    assert w.kind is CliqueKind.DEGENERATE
    assert w.point_id == pattern3.point_cliques[0].point_id
    assert w.core == tuple(sorted(four))


def test_classify_fan_spine_plus_transversal(pattern3):
    # find a fan directly: 3 spine vertices in one clique + common neighbor
    for pc in pattern3.point_cliques:
        for spine in combinations(pc.members, 3):
            m = pattern3.adj[spine[0]] & pattern3.adj[spine[1]] & pattern3.adj[spine[2]]
            cm = pattern3.clique_mask(pattern3.point_cliques.index(pc))
            m &= ~cm
            if m:
                t = (m & -m).bit_length() - 1
                w = classify_kplus1_clique(pattern3, spine + (t,))
                assert w.kind is CliqueKind.FAN
                assert set(w.core) == set(spine)
                assert w.point_id == pc.point_id
                return
    raise AssertionError("no fan found")


def test_classify_rejects_non_clique(pattern3):
    a, b = pattern3.edges[0]
    outside = next(
        v for v in range(pattern3.n) if not pattern3.has_edge(a, v) and v not in (a, b)
    )
    with pytest.raises(ValueError, match="not a K"):
        classify_kplus1_clique(pattern3, (a, b, outside, (outside + 1) % pattern3.n))
    with pytest.raises(ValueError):
        classify_kplus1_clique(pattern3, (a, b, b))


def test_exhaustive_k4_classification_q3(pattern3):
    kinds = {CliqueKind.FAN: 0, CliqueKind.DEGENERATE: 0}
    for s in enumerate_kplus1(pattern3, 3):
        kinds[classify_kplus1_clique(pattern3, s).kind] += 1
    # frozen from the fixture: 27 * C(9,4) degenerate K_4s plus the fans
    assert kinds[CliqueKind.DEGENERATE] == 27 * 126
    assert kinds[CliqueKind.FAN] == 5184
    assert sum(kinds.values()) == 8586


@pytest.mark.parametrize("q,c", [(2, 1), (2, 2), (3, 2)])
def test_exhaustive_k4_classification_small(q, c):
    from unitalpack.pencil import build_pencil

    pencil = build_pencil(q, 1)
    for seed in (0, 1):
        coloring = sample_coloring(pencil, c, seed)
        for g in build_pattern(pencil, coloring, relaxed=True):
            for s in enumerate_kplus1(g, 3):
                classify_kplus1_clique(g, s)  # raises on any violation


def _brute_fans_through_edge(g, edge, k):
    a, b = edge
    common = g.adj[a] & g.adj[b]
    vs = []
    m = common
    while m:
        low = m & -m
        vs.append(low.bit_length() - 1)
        m ^= low
    cnt = 0
    for extra in combinations(vs, k - 1):
        s = (a, b) + extra
        if all(g.has_edge(u, v) for u, v in combinations(s, 2)):
            if classify_kplus1_clique(g, s).kind is CliqueKind.FAN:
                cnt += 1
    return cnt


def test_fan_counts_match_brute_force_on_100_sampled_edges(pattern3):
    bg = rng.raw_stream(2024, rng.EDGEPICK)
    picks = rng.ints_mod(bg, 100, pattern3.edge_count)
    bound = 2 * (2 * 3 // 1) ** 3
    for i in picks:
        e = pattern3.edges[i]
        fc = count_fans_through_edge(pattern3, e, 3)
        assert fc.total == _brute_fans_through_edge(pattern3, e, 3)
        assert fc.total <= bound
        assert fc.total == fc.at_edge_point + fc.at_other_point


def test_fan_count_zero_when_k_exceeds_clique_sizes(pattern3):
    e = pattern3.edges[0]
    assert count_fans_through_edge(pattern3, e, 10).total == 0


def test_fan_count_input_validation(pattern3):
    with pytest.raises(ValueError, match="not in graph"):
        count_fans_through_edge(pattern3, (0, 0), 3)
    with pytest.raises(ValueError, match="k must be"):
        count_fans_through_edge(pattern3, pattern3.edges[0], 2)


def test_exhaustive_k5_classification_q3(pattern3):
    # k = 4: every K_5 also classifies as fan or degenerate
    kinds = {CliqueKind.FAN: 0, CliqueKind.DEGENERATE: 0}
    for s in enumerate_kplus1(pattern3, 4):
        w = classify_kplus1_clique(pattern3, s)
        kinds[w.kind] += 1
        if w.kind is CliqueKind.FAN:
            assert len(w.core) == 4
    assert kinds[CliqueKind.DEGENERATE] == 27 * 126  # 27 cliques, C(9,5) each
    assert kinds[CliqueKind.FAN] > 0


def test_fan_counts_match_brute_force_q5(pattern5):
    # larger cliques (19 vertices), two colors sampled, k in {3, 4}
    for g in pattern5[:2]:
        for k in (3, 4):
            for e in g.edges[:10]:
                fc = count_fans_through_edge(g, e, k)
                assert fc.total == _brute_fans_through_edge(g, e, k)
                assert fc.total <= 2 * (2 * 5 // 2) ** k


def test_isolated_vertices_stay_in_vertex_set(pencil3):
    # a color used on few points leaves some of L untouched; the graph keeps
    # all of L as vertices regardless
    coloring = sample_coloring(pencil3, 2, 1)
    graphs = build_pattern(pencil3, coloring, relaxed=True)
    for g in graphs:
        assert g.n == 63
        assert len(g.adj) == 63


def test_malformed_sidecar_members_rejected():
    from unitalpack.pattern import PatternGraph, PointClique

    with pytest.raises(ValueError, match="strictly increasing"):
        PatternGraph(color=0, q=3, c=1, n=4, line_ids=(0, 1, 2, 3),
                     point_cliques=[PointClique(0, (1, 1, 2))])
    with pytest.raises(ValueError, match="out-of-range"):
        PatternGraph(color=0, q=3, c=1, n=4, line_ids=(0, 1, 2, 3),
                     point_cliques=[PointClique(0, (2, 7))])


def test_export_import_roundtrip(tmp_path, pattern3):
    e, s = tmp_path / "g.edges", tmp_path / "g.cliques.json"
    export_graph(pattern3, e, s)
    g = import_graph(e, s)
    assert g.edges == pattern3.edges
    assert g.point_cliques == pattern3.point_cliques
    assert g.content_hash() == pattern3.content_hash()
    # tampered edge file is rejected
    rows = e.read_text().splitlines()
    e.write_text("\n".join(rows[:-1]) + "\n")
    with pytest.raises(ValueError, match="disagrees"):
        import_graph(e, s)


def test_classification_violation_is_trapped(pattern3):
    # a K_4 taken across cliques with the witness clique removed must trip
    # the structural trap rather than return nonsense
    from unitalpack.pattern import PatternGraph, PointClique

    for s in enumerate_kplus1(pattern3, 3):
        w = classify_kplus1_clique(pattern3, s)
        if w.kind is CliqueKind.FAN:
            fan = s
            break
    cliques = []
    for pc in pattern3.point_cliques:
        if len(set(pc.members) & set(fan)) >= 3:
            keep = tuple(v for v in pc.members if v not in fan[:1])
            cliques.append(PointClique(pc.point_id, keep))
        else:
            cliques.append(PointClique(pc.point_id, pc.members))
    g = PatternGraph(color=0, q=3, c=1, n=pattern3.n,
                     line_ids=pattern3.line_ids, point_cliques=cliques)
    if all(g.has_edge(u, v) for u, v in combinations(fan, 2)):
        with pytest.raises(StructuralViolationError):
            classify_kplus1_clique(g, fan)
