"""Edge-disjoint graphs on the common secants, decomposed into point-cliques.

For each color i the graph has vertex set L (all common secants, kept as
isolated vertices when untouched) and an edge {l, l'} exactly when the
unique intersection point of the two secants is colored i.  Grouping
edges by their intersection point decomposes each graph into
"point-cliques": for p in P_i, the clique of all L-lines through p.  Two
point-cliques of one color share at most one vertex, every edge lies in
exactly one point-clique of its own color, and the graphs for different
colors are edge-disjoint because each line pair has one intersection
point with one color.

Every clique on k+1 >= 4 vertices in such a graph is either degenerate
(all k+1 lines through one colored point) or a (k+1)-fan: exactly k
vertices in one point-clique (k concurrent lines) plus one transversal.
classify_kplus1_clique realizes that dichotomy and treats any third
outcome as a structural violation, i.e. a bug trap.
"""

from __future__ import annotations

import hashlib
import json
from enum import Enum
from itertools import combinations
from math import comb
from typing import NamedTuple

from . import cliquesearch
from .certificates import Certificate, canonical_json
from .coloring import PointColoring, check_quality
from .geometry import StructuralViolationError
from .pencil import PencilStructure


class QualityError(RuntimeError):
    """The coloring failed its quality windows and relaxed mode is off."""


class PointClique(NamedTuple):
    point_id: int
    members: tuple[int, ...]  # ascending vertex positions in L


class CliqueKind(Enum):
    FAN = "fan"
    DEGENERATE = "degenerate"


class CliqueWitness(NamedTuple):
    vertices: tuple[int, ...]
    kind: CliqueKind
    point_id: int            # concurrence point (fan) or the clique's point
    core: tuple[int, ...]    # spine for a fan; all vertices when degenerate


class FanCount(NamedTuple):
    total: int
    at_edge_point: int       # concurrence point = the edge's own point
    at_other_point: int


class PatternGraph:
    """One color class: bitset adjacency on L plus its point-clique list."""

    def __init__(self, color, q, c, n, line_ids, point_cliques, relaxed=False):
        self.color = color
        self.q = q
        self.c = c
        self.n = n
        self.line_ids = tuple(line_ids)
        if len(self.line_ids) != n:
            raise ValueError("line_ids must label every vertex position")
        self.point_cliques = list(point_cliques)
        self.relaxed = relaxed
        self.adj = [0] * n
        self.edge_clique: dict[tuple[int, int], int] = {}
        self.vertex_cliques: list[list[int]] = [[] for _ in range(n)]
        for ci, pc in enumerate(self.point_cliques):
            if any(a >= b for a, b in zip(pc.members, pc.members[1:])):
                raise ValueError(f"point-clique {ci} members must be strictly increasing")
            if pc.members and not 0 <= pc.members[0] <= pc.members[-1] < n:
                raise ValueError(f"point-clique {ci} has out-of-range vertices")
            for v in pc.members:
                self.vertex_cliques[v].append(ci)
            for a, b in combinations(pc.members, 2):
                key = (a, b)
                if key in self.edge_clique:
                    raise StructuralViolationError(
                        f"edge {key} lies in two point-cliques of color {color}"
                    )
                self.edge_clique[key] = ci
                self.adj[a] |= 1 << b
                self.adj[b] |= 1 << a
        self.edges = tuple(sorted(self.edge_clique))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return (self.adj[a] >> b) & 1 == 1

    def membership(self, v: int) -> int:
        return len(self.vertex_cliques[v])

    def clique_mask(self, ci: int) -> int:
        m = 0
        for v in self.point_cliques[ci].members:
            m |= 1 << v
        return m

    def export_sidecar(self) -> dict:
        return {
            "schema": 1,
            "color": self.color,
            "q": self.q,
            "c": self.c,
            "n": self.n,
            "relaxed": self.relaxed,
            "line_ids": list(self.line_ids),
            "point_cliques": [[pc.point_id, list(pc.members)] for pc in self.point_cliques],
        }

    def export_edges(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in self.edges)

    def content_hash(self) -> str:
        payload = self.export_edges() + canonical_json(self.export_sidecar())
        return hashlib.sha256(payload.encode()).hexdigest()


def build_pattern(pencil: PencilStructure, coloring: PointColoring, relaxed: bool = False) -> list[PatternGraph]:
    """All m = c*|Lambda| color graphs for a coloring of the pencil.

    Requires the coloring to pass its quality windows unless `relaxed`;
    the construction itself is identical either way.
    """
    quality = check_quality(coloring, pencil)
    if not quality.ok and not relaxed:
        raise QualityError(
            f"coloring has {quality.violation_count} quality-window violations; "
            "pass relaxed=True to build anyway"
        )
    n = len(pencil.L_ids)
    lpos = {lid: i for i, lid in enumerate(pencil.L_ids)}
    m = coloring.m

    # point-cliques: for p in P_i, all L-lines through p
    cliques_per_color: list[list[PointClique]] = [[] for _ in range(m)]
    for pid in pencil.P_ids:
        col = coloring.assignment[pid]
        members = tuple(
            sorted(lpos[lid] for lid in _bits(pencil.plane.point_lines[pid] & pencil.L_mask))
        )
        cliques_per_color[col].append(PointClique(pid, members))

    graphs = [
        PatternGraph(
            color=i,
            q=pencil.q,
            c=coloring.c,
            n=n,
            line_ids=pencil.L_ids,
            point_cliques=cliques_per_color[i],
            relaxed=relaxed,
        )
        for i in range(m)
    ]

    # cross-color disjointness: each L-pair meeting inside P appears once
    total_pairs = sum(
        comb((pencil.plane.point_lines[pid] & pencil.L_mask).bit_count(), 2)
        for pid in pencil.P_ids
    )
    if sum(g.edge_count for g in graphs) != total_pairs:
        raise StructuralViolationError("color edge counts do not add up to P-meeting pairs")
    return graphs


def verify_pattern(graphs: list[PatternGraph], pencil: PencilStructure | None = None,
                   windows_gating: bool = True) -> Certificate:
    """Structural certificate: maximality, count/membership windows,
    edge-in-one-clique, and cross-color edge-disjointness.

    Window records are marked non-gating when windows_gating is False
    (relaxed colorings make them informational).
    """
    q = graphs[0].q
    c = graphs[0].c
    q3 = q**3
    cert = Certificate(config={"q": q, "c": c, "colors": len(graphs), "n": graphs[0].n})

    all_edges: dict[tuple[int, int], int] = {}
    overlap = []
    for g in graphs:
        # maximality via attempted extension by every outside vertex
        not_maximal = []
        for ci, pc in enumerate(g.point_cliques):
            bm = g.clique_mask(ci)
            for u in range(g.n):
                if (bm >> u) & 1:
                    continue
                if g.adj[u] & bm == bm and pc.members:
                    not_maximal.append([ci, u])
        cert.add(
            f"color-{g.color}/point-clique-maximality",
            passed=not not_maximal,
            cliques=len(g.point_cliques),
            violations=not_maximal,
        )

        count = len(g.point_cliques)
        cert.add(
            f"color-{g.color}/point-clique-count-window",
            passed=(2 * c * count >= q3 and c * count <= 2 * q3),
            gating=windows_gating,
            count=count,
            window=[f"{q3}/{2*c}", f"{2*q3}/{c}"],
        )

        memberships = [g.membership(v) for v in range(g.n)]
        bad = [
            [v, mv]
            for v, mv in enumerate(memberships)
            if not (2 * c * mv >= q and c * mv <= 2 * q)
        ]
        cert.add(
            f"color-{g.color}/vertex-membership-window",
            passed=not bad,
            gating=windows_gating,
            window=[f"{q}/{2*c}", f"{2*q}/{c}"],
            violations=bad[:100],
            violation_count=len(bad),
        )

        # every edge in exactly one clique of its color
        pair_sum = sum(comb(len(pc.members), 2) for pc in g.point_cliques)
        cert.add(
            f"color-{g.color}/edge-single-clique",
            passed=(pair_sum == g.edge_count),
            edges=g.edge_count,
            clique_pair_sum=pair_sum,
        )

        for e in g.edges:
            if e in all_edges:
                overlap.append([list(e), all_edges[e], g.color])
            else:
                all_edges[e] = g.color

    cert.add(
        "cross-color-edge-disjoint",
        passed=not overlap,
        total_edges=len(all_edges),
        overlaps=overlap,
    )

    if pencil is not None:
        expected = sum(
            comb((pencil.plane.point_lines[pid] & pencil.L_mask).bit_count(), 2)
            for pid in pencil.P_ids
        )
        cert.add(
            "edge-total-matches-meeting-pairs",
            passed=(len(all_edges) == expected),
            total_edges=len(all_edges),
            meeting_pairs=expected,
        )
    return cert


def classify_kplus1_clique(graph: PatternGraph, vertices) -> CliqueWitness:
    """Degenerate if one point-clique holds all k+1 vertices, else the fan
    whose point-clique holds exactly k of them."""
    vs = tuple(sorted(set(vertices)))
    if len(vs) != len(tuple(vertices)) or len(vs) < 4:
        raise ValueError("not a K_{k+1}: need at least 4 distinct vertices")
    for a, b in combinations(vs, 2):
        if not graph.has_edge(a, b):
            raise ValueError(f"not a K_{{k+1}}: missing edge {(a, b)}")
    k = len(vs) - 1
    vset = set(vs)
    candidates = sorted({graph.edge_clique[(a, b)] for a, b in combinations(vs, 2)})
    counts = [(ci, len(vset.intersection(graph.point_cliques[ci].members))) for ci in candidates]
    for ci, cnt in counts:
        if cnt == k + 1:
            return CliqueWitness(vs, CliqueKind.DEGENERATE, graph.point_cliques[ci].point_id, vs)
    for ci, cnt in counts:
        if cnt == k:
            spine = tuple(sorted(vset.intersection(graph.point_cliques[ci].members)))
            return CliqueWitness(vs, CliqueKind.FAN, graph.point_cliques[ci].point_id, spine)
    raise StructuralViolationError(
        f"clique {vs} has no point-clique with exactly k or k+1 of its vertices"
    )


def enumerate_kplus1(graph: PatternGraph, k: int) -> list[tuple]:
    """All K_{k+1} subgraphs, structure-blind (bitset search)."""
    return cliquesearch.enumerate_cliques(graph.adj, k + 1)


def count_fans_through_edge(graph: PatternGraph, edge, k: int) -> FanCount:
    """Exact number of (k+1)-fans containing the edge, by concurrence type.

    Type one: the concurrence point is the edge's own intersection point;
    the spine extends the edge inside its point-clique and the transversal
    is any common neighbor outside it.  Type two: the concurrence point is
    another colored point on one endpoint; the other endpoint is the
    transversal.  The two types are exclusive and every fan through the
    edge is counted exactly once.
    """
    a, b = edge
    if a > b:
        a, b = b, a
    if not graph.has_edge(a, b):
        raise ValueError(f"edge {(a, b)} not in graph")
    if k < 3:
        raise ValueError("k must be at least 3")
    ci0 = graph.edge_clique[(a, b)]
    k0 = graph.point_cliques[ci0]
    k0_mask = graph.clique_mask(ci0)

    at_edge = 0
    rest = [w for w in k0.members if w != a and w != b]
    base = graph.adj[a] & graph.adj[b]
    for W in combinations(rest, k - 2):
        m = base
        for w in W:
            m &= graph.adj[w]
        m &= ~k0_mask
        at_edge += m.bit_count()

    at_other = 0
    for x, y in ((a, b), (b, a)):
        for ci in graph.vertex_cliques[x]:
            if ci == ci0:
                continue
            members = graph.point_cliques[ci].members
            cand = [w for w in members if w != x and graph.has_edge(w, y)]
            at_other += comb(len(cand), k - 1)

    return FanCount(at_edge + at_other, at_edge, at_other)


def export_graph(graph: PatternGraph, edges_path, sidecar_path) -> None:
    edges_path.write_text(graph.export_edges())
    sidecar_path.write_text(canonical_json(graph.export_sidecar()))


def import_graph(edges_path, sidecar_path) -> PatternGraph:
    """Rebuild a graph from its export and re-check the files agree."""
    sidecar = json.loads(sidecar_path.read_text())
    cliques = [PointClique(pid, tuple(members)) for pid, members in sidecar["point_cliques"]]
    g = PatternGraph(
        color=sidecar["color"],
        q=sidecar["q"],
        c=sidecar["c"],
        n=sidecar["n"],
        line_ids=sidecar["line_ids"],
        point_cliques=cliques,
        relaxed=sidecar.get("relaxed", False),
    )
    file_edges = []
    for row in edges_path.read_text().splitlines():
        u, v = row.split()
        file_edges.append((int(u), int(v)))
    if tuple(file_edges) != g.edges:
        raise ValueError("edge list file disagrees with point-clique sidecar")
    return g


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)
