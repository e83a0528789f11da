"""Randomized Turanization of a pattern graph.

Each point-clique is vertex-partitioned independently into parts
R_0, ..., R_k: a vertex lands in R_j (j in 1..k) with probability
alpha/k each and in R_0 with probability 1 - alpha, independently per
(clique, vertex).  An edge survives iff its endpoints sit in two distinct
active parts of the unique point-clique containing the edge.  Inside a
clique the kept subgraph is therefore k-partite, so degenerate cliques on
k+1 vertices die deterministically; only fans can survive, each with an
exactly computable probability (the product over the cliques holding at
least two of its vertices of the distinct-active-parts probability).

check_kplus1_free exploits that dichotomy: it only ever needs to try
spines made of one vertex per active part inside one clique plus one
common kept-neighbor, which is a complete search for surviving cliques.
"""

from __future__ import annotations

import hashlib
import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations, product

from . import cliquesearch, rng
from .certificates import Certificate
from .pattern import PatternGraph


@dataclass(frozen=True)
class SparsifyParams:
    k: int
    alpha: float
    seed: int

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("k must be at least 3")
        # alpha = 0 is the degenerate everything-inactive case; kept for
        # boundary tests even though real runs want 0 < alpha <= 1
        if not 0 <= self.alpha <= 1:
            raise ValueError("alpha must lie in [0, 1]")


class SparseGraph:
    def __init__(self, base: PatternGraph, params: SparsifyParams):
        self.base = base
        self.params = params
        self.parts: list[tuple[int, ...]] = []  # per clique, aligned with members
        for ci, pc in enumerate(base.point_cliques):
            bg = rng.raw_stream(params.seed, rng.SPARSIFY, ci)
            self.parts.append(tuple(rng.part_draws(bg, len(pc.members), params.alpha, params.k)))
        self.adj = [0] * base.n
        kept = []
        for (a, b), ci in base.edge_clique.items():
            pa = self.part_of(ci, a)
            pb = self.part_of(ci, b)
            if pa != pb and pa >= 1 and pb >= 1:
                kept.append((a, b))
                self.adj[a] |= 1 << b
                self.adj[b] |= 1 << a
        self.kept_edges = tuple(sorted(kept))
        self.base_hash = base.content_hash()

    def part_of(self, ci: int, v: int) -> int:
        members = self.base.point_cliques[ci].members
        i = bisect_left(members, v)
        if i == len(members) or members[i] != v:
            raise KeyError(f"vertex {v} not in point-clique {ci}")
        return self.parts[ci][i]

    @property
    def n(self) -> int:
        return self.base.n

    def has_edge(self, a: int, b: int) -> bool:
        return (self.adj[a] >> b) & 1 == 1

    def to_json_dict(self) -> dict:
        return {
            "base_hash": self.base_hash,
            "color": self.base.color,
            "seed": self.params.seed,
            "alpha": self.params.alpha,
            "k": self.params.k,
            "kept_edges": [list(e) for e in self.kept_edges],
        }

    def partition_certificate(self) -> Certificate:
        """Per-clique sanity: kept subgraphs are k-partite and kept edges
        are exactly the cross-active-part pairs (recomputed from parts)."""
        cert = Certificate(config={"color": self.base.color, "k": self.params.k,
                                   "alpha": self.params.alpha, "seed": self.params.seed})
        bad = []
        recomputed = set()
        for ci, pc in enumerate(self.base.point_cliques):
            for ia, ib in combinations(range(len(pc.members)), 2):
                a, b = pc.members[ia], pc.members[ib]
                pa, pb = self.parts[ci][ia], self.parts[ci][ib]
                keep = pa != pb and pa >= 1 and pb >= 1
                if keep:
                    recomputed.add((a, b))
                if self.has_edge(a, b) and pa == pb:
                    bad.append([ci, a, b])
        cert.add(
            "clique-kpartite",
            passed=not bad and recomputed == set(self.kept_edges),
            kept=len(self.kept_edges),
            violations=bad,
        )
        return cert


def sparsify(graph: PatternGraph, params: SparsifyParams) -> SparseGraph:
    return SparseGraph(graph, params)


def check_kplus1_free(sparse: SparseGraph, k: int | None = None) -> Certificate:
    """Exhaustive search for surviving K_{k+1}, via the fan structure.

    Degenerate survivors are impossible (a clique's kept subgraph is
    k-partite), so every survivor has k spine vertices in k distinct
    active parts of one point-clique plus a transversal; all such spines
    are enumerated.  That completeness argument is tied to the partition's
    own part count, so k must equal the sparsification k; use
    brute_force_kplus1 for other clique sizes.
    """
    if k is None:
        k = sparse.params.k
    if k != sparse.params.k:
        raise ValueError(
            "the structured search is complete only for the partition's own k; "
            "use brute_force_kplus1 for other clique sizes"
        )
    base = sparse.base
    violators = set()
    for ci, pc in enumerate(base.point_cliques):
        by_part: dict[int, list[int]] = {}
        for v, part in zip(pc.members, sparse.parts[ci]):
            if part >= 1:
                by_part.setdefault(part, []).append(v)
        if len(by_part) < k:
            continue
        groups = [by_part[p] for p in sorted(by_part)]
        for spine in product(*groups):
            m = (1 << sparse.n) - 1
            for s in spine:
                m &= sparse.adj[s]
            while m:
                low = m & -m
                t = low.bit_length() - 1
                m ^= low
                violators.add(tuple(sorted(spine + (t,))))
    cert = Certificate(config={"k": k, "alpha": sparse.params.alpha,
                               "seed": sparse.params.seed, "color": base.color})
    cert.add(
        "no-surviving-clique",
        passed=not violators,
        clique_size=k + 1,
        violators=[list(v) for v in sorted(violators)][:100],
        violator_count=len(violators),
    )
    return cert


def brute_force_kplus1(sparse: SparseGraph, k: int | None = None) -> list[tuple]:
    """Structure-blind K_{k+1} enumeration on the kept edges (oracle path)."""
    if k is None:
        k = sparse.params.k
    return cliquesearch.enumerate_cliques(sparse.adj, k + 1)


def fan_survival_probability(sparse_or_graph, vertices, k: int, alpha: float) -> float:
    """Exact survival probability of a base-graph clique on k+1 vertices.

    For each point-clique holding at least two of the vertices, those
    vertices must land in distinct active parts; cliques are independent.
    """
    base = sparse_or_graph.base if isinstance(sparse_or_graph, SparseGraph) else sparse_or_graph
    vs = tuple(sorted(vertices))
    relevant: dict[int, int] = {}
    for a, b in combinations(vs, 2):
        ci = base.edge_clique[(a, b)]
        relevant[ci] = 0
    for ci in relevant:
        members = set(base.point_cliques[ci].members)
        relevant[ci] = len(members.intersection(vs))
    p = 1.0
    for s in relevant.values():
        if s > k:
            return 0.0
        p *= (alpha / k) ** s * math.perm(k, s)
    return p


def check_alpha_k(
    sparse: SparseGraph,
    k: int,
    subset_size: int,
    mode: str = "sampled",
    n_samples: int | None = None,
    seed: int | None = None,
) -> Certificate:
    """Certify that vertex subsets of the kept graph contain an induced K_k.

    Exhaustive mode walks every subset (refused beyond a feasibility cap);
    sampled mode draws ``n_samples`` uniform subsets from the documented
    substream.  Each subset either yields a witness clique (PASS) or is a
    FAIL listed in the certificate.
    """
    n = sparse.n
    if not 0 <= subset_size <= n:
        raise ValueError("subset_size out of range")
    if seed is None:
        seed = sparse.params.seed

    if mode == "exhaustive":
        if n > 25 or math.comb(n, subset_size) > 5_000_000:
            raise ValueError("exhaustive subset enumeration infeasible at this size")
        subsets = combinations(range(n), subset_size)
        total = math.comb(n, subset_size)
    elif mode == "sampled":
        if not n_samples or n_samples < 1:
            raise ValueError("sampled mode needs n_samples >= 1")
        subsets = (
            rng.sample_subset(rng.raw_stream(seed, rng.SUBSET, i), n, subset_size)
            for i in range(n_samples)
        )
        total = n_samples
    else:
        raise ValueError(f"unknown mode {mode!r}")

    failures = []
    verdicts = []
    passes = 0
    sample_witnesses = []
    prepared = cliquesearch.prepare(sparse.adj)
    for idx, subset in enumerate(subsets):
        mask = 0
        for v in subset:
            mask |= 1 << v
        witness = cliquesearch.find_clique(prepared, k, mask)
        verdicts.append(1 if witness is not None else 0)
        if witness is None:
            failures.append({"index": idx, "subset": list(subset)})
        else:
            passes += 1
            if len(sample_witnesses) < 5:
                sample_witnesses.append({"index": idx, "witness": list(witness)})

    cert = Certificate(config={
        "k": k, "subset_size": subset_size, "mode": mode,
        "samples": total, "seed": seed, "color": sparse.base.color,
    })
    cert.add(
        "subset-clique-presence",
        passed=not failures,
        subsets_checked=total,
        passes=passes,
        verdicts=verdicts,
        failures=failures[:50],
        failure_count=len(failures),
        sample_witnesses=sample_witnesses,
    )
    return cert


def alpha_formula_value(r: int, k: int) -> float:
    """The retention-probability formula r^(-15/(2k)) * log(r)^-4 * log(k)^-4
    (base-10 logs), which targets the asymptotic regime; above 1 it is
    unusable as a probability and callers should fall back."""
    if r < 2 or k < 2:
        raise ValueError("need r >= 2 and k >= 2")
    return r ** (-15 / (2 * k)) * math.log10(r) ** -4 * math.log10(k) ** -4


@dataclass
class FeasibilityEntry:
    name: str
    lhs: float
    rhs: float
    satisfied: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "note": self.note,
        }


@dataclass
class FeasibilityReport:
    q: int
    k: int
    r: int
    c: int
    alpha: float
    entries: list[FeasibilityEntry]

    @property
    def all_satisfied(self) -> bool:
        return all(e.satisfied for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "q": self.q, "k": self.k, "r": self.r, "c": self.c, "alpha": self.alpha,
            "all_satisfied": self.all_satisfied,
            "entries": [e.to_dict() for e in self.entries],
        }


def feasibility_report(q: int, k: int, r: int, c: int, alpha: float) -> FeasibilityReport:
    """Numeric evaluation of the proof-regime inequalities at concrete
    parameters.  At desk scale most fail -- they encode asymptotics -- and
    the report says exactly which."""
    entries = []
    lhs = alpha * q
    rhs = 32 * k * c * math.log(math.e * r)
    entries.append(FeasibilityEntry(
        "active-mass-covers-subsets", lhs, rhs, lhs >= rhs,
        note="alpha*q >= 32*k*c*ln(e*r)",
    ))
    lhs = float(c)
    rhs = q / (48 * math.log(q))
    entries.append(FeasibilityEntry(
        "colors-within-concentration", lhs, rhs, lhs <= rhs,
        note="c <= q/(48*ln q)",
    ))
    log_fan_bound = 7 * math.log(q) + _log_real_binom(2 * q / c, k) + 3 * k * (
        math.log(alpha) if alpha > 0 else -math.inf
    )
    entries.append(FeasibilityEntry(
        "fan-survival-union-bound", log_fan_bound, math.log(0.5),
        log_fan_bound < math.log(0.5),
        note="ln[q^7 * C(2q/c, k) * alpha^(3k)] < ln(1/2); log scale avoids overflow",
    ))
    lhs = float(c * (q // 2))
    entries.append(FeasibilityEntry(
        "color-count-covers-r", lhs, float(r), lhs >= r,
        note="c*floor(q/2) >= r",
    ))
    return FeasibilityReport(q=q, k=k, r=r, c=c, alpha=alpha, entries=entries)


def _log_real_binom(x: float, k: int) -> float:
    """ln of the generalized binomial x(x-1)...(x-k+1)/k!; -inf when any
    factor is nonpositive (the bound is then vacuously zero)."""
    acc = -math.lgamma(k + 1)
    for i in range(k):
        if x - i <= 0:
            return -math.inf
        acc += math.log(x - i)
    return acc


def sparse_graph_json(sparse: SparseGraph) -> str:
    from .certificates import canonical_json

    return canonical_json(sparse.to_json_dict())


def sparse_graph_hash(sparse: SparseGraph) -> str:
    return hashlib.sha256(sparse_graph_json(sparse).encode()).hexdigest()
