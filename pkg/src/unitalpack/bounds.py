"""Clique-free subsets of clique-free graphs, and the lower-bound table.

Any graph with no K_{k+1} on n vertices contains a K_k-free subset of at
least ceil(sqrt(k*n)/2) vertices: if some degree d reaches sqrt(k*n)/2
that vertex's neighborhood works outright; otherwise sampling vertices
with probability (k-1)/d and deleting one vertex per surviving K_k meets
the bound in expectation, so a seeded retry loop finds it.  Iterating the
resulting inequality

    value(r) >= value(r-1) + ceil(sqrt(k * value(r)) / 2),   value(3) = k^2,

row by row (the implicit inequality is solved exactly through its
quadratic in sqrt(value)) produces a lower-bound table that dominates the
closed form ceil(k r^2 / 16) everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import cliquesearch, rng


class NotCliqueFreeError(ValueError):
    """The input graph contains a K_{k+1}; carries a witness clique."""

    def __init__(self, witness):
        super().__init__(f"input graph contains a forbidden clique: {witness}")
        self.witness = tuple(witness)


class SubsetSearchError(RuntimeError):
    """The sampling branch exhausted its attempts."""

    def __init__(self, message, best_size=0, attempts=0):
        super().__init__(message)
        self.best_size = best_size
        self.attempts = attempts


def ceil_half_sqrt(x: int) -> int:
    """Smallest integer >= sqrt(x)/2, computed exactly."""
    s = math.isqrt(x)
    if s * s == x:
        return (s + 1) // 2
    return s // 2 + 1


def kfree_subset(adj: list[int], k: int, seed: int, max_attempts: int = 1000) -> tuple[int, ...]:
    """A verified K_k-free vertex set of size >= ceil(sqrt(k*n)/2).

    The input must itself be K_{k+1}-free (checked first; a violation is
    rejected with a witness).  The returned set is re-verified by an
    exhaustive clique search before it is handed back.
    """
    n = len(adj)
    if k < 3:
        raise ValueError("k must be at least 3")
    if n == 0:
        return ()
    prepared = cliquesearch.prepare(adj)
    witness = cliquesearch.find_clique(prepared, k + 1)
    if witness is not None:
        raise NotCliqueFreeError(witness)

    target = ceil_half_sqrt(k * n)
    degrees = [a.bit_count() for a in adj]
    d = max(degrees)

    if d == 0:
        if target > n:
            raise SubsetSearchError(f"edgeless graph too small: need {target} of {n}")
        result = tuple(range(target))
    elif 4 * d * d >= k * n:
        v = degrees.index(d)
        result = cliquesearch.bits_of(adj[v])
    else:
        p = min(1.0, (k - 1) / d)
        threshold = rng.bernoulli_threshold(p)
        best = 0
        result = None
        for attempt in range(max_attempts):
            bg = rng.raw_stream(seed, rng.SAMPLE, attempt)
            words = rng.raw(bg, n)
            mask = 0
            for v in range(n):
                if int(words[v]) < threshold:
                    mask |= 1 << v
            # delete one vertex per surviving clique until none remain
            while True:
                cl = cliquesearch.find_clique(prepared, k, mask)
                if cl is None:
                    break
                mask &= ~(1 << cl[-1])
            size = mask.bit_count()
            best = max(best, size)
            if size >= target:
                result = cliquesearch.bits_of(mask)
                break
        if result is None:
            raise SubsetSearchError(
                f"no attempt reached {target} vertices (best {best})",
                best_size=best,
                attempts=max_attempts,
            )

    if len(result) < target:
        raise AssertionError("size postcondition violated")
    if n <= 500:
        m = cliquesearch.mask_of(result)
        if cliquesearch.find_clique(prepared, k, m) is not None:
            raise AssertionError("returned set is not clique-free")
    return tuple(sorted(result))


def turan_graph(n: int, k: int) -> list[int]:
    """Balanced complete k-partite graph on n vertices (contiguous parts)."""
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if part[u] != part[v]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return adj


@dataclass
class BoundTable:
    k: int
    rows: list[tuple[int, int, int]]  # (r, closed_form, recursion_value)

    def to_csv(self) -> str:
        out = ["r,closed_form,recursion_value"]
        out.extend(f"{r},{cf},{rv}" for r, cf, rv in self.rows)
        return "\n".join(out) + "\n"

    def recursion_dominates(self) -> bool:
        return all(rv >= cf for _, cf, rv in self.rows)


def _recursion_step(k: int, prev: int) -> int:
    """Smallest integer P with P - ceil(sqrt(k*P)/2) >= prev."""
    P = prev + 1
    while P - ceil_half_sqrt(k * P) < prev:
        P += 1
    return P


def lower_bound_table(k: int, r_max: int) -> BoundTable:
    if k < 3 or r_max < 3:
        raise ValueError("need k >= 3 and r_max >= 3")
    rows = []
    rec = k * k  # r = 3 inherits the exact two-color value
    for r in range(3, r_max + 1):
        if r > 3:
            rec = _recursion_step(k, rec)
        closed = -(-(k * r * r) // 16)
        rows.append((r, closed, rec))
    return BoundTable(k=k, rows=rows)
