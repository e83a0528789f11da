"""Seeded uniform point colorings of the pencil, and their quality.

Each unital of the restricted pencil gets its own block of c fresh
colors; its points (p_inf excluded) are colored independently and
uniformly inside the block.  A coloring is "good" when two concentration
windows hold exactly:

  (1)  q^3/(2c) <= |P_i| <= 2q^3/c            for every color i,
  (2)  q/(2c) <= |line ∩ P_i| <= 2q/c         for every common secant and i.

Both comparisons are done in exact integer arithmetic (2c|P_i| >= q^3 and
so on); no floating point touches a certificate.  Lines sitting exactly
on a window boundary are flagged in the quality report.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rng
from .pencil import PencilStructure


class ColoringSearchError(RuntimeError):
    """No sampled coloring met the quality windows within the retry cap."""

    def __init__(self, message, best_coloring=None, best_quality=None):
        super().__init__(message)
        self.best_coloring = best_coloring
        self.best_quality = best_quality


@dataclass
class PointColoring:
    c: int
    seed: int
    lambdas: tuple[int, ...]
    assignment: dict[int, int]  # point id -> color id in [0, m)

    @property
    def m(self) -> int:
        return self.c * len(self.lambdas)

    def block_of_color(self, color: int) -> int:
        """Index into `lambdas` of the unital this color lives on."""
        return color // self.c

    def class_points(self, color: int) -> tuple[int, ...]:
        return tuple(sorted(p for p, col in self.assignment.items() if col == color))

    def class_sizes(self) -> list[int]:
        sizes = [0] * self.m
        for col in self.assignment.values():
            sizes[col] += 1
        return sizes

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "c": self.c,
            "lambdas": list(self.lambdas),
            "assignment": {str(p): c for p, c in sorted(self.assignment.items())},
        }


@dataclass
class ColoringQuality:
    q: int
    c: int
    class_sizes: list[int]
    line_counts: dict[int, list[int]]  # line id -> per-color count
    size_ok: bool
    line_ok: bool
    size_violations: list[tuple[int, int]]        # (color, size)
    line_violations: list[tuple[int, int, int]]   # (line, color, count)
    near_boundary: list[tuple[int, int, int]]     # lines exactly on a window edge

    @property
    def ok(self) -> bool:
        return self.size_ok and self.line_ok

    @property
    def violation_count(self) -> int:
        return len(self.size_violations) + len(self.line_violations)

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "c": self.c,
            "class_sizes": self.class_sizes,
            "size_ok": self.size_ok,
            "line_ok": self.line_ok,
            "size_violations": [list(v) for v in self.size_violations],
            "line_violations": [list(v) for v in self.line_violations],
            "near_boundary": [list(v) for v in self.near_boundary],
        }


def sample_coloring(pencil: PencilStructure, c: int, seed: int) -> PointColoring:
    """One uniform coloring; substream j colors the j-th chosen unital.

    Points are drawn in ascending id order, one raw word per point, so the
    assignment is a pure function of (pencil, c, seed).
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    assignment: dict[int, int] = {}
    for j, lam in enumerate(pencil.lambdas):
        pts = pencil.unital_points_sans_pinf(lam)
        bg = rng.raw_stream(seed, rng.COLORING, j)
        words = rng.raw(bg, len(pts))
        base = j * c
        for pid, w in zip(pts, words):
            assignment[pid] = base + int(w % c)
    return PointColoring(c=c, seed=seed, lambdas=pencil.lambdas, assignment=assignment)


def check_quality(coloring: PointColoring, pencil: PencilStructure) -> ColoringQuality:
    """Exact tallies for both windows, recomputed from scratch."""
    q, c, m = pencil.q, coloring.c, coloring.m
    q3 = q**3

    sizes = [0] * m
    for col in coloring.assignment.values():
        sizes[col] += 1
    size_violations = [
        (i, s) for i, s in enumerate(sizes) if not (2 * c * s >= q3 and c * s <= 2 * q3)
    ]

    line_counts: dict[int, list[int]] = {}
    line_violations = []
    near = []
    for lid in pencil.L_ids:
        counts = [0] * m
        for pid in pencil.line_P_points[lid]:
            counts[coloring.assignment[pid]] += 1
        line_counts[lid] = counts
        for i, cnt in enumerate(counts):
            lo, hi = 2 * c * cnt >= q, c * cnt <= 2 * q
            if not (lo and hi):
                line_violations.append((lid, i, cnt))
            elif 2 * c * cnt == q or c * cnt == 2 * q:
                near.append((lid, i, cnt))

    return ColoringQuality(
        q=q,
        c=c,
        class_sizes=sizes,
        line_counts=line_counts,
        size_ok=not size_violations,
        line_ok=not line_violations,
        size_violations=size_violations,
        line_violations=line_violations,
        near_boundary=near,
    )


def find_good_coloring(
    pencil: PencilStructure,
    c: int,
    seed: int,
    max_retries: int = 1000,
    relaxed: bool = False,
) -> PointColoring:
    """First coloring (seed, seed+1, ...) passing both quality windows.

    With c > q the lower line window drops below one point per line and the
    search is refused unless `relaxed` is set.  On exhaustion the error
    carries the best attempt seen (fewest window violations).
    """
    if max_retries < 1:
        raise ValueError("max_retries must be at least 1")
    if c > pencil.q and not relaxed:
        raise ValueError("c too large for q")
    best = None
    best_quality = None
    for attempt in range(max_retries):
        coloring = sample_coloring(pencil, c, seed + attempt)
        quality = check_quality(coloring, pencil)
        if quality.ok:
            return coloring
        if best_quality is None or quality.violation_count < best_quality.violation_count:
            best, best_quality = coloring, quality
    raise ColoringSearchError(
        f"no good coloring in {max_retries} attempts "
        f"(best attempt had {best_quality.violation_count} window violations)",
        best_coloring=best,
        best_quality=best_quality,
    )
