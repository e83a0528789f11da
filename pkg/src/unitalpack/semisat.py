"""Affine-plane edge colorings in which every one-vertex extension
creates a new monochromatic clique.

Take the affine plane of prime order q with (k-1)r < q < 2(k-1)r and
color the edge between two points by the parallel class of the line they
span, collapsing classes r..q+1 into the last color.  Every color class
is then a union of line-cliques of order q that partition the vertex set
within each constituent parallel class.  Adding a new vertex with any
r-colored star, some color i occurs at least q^2/r > (k-1)q times, so one
of the q partitioning line-cliques of color i carries at least k of those
endpoints: together with the new vertex they form a new monochromatic
K_{k+1}.  The verifier exhibits that witness for every extension it is
given; the pigeonhole makes this a hard guarantee, not a statistical one.

Indexing note: `build_semisat(k, ...)` targets new monochromatic copies
of K_{k+1} (the construction's natural convention), while
`semisat_upper_bound(k, ...)` speaks about K_k as the target clique and
converts internally (one off).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import rng
from .certificates import Certificate
from .fields import is_prime
from .geometry import AffinePlane


class Witness(NamedTuple):
    color: int
    points: tuple[int, ...]  # k old vertices; with the new vertex: K_{k+1}


@dataclass
class SemisatColoring:
    q: int
    r: int
    k: int                     # extensions must create a new mono K_{k+1}
    affine: AffinePlane
    class_color: tuple[int, ...]        # parallel-class index -> color in 1..r
    class_structure: dict[int, list[tuple[int, ...]]]  # color -> line cliques

    @property
    def n(self) -> int:
        return self.affine.n_points

    def edge_color(self, u: int, v: int) -> int:
        line = self.affine.line_through(u, v)
        return self.class_color[self.affine.class_of_line(line)]

    def all_edge_colors(self) -> dict[tuple[int, int], int]:
        n = self.n
        return {
            (u, v): self.edge_color(u, v)
            for u in range(n)
            for v in range(u + 1, n)
        }

    def export_text(self) -> str:
        rows = [f"{self.n} {self.r}"]
        for (u, v), col in sorted(self.all_edge_colors().items()):
            rows.append(f"{u} {v} {col}")
        return "\n".join(rows) + "\n"

    # verification

    def structural_certificate(self) -> Certificate:
        cert = Certificate(config={"q": self.q, "r": self.r, "k": self.k, "n": self.n})
        edge_colors = self.all_edge_colors()
        cert.add(
            "edge-color-total",
            passed=(len(edge_colors) == self.n * (self.n - 1) // 2
                    and all(1 <= c <= self.r for c in edge_colors.values())),
            edges=len(edge_colors),
        )

        # each color decomposes into vertex-disjoint q-cliques within each
        # constituent parallel class, and those cliques are monochromatic
        decomposition_ok = True
        details = {}
        for color, lines in sorted(self.class_structure.items()):
            classes = {}
            for line in lines:
                ci = self.affine.class_of_line(self.affine.line_through(line[0], line[1]))
                classes.setdefault(ci, []).append(line)
            for ci, cls_lines in classes.items():
                covered = set()
                for line in cls_lines:
                    if len(line) != self.q or not covered.isdisjoint(line):
                        decomposition_ok = False
                    covered.update(line)
                if len(covered) != self.n:
                    decomposition_ok = False
            mono_ok = all(
                edge_colors[(min(u, v), max(u, v))] == color
                for line in lines
                for i, u in enumerate(line)
                for v in line[i + 1:]
            )
            if not mono_ok:
                decomposition_ok = False
            details[str(color)] = {"cliques": len(lines), "classes": len(classes)}
        cert.add("class-decomposition", passed=decomposition_ok, colors=details)

        # cliques of different colors come from different parallel classes,
        # hence meet in exactly one vertex
        meets_ok = True
        colors = sorted(self.class_structure)
        for i, c1 in enumerate(colors):
            for c2 in colors[i + 1:]:
                for l1 in self.class_structure[c1]:
                    s1 = set(l1)
                    for l2 in self.class_structure[c2]:
                        if len(s1.intersection(l2)) != 1:
                            meets_ok = False
        cert.add("inter-color-clique-meets", passed=meets_ok, expected=1)

        cert.add(
            "pigeonhole-margin",
            passed=(self.n > (self.k - 1) * self.q * self.r),
            note="q^2/r > (k-1)q",
            n=self.n,
            threshold=(self.k - 1) * self.q * self.r,
        )
        return cert

    def find_witness(self, ext_colors) -> Witness | None:
        """A new monochromatic K_{k+1} for the extension star `ext_colors`
        (color of the edge to each old vertex, values in 1..r)."""
        counts = [0] * (self.r + 1)
        for col in ext_colors:
            counts[col] += 1
        order = sorted(range(1, self.r + 1), key=lambda col: (-counts[col], col))
        for color in order:
            for line in self.class_structure[color]:
                pts = [p for p in line if ext_colors[p] == color]
                if len(pts) >= self.k:
                    return Witness(color, tuple(pts[: self.k]))
        return None

    def adversarial_extensions(self) -> list[tuple[str, list[int]]]:
        n, r, q = self.n, self.r, self.q
        all_one = [1] * n
        balanced = [(v % r) + 1 for v in range(n)]
        # spread along the first parallel class: color by line index mod r
        spread = [0] * n
        for j, line in enumerate(self.affine.parallel_classes[0]):
            for p in line:
                spread[p] = (j % r) + 1
        return [("all-one-color", all_one), ("balanced", balanced), ("line-spread", spread)]

    def verify_extensions(self, n_random: int, seed: int) -> tuple[Certificate, list[dict]]:
        """Adversarial plus seeded random extensions; every one must yield
        a witness.  Returns (certificate, full witness log)."""
        log = []
        failures = []
        for name, ext in self.adversarial_extensions():
            w = self.find_witness(ext)
            log.append({"extension": name, "witness": None if w is None else
                        {"color": w.color, "points": list(w.points)}})
            if w is None:
                failures.append(name)
        for i in range(n_random):
            bg = rng.raw_stream(seed, rng.EXTENSION, i)
            ext = [1 + c for c in rng.ints_mod(bg, self.n, self.r)]
            w = self.find_witness(ext)
            log.append({"extension": i, "witness": None if w is None else
                        {"color": w.color, "points": list(w.points)}})
            if w is None:
                failures.append(i)
        cert = Certificate(config={"q": self.q, "r": self.r, "k": self.k,
                                   "n_random": n_random, "seed": seed})
        cert.add(
            "extension-witnesses",
            passed=not failures,
            extensions_checked=n_random + 3,
            failures=[str(f) for f in failures],
        )
        return cert, log


class UpperBound(NamedTuple):
    q: int
    n: int
    ceiling: int


def _prime_in_range(lo: int, hi: int) -> int:
    """Smallest prime strictly between lo and hi."""
    for q in range(lo + 1, hi):
        if is_prime(q):
            return q
    raise RuntimeError(f"no prime in ({lo}, {hi})")


def choose_prime(k: int, r: int) -> int:
    """Smallest prime q with (k-1)r < q < 2(k-1)r."""
    return _prime_in_range((k - 1) * r, 2 * (k - 1) * r)


def build_semisat(k: int, r: int, q: int | None = None) -> SemisatColoring:
    """The coloring whose extensions all create a new monochromatic K_{k+1}."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if r < 2:
        raise ValueError("r must be at least 2")
    if q is None:
        q = choose_prime(k, r)
    else:
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        if q <= (k - 1) * r:
            raise ValueError(f"need q > (k-1)r = {(k-1)*r} for the pigeonhole margin")
    if r > q + 1:
        raise ValueError(f"r must be at most q+1 = {q + 1}")

    affine = AffinePlane(q)
    class_color = tuple(min(ci + 1, r) for ci in range(q + 1))
    class_structure: dict[int, list[tuple[int, ...]]] = {col: [] for col in range(1, r + 1)}
    for ci, cls in enumerate(affine.parallel_classes):
        class_structure[class_color[ci]].extend(cls)
    return SemisatColoring(
        q=q, r=r, k=k, affine=affine,
        class_color=class_color, class_structure=class_structure,
    )


def semisat_upper_bound(k: int, r: int) -> UpperBound:
    """Order bound for the K_k target: the chosen prime's q^2 against the
    ceiling 4(k-2)^2 r^2.  Degenerate below k = 3."""
    if k < 2 or r < 2:
        raise ValueError("need k >= 2 and r >= 2")
    if k == 2:
        raise ValueError(
            "k = 2 degenerates: the ceiling 4(k-2)^2 r^2 is 0 and no prime "
            "range exists for the construction"
        )
    q = choose_prime(k - 1, r)
    ceiling = 4 * (k - 2) ** 2 * r**2
    return UpperBound(q=q, n=q * q, ceiling=ceiling)
