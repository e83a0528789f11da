"""The projective plane PG(2, q^2) with its Hermitian unitals, and the
affine plane AG(2, q).

Points and lines are normalized homogeneous triples over GF(q^2): the
first nonzero coordinate equals 1.  Both carry dense integer ids given by
their rank in lexicographic enumeration order, and incidence is
materialized as one bitset (a Python int) per line over point ids, plus
the dual bitset per point.  With this ordering the distinguished objects
land at fixed ids: the line Z = 0 is line 0 and the point (0, 1, 0) is
point 1.

A Hermitian unital here is the zero set of

    X^(q+1) + Y*Z^q + Y^q*Z + lam*Z^(q+1),      lam in GF(q),

which has q^3 + 1 points; every line meets it in exactly 1 point
(a tangent) or q + 1 points (a secant).  Any other intersection size
means the point set is corrupt, and classify_line treats it as a hard
error rather than a third class.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .fields import FieldElement, PrimeField, QuadExtField, is_prime


class LineClass(Enum):
    TANGENT = "tangent"
    SECANT = "secant"


class NotAUnitalError(RuntimeError):
    """A line met the point set in an impossible number of points."""


class StructuralViolationError(RuntimeError):
    """A combinatorially guaranteed property failed; indicates a bug."""


class ProjPoint(NamedTuple):
    id: int
    coords: tuple[int, int, int]  # normalized; entries are GF(q^2) element indices


class ProjLine(NamedTuple):
    id: int
    coeffs: tuple[int, int, int]  # normalized [a,b,c] meaning aX + bY + cZ = 0


class ProjectivePlane:
    """PG(2, q^2) for prime q: q^4 + q^2 + 1 points and as many lines."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.q = q
        self.field = QuadExtField(q)
        triples = self._normalized_triples()
        self.points = [ProjPoint(i, t) for i, t in enumerate(triples)]
        self.lines = [ProjLine(i, t) for i, t in enumerate(triples)]
        self.n_points = len(self.points)
        self.n_lines = len(self.lines)
        assert self.n_points == q**4 + q**2 + 1
        self._ids = {t: i for i, t in enumerate(triples)}
        self._unitals: dict[int, Unital] = {}
        self._build_incidence()

    def _normalized_triples(self) -> list[tuple[int, int, int]]:
        n = self.field.order
        out = [(0, 0, 1)]
        out.extend((0, 1, z) for z in range(n))
        out.extend((1, y, z) for y in range(n) for z in range(n))
        return out

    def normalize(self, triple) -> tuple[int, int, int]:
        """Scale so the first nonzero coordinate is 1."""
        F = self.field
        for t in triple:
            if t:
                inv = F.inv_i(t)
                return tuple(F.mul_i(inv, u) for u in triple)
        raise ValueError("the zero triple is not projective")

    def point_id(self, triple) -> int:
        return self._ids[self.normalize(triple)]

    def line_id(self, triple) -> int:
        return self._ids[self.normalize(triple)]

    def _line_point_ids(self, coeffs) -> list[int]:
        # Parametrize the solution space of aX + bY + cZ = 0 from a
        # two-point basis; yields all q^2 + 1 points of the line.
        F = self.field
        a, b, c = coeffs
        if a == 0 and b == 0:
            v1, v2 = (1, 0, 0), (0, 1, 0)
        elif a == 0:
            v1 = (1, 0, 0)
            v2 = (0, F.neg_i(F.mul_i(F.inv_i(b), c)), 1)
        else:
            ainv = F.inv_i(a)
            v1 = (F.neg_i(F.mul_i(ainv, b)), 1, 0)
            v2 = (F.neg_i(F.mul_i(ainv, c)), 0, 1)
        ids = [self.point_id(v1)]
        for t in range(F.order):
            pt = tuple(F.add_i(F.mul_i(t, u), w) for u, w in zip(v1, v2))
            ids.append(self.point_id(pt))
        return ids

    def _build_incidence(self):
        q2 = self.field.order
        self.line_points: list[int] = []
        point_lines = [0] * self.n_points
        for line in self.lines:
            ids = self._line_point_ids(line.coeffs)
            assert len(set(ids)) == q2 + 1
            mask = 0
            for pid in ids:
                mask |= 1 << pid
            self.line_points.append(mask)
            for pid in ids:
                point_lines[pid] |= 1 << line.id
        self.point_lines = point_lines

    def incident(self, point: ProjPoint, line: ProjLine) -> bool:
        """Direct evaluation of a*x + b*y + c*z; independent of the bitsets."""
        F = self.field
        acc = 0
        for cf, co in zip(line.coeffs, point.coords):
            acc = F.add_i(acc, F.mul_i(cf, co))
        return acc == 0

    def line_point_id_list(self, lid: int) -> tuple[int, ...]:
        return _bits(self.line_points[lid])

    def point_line_id_list(self, pid: int) -> tuple[int, ...]:
        return _bits(self.point_lines[pid])

    def intersection_id(self, lid1: int, lid2: int) -> int:
        """The unique common point of two distinct lines."""
        c = self._cross(self.lines[lid1].coeffs, self.lines[lid2].coeffs)
        if c == (0, 0, 0):
            raise ValueError("lines coincide")
        return self.point_id(c)

    def joining_line_id(self, pid1: int, pid2: int) -> int:
        """The unique line through two distinct points."""
        c = self._cross(self.points[pid1].coords, self.points[pid2].coords)
        if c == (0, 0, 0):
            raise ValueError("points coincide")
        return self.line_id(c)

    def _cross(self, u, v) -> tuple[int, int, int]:
        F = self.field
        return (
            F.sub_i(F.mul_i(u[1], v[2]), F.mul_i(u[2], v[1])),
            F.sub_i(F.mul_i(u[2], v[0]), F.mul_i(u[0], v[2])),
            F.sub_i(F.mul_i(u[0], v[1]), F.mul_i(u[1], v[0])),
        )

    def unital(self, lam) -> "Unital":
        if isinstance(lam, FieldElement):
            lam = lam.index
        lam %= self.q
        if lam not in self._unitals:
            self._unitals[lam] = Unital(self, lam)
        return self._unitals[lam]

    def export_incidence(self) -> str:
        """Line-based adjacency list: one text row per line, sorted point ids."""
        rows = []
        for lid in range(self.n_lines):
            rows.append(" ".join(str(p) for p in self.line_point_id_list(lid)))
        return "\n".join(rows) + "\n"


class Unital:
    """Point set of X^(q+1) + Y*Z^q + Y^q*Z + lam*Z^(q+1) = 0."""

    __slots__ = ("plane", "lam", "point_ids", "mask")

    def __init__(self, plane: ProjectivePlane, lam: int):
        self.plane = plane
        self.lam = lam % plane.q
        ids = [p.id for p in plane.points if self.evaluate_i(p.coords) == 0]
        self.point_ids = tuple(ids)
        mask = 0
        for pid in ids:
            mask |= 1 << pid
        self.mask = mask
        if len(ids) != plane.q**3 + 1:
            raise StructuralViolationError(
                f"unital lam={lam} has {len(ids)} points, expected {plane.q**3 + 1}"
            )

    def evaluate_i(self, coords) -> int:
        F = self.plane.field
        x, y, z = coords
        acc = F.normext_i(x)
        acc = F.add_i(acc, F.mul_i(y, F.frob_i(z)))
        acc = F.add_i(acc, F.mul_i(F.frob_i(y), z))
        # lam is a base residue; its embedded index equals the residue
        acc = F.add_i(acc, F.mul_i(self.lam, F.normext_i(z)))
        return acc

    def contains(self, pid: int) -> bool:
        return (self.mask >> pid) & 1 == 1

    def __len__(self):
        return len(self.point_ids)

    def __repr__(self):
        return f"Unital(q={self.plane.q}, lam={self.lam}, size={len(self.point_ids)})"


@lru_cache(maxsize=None)
def plane_for(q: int) -> ProjectivePlane:
    return ProjectivePlane(q)


def enumerate_points(q: int) -> list[ProjPoint]:
    return plane_for(q).points


def enumerate_lines(q: int) -> list[ProjLine]:
    return plane_for(q).lines


def unital_points(plane: ProjectivePlane, lam) -> Unital:
    return plane.unital(lam)


def classify_line(plane: ProjectivePlane, lid: int, unital: Unital) -> LineClass:
    """Tangent (1 common point) or secant (q+1); anything else is corruption."""
    size = (plane.line_points[lid] & unital.mask).bit_count()
    if size == 1:
        return LineClass.TANGENT
    if size == plane.q + 1:
        return LineClass.SECANT
    raise NotAUnitalError(
        f"line {lid} meets the point set in {size} points; not a unital"
    )


def classify_all_lines(plane: ProjectivePlane, unital: Unital) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(tangent line ids, secant line ids) for the whole plane."""
    tangents, secants = [], []
    for lid in range(plane.n_lines):
        if classify_line(plane, lid, unital) is LineClass.TANGENT:
            tangents.append(lid)
        else:
            secants.append(lid)
    return tuple(tangents), tuple(secants)


def fan_concurrence_check(plane: ProjectivePlane, secant_ids, unital: Unital, k: int | None = None) -> ProjPoint:
    """Given k >= 3 secants pairwise intersecting inside the unital, return a
    unital point incident to at least k-1 of them.

    Existence is guaranteed for genuine Hermitian unitals, so a miss is
    reported as a StructuralViolationError rather than a normal result.
    """
    ids = list(secant_ids)
    if k is None:
        k = len(ids)
    if k < 3 or len(ids) != k:
        raise ValueError("need k >= 3 secants (k must match the number of lines)")
    for lid in ids:
        if classify_line(plane, lid, unital) is not LineClass.SECANT:
            raise ValueError(f"line {lid} is not a secant of the unital")
    candidates = set()
    for i in range(k):
        for j in range(i + 1, k):
            pid = plane.intersection_id(ids[i], ids[j])
            if not unital.contains(pid):
                raise ValueError("not pairwise intersecting in U")
            candidates.add(pid)
    for pid in sorted(candidates):
        cnt = sum((plane.line_points[lid] >> pid) & 1 for lid in ids)
        if cnt >= k - 1:
            return plane.points[pid]
    raise StructuralViolationError("no unital point meets k-1 of the secants")


class AffinePlane:
    """AG(2, q) for prime q: q^2 points, q(q+1) lines in q+1 parallel classes.

    Point (x, y) has id x*q + y.  Class m < q holds the lines
    y = m*x + b; class q holds the verticals x = a.  Every parallel class
    partitions the point set, and every pair of distinct points spans
    exactly one line (verified exhaustively at construction).
    """

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.q = q
        self.field = PrimeField(q)
        self.n_points = q * q
        self.parallel_classes: list[list[tuple[int, ...]]] = []
        for m in range(q):
            cls = [
                tuple(sorted(x * q + (m * x + b) % q for x in range(q)))
                for b in range(q)
            ]
            self.parallel_classes.append(cls)
        self.parallel_classes.append(
            [tuple(a * q + y for y in range(q)) for a in range(q)]
        )
        self.lines: list[tuple[int, ...]] = []
        self.line_class: list[int] = []
        for ci, cls in enumerate(self.parallel_classes):
            for line in cls:
                self.lines.append(line)
                self.line_class.append(ci)
        self._verify()

    @property
    def n_classes(self) -> int:
        return self.q + 1

    def point_coords(self, pid: int) -> tuple[int, int]:
        return divmod(pid, self.q)

    def line_through(self, u: int, v: int) -> int:
        """Flat index of the unique line spanned by two distinct points."""
        if u == v:
            raise ValueError("points coincide")
        q = self.q
        x1, y1 = divmod(u, q)
        x2, y2 = divmod(v, q)
        if x1 == x2:
            return q * q + x1  # vertical class is stored last
        m = (y2 - y1) * pow(x2 - x1, q - 2, q) % q
        b = (y1 - m * x1) % q
        return m * q + b

    def class_of_line(self, line_index: int) -> int:
        return self.line_class[line_index]

    def _verify(self):
        q = self.q
        all_points = set(range(self.n_points))
        for cls in self.parallel_classes:
            covered: set[int] = set()
            for line in cls:
                assert len(line) == q
                assert covered.isdisjoint(line)
                covered.update(line)
            assert covered == all_points, "parallel class does not partition"
        for u in range(self.n_points):
            for v in range(u + 1, self.n_points):
                line = self.lines[self.line_through(u, v)]
                assert u in line and v in line, "pair not on its spanned line"


def build_affine_plane(q: int) -> AffinePlane:
    return AffinePlane(q)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)
