"""The restricted pencil of Hermitian unitals sharing a tangent line.

All q unitals U_lam (lam in GF(q)) pass through p_inf = (0,1,0) with the
common tangent line ell_inf = [Z = 0]; off p_inf they are pairwise
disjoint, and together with ell_inf they partition the points of
PG(2, q^2).  A chosen subset Lambda of GF(q) (by default the canonical
prefix of size floor(q/2)) determines

    P = union of U_lam \\ {p_inf} over lam in Lambda,
    L = the lines secant to every U_lam, lam in Lambda,

with |P| = |Lambda| q^3 and |L| = q^4 - |Lambda| q^3 + q^2.  Every
structural identity is re-verified exhaustively at build time; the full
pencil is always materialized, so the tangency tally can be certified on
any instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import Certificate
from .geometry import (
    LineClass,
    ProjectivePlane,
    StructuralViolationError,
    Unital,
    classify_line,
    plane_for,
)


@dataclass
class PencilStructure:
    q: int
    plane: ProjectivePlane
    lambdas: tuple[int, ...]          # Lambda, as base-field residues in order
    unitals: dict[int, Unital]        # all q unitals, keyed by residue
    p_inf_id: int
    ell_inf_id: int
    P_ids: tuple[int, ...]
    P_mask: int
    L_ids: tuple[int, ...]
    L_mask: int
    secant_masks: dict[int, int]      # per lam: bitset of secant line ids
    line_P_points: dict[int, tuple[int, ...]]  # per L line id: its points inside P

    @property
    def lambda_size(self) -> int:
        return len(self.lambdas)

    def unital_points_sans_pinf(self, lam: int) -> tuple[int, ...]:
        return tuple(p for p in self.unitals[lam].point_ids if p != self.p_inf_id)

    def to_json_dict(self, tangency_cert: Certificate | None = None) -> dict:
        out = {
            "q": self.q,
            "Lambda": list(self.lambdas),
            "p_size": len(self.P_ids),
            "l_size": len(self.L_ids),
            "unital_sizes": {str(lam): len(self.unitals[lam].point_ids) for lam in self.lambdas},
            "p_inf": self.p_inf_id,
            "ell_inf": self.ell_inf_id,
        }
        if tangency_cert is not None:
            out["certificates"] = tangency_cert.to_dict()["checks"]
        return out


def common_secant_count(q: int, lambda_values) -> int:
    """Exhaustive count of lines secant to every U_lam, lam in lambda_values."""
    plane = plane_for(q)
    lams = list(lambda_values)
    if not lams:
        raise ValueError("Lambda must be nonempty")
    count = 0
    for lid in range(plane.n_lines):
        if all(
            classify_line(plane, lid, plane.unital(lam)) is LineClass.SECANT
            for lam in lams
        ):
            count += 1
    return count


def build_pencil(q: int, lambda_size: int | None = None, lambda_values=None) -> PencilStructure:
    """Build and exhaustively verify the Lambda-restricted pencil.

    lambda_values overrides the canonical prefix choice of Lambda; the
    default size is floor(q/2).
    """
    plane = plane_for(q)
    if lambda_values is not None:
        lambdas = tuple(int(v) % q for v in lambda_values)
        if len(set(lambdas)) != len(lambdas) or not lambdas:
            raise ValueError("lambda_values must be distinct and nonempty")
        if lambda_size is not None and lambda_size != len(lambdas):
            raise ValueError("lambda_size conflicts with lambda_values")
    else:
        if lambda_size is None:
            lambda_size = max(1, q // 2)
        if not 1 <= lambda_size <= q:
            raise ValueError(f"lambda_size must be in [1, {q}], got {lambda_size}")
        lambdas = tuple(range(lambda_size))

    p_inf_id = plane.point_id((0, 1, 0))
    ell_inf_id = plane.line_id((0, 0, 1))

    unitals = {lam: plane.unital(lam) for lam in range(q)}
    q3 = q**3

    # every unital has q^3 + 1 points (checked again here, cheaply)
    for lam, u in unitals.items():
        if len(u.point_ids) != q3 + 1:
            raise StructuralViolationError(f"unital {lam} has wrong size")
        if not u.contains(p_inf_id):
            raise StructuralViolationError(f"unital {lam} misses p_inf")

    # pairwise intersections are exactly {p_inf}
    pinf_bit = 1 << p_inf_id
    for a in range(q):
        for b in range(a + 1, q):
            if unitals[a].mask & unitals[b].mask != pinf_bit:
                raise StructuralViolationError(f"unitals {a},{b} share more than p_inf")

    # the full pencil minus p_inf, together with ell_inf, partitions the points
    union = 0
    for lam in range(q):
        union |= unitals[lam].mask & ~pinf_bit
    union |= plane.line_points[ell_inf_id]
    all_points = (1 << plane.n_points) - 1
    total = q * q3 + (q * q + 1)
    if union != all_points or total != plane.n_points:
        raise StructuralViolationError("pencil does not partition the plane")

    P_mask = 0
    for lam in lambdas:
        P_mask |= unitals[lam].mask
    P_mask &= ~pinf_bit
    P_ids = _bits(P_mask)
    if len(P_ids) != len(lambdas) * q3:
        raise StructuralViolationError("|P| != |Lambda| q^3")

    secant_masks = {}
    for lam in range(q):
        m = 0
        for lid in range(plane.n_lines):
            if classify_line(plane, lid, unitals[lam]) is LineClass.SECANT:
                m |= 1 << lid
        secant_masks[lam] = m

    L_mask = (1 << plane.n_lines) - 1
    for lam in lambdas:
        L_mask &= secant_masks[lam]
    L_ids = _bits(L_mask)
    expected_L = q**4 - len(lambdas) * q3 + q * q
    if len(L_ids) != expected_L:
        raise StructuralViolationError(
            f"|L| = {len(L_ids)}, expected {expected_L}"
        )

    # every common secant meets each chosen unital in exactly q+1 points
    for lid in L_ids:
        for lam in lambdas:
            sz = (plane.line_points[lid] & unitals[lam].mask).bit_count()
            if sz != q + 1:
                raise StructuralViolationError(
                    f"line {lid} meets unital {lam} in {sz} points"
                )

    if lambda_values is None and lambda_size == max(1, q // 2) and lambda_size == q // 2:
        # size bounds for the canonical choice |Lambda| = floor(q/2)
        assert q**4 // 2 - q3 <= len(P_ids) <= q**4 // 2 + q3
        assert q**4 // 2 <= len(L_ids) <= q**4

    line_P_points = {lid: _bits(plane.line_points[lid] & P_mask) for lid in L_ids}

    return PencilStructure(
        q=q,
        plane=plane,
        lambdas=lambdas,
        unitals=unitals,
        p_inf_id=p_inf_id,
        ell_inf_id=ell_inf_id,
        P_ids=P_ids,
        P_mask=P_mask,
        L_ids=L_ids,
        L_mask=L_mask,
        secant_masks=secant_masks,
        line_P_points=line_P_points,
    )


def verify_tangency_partition(pencil: PencilStructure) -> Certificate:
    """Certify that every line avoiding p_inf is tangent to exactly one
    unital of the full pencil and secant to the other q-1.

    The record carries the (tangent, secant) tally for every such line.
    """
    plane, q = pencil.plane, pencil.q
    cert = Certificate(config={"q": q, "check_scope": "full-pencil"})
    through_pinf = plane.point_lines[pencil.p_inf_id]
    tallies = []
    bad = []
    for lid in range(plane.n_lines):
        if (through_pinf >> lid) & 1:
            continue  # lines through p_inf (including ell_inf) are excluded
        t = sum(
            1
            for lam in range(q)
            if classify_line(plane, lid, pencil.unitals[lam]) is LineClass.TANGENT
        )
        s = q - t
        tallies.append([lid, t, s])
        if (t, s) != (1, q - 1):
            bad.append([lid, t, s])
    cert.add(
        "tangency-tally",
        passed=not bad,
        lines_checked=len(tallies),
        expected=[1, q - 1],
        tallies=tallies,
        violations=bad,
    )
    return cert


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)
