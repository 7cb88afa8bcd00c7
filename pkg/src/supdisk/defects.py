"""Angular defects, face defects, and the two energy decompositions.

The angular defect of an angle ``a`` is ``4a/pi - 1``: the number of
quarter-pi units by which ``a`` exceeds ``pi/4``.  Summed over the fan of
a vertex of degree ``d >= 1`` the defects total ``8 - d``, the local excess
energy.  Summed over the angles facing the inside of a face the defects
give a purely combinatorial quantity, ``3 P + 8 (c - 1)`` for a bounded
face of combinatorial perimeter ``P`` with ``c - 1`` interior boundary
components, and that is the form used here, so both decompositions below
come out exact integers in lattice and continuous mode alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegreeExceeded, InvariantViolation, NotPlanar, OutOfRange
from .faces import FaceKind, select_region
from .geometry import KING_OCTANT, TWO_PI, ccw_angle, sub
from .graph import LATTICE, _proper_crossings

_ANGLE_SUM_TOL = 1e-6


def angular_defect(alpha):
    """Defect ``4*alpha/pi - 1`` of an angle in ``(0, 2*pi]``."""
    if not 0.0 < alpha <= TWO_PI * (1.0 + 1e-12):
        raise OutOfRange(f"angle {alpha!r} outside (0, 2*pi]")
    d = 4.0 * alpha / math.pi - 1.0
    r = round(d)
    return r if abs(d - r) < 1e-9 else d


def vertex_excess(g, x):
    """Local excess ``8 - deg(x)``; verifies it equals the fan defect sum.

    For degree 0 there is no fan and the angle identity is skipped; the
    isolated vertex still contributes 8 to the global count through the
    point component of its surrounding face.
    """
    deg = g.degrees[x]
    excess = 8 - deg
    if deg == 0:
        return excess
    pts = g.config.points
    fan = g.adj[x]
    dirs = [sub(pts[j], pts[x]) for j in fan]
    if g.config.mode == LATTICE and all(d in KING_OCTANT for d in dirs):
        octs = [KING_OCTANT[d] for d in dirs]
        gaps = [(octs[(k + 1) % deg] - octs[k]) % 8 for k in range(deg)]
        if deg == 1:
            gaps = [8]
        if sum(gaps) != 8 or sum(gap - 1 for gap in gaps) != excess:
            raise InvariantViolation(f"fan defect sum at vertex {x} is off")
    else:
        if deg == 1:
            total = 7.0
        else:
            total = sum(
                angular_defect(ccw_angle(dirs[k], dirs[(k + 1) % deg]))
                for k in range(deg)
            )
        if abs(total - excess) > _ANGLE_SUM_TOL:
            raise InvariantViolation(
                f"fan defects at vertex {x} sum to {total}, expected {excess}"
            )
    return excess


def face_defect(fc, face):
    """Defect of a face: 0 for crossed squares, combinatorial otherwise.

    A simple polygonal face with k sides comes out as 3k - 8 (so 1 for a
    triangle); the unbounded face has no exterior component and gets
    ``3 P + 8 c`` with all c components interior.
    """
    if face.kind is FaceKind.BOXTIMES:
        return 0
    c_int = face.interior_component_count
    if face.kind is FaceKind.UNBOUNDED:
        return 3 * face.comb_perimeter + 8 * c_int
    return 3 * face.comb_perimeter + 8 * (c_int - 1)


def _triangular_face_defect(face):
    if face.kind is FaceKind.BOXTIMES:
        raise NotPlanar("crossed squares cannot appear in a planar graph")
    c_int = face.interior_component_count
    if face.kind is FaceKind.UNBOUNDED:
        return 2 * face.comb_perimeter + 6 * c_int
    return 2 * face.comb_perimeter + 6 * (c_int - 1)


@dataclass(frozen=True)
class DecompositionReport:
    """The five terms of an energy decomposition and its residual."""

    perimeter_term: int
    component_term: int
    unselected_term: int
    defect_sum: int
    exterior_edge_term: int
    total: int
    excess: int
    residual: int
    comb_perimeter: int
    component_count: int
    unselected_count: int
    exterior_edge_count: int
    selection: frozenset
    ideal_degree: int  # 8 for the square form, 6 for the triangular form


def _decompose(fc, selection, *, per_edge, per_component, per_unselected,
               per_exterior, defect_of, ideal):
    sel = select_region(fc, selection)
    p = sel.comb_perimeter
    c = sel.component_count
    u = sum(1 for f in fc.bounded_faces if f.index not in sel.selected)
    dsum = sum(defect_of(fc.faces[idx]) for idx in sel.selected)
    x = len(sel.exterior_edges)
    total = per_edge * p + per_component * c - per_unselected * u + dsum + per_exterior * x
    excess = sum(ideal - d for d in fc.graph.degrees)
    report = DecompositionReport(
        perimeter_term=per_edge * p,
        component_term=per_component * c,
        unselected_term=-per_unselected * u,
        defect_sum=dsum,
        exterior_edge_term=per_exterior * x,
        total=total,
        excess=excess,
        residual=total - excess,
        comb_perimeter=p,
        component_count=c,
        unselected_count=u,
        exterior_edge_count=x,
        selection=sel.selected,
        ideal_degree=ideal,
    )
    if report.residual != 0:
        raise InvariantViolation(
            f"energy decomposition residual {report.residual} != 0"
        )
    return report


def decompose_square(fc, selection):
    """Excess energy as 3P + 8C - 8U + sum of defects + 6X, for 8 neighbors.

    ``selection`` must contain every crossed-square face and only bounded
    faces.  The identity is exact; a nonzero residual raises.
    """
    return _decompose(
        fc,
        selection,
        per_edge=3,
        per_component=8,
        per_unselected=8,
        per_exterior=6,
        defect_of=lambda f: face_defect(fc, f),
        ideal=8,
    )


def decompose_triangular(fc, selection):
    """Excess energy as 2P + 6C - 6U + sum of defects + 4X, for 6 neighbors.

    Requires a planar graph (no crossing edges at all) of maximum degree 6;
    the excess is measured against 6 bonds per particle.
    """
    g = fc.graph
    if g.quads:
        raise NotPlanar("graph has crossed squares")
    bad = [i for i in range(g.n) if g.degrees[i] > 6]
    if bad:
        raise DegreeExceeded(f"vertices {bad[:4]} exceed degree 6")
    if _proper_crossings(g.config.points, g.edges):
        raise NotPlanar("graph has properly crossing edges")
    return _decompose(
        fc,
        selection,
        per_edge=2,
        per_component=6,
        per_unselected=6,
        per_exterior=4,
        defect_of=_triangular_face_defect,
        ideal=6,
    )
