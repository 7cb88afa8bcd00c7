"""The surface anisotropy, polygonal perimeters, and the Wulff octagon.

The anisotropy is ``phi(v) = |v1| + |v2| + |v1+v2| + |v1-v2|``, a norm
invariant under the dihedral symmetries of the square lattice.  The
phi-length of a segment is its Euclidean length times ``phi`` of its unit
normal; since ``phi`` is 1-homogeneous and invariant under quarter turns,
this equals ``phi`` of the raw difference vector, which keeps lattice
segments exact (3 for axis-parallel unit steps, 4 for diagonal ones).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvariantViolation, NotUnit, OutOfRange
from .geometry import RESIDUAL_TOL, euclid
from .defects import face_defect

WULFF_GENERATORS = ((1, 0), (0, 1), (1, 1), (1, -1))

# Doubled area of the unit-generator zonotope: sum of |det| over generator
# pairs is 7, so area(scale) = 7 * scale**2 and perimeter(scale) = 28 * scale.
WULFF_UNIT_AREA = 7.0
WULFF_UNIT_PHI_PERIMETER = 28.0


def phi_raw(v):
    """The four-term sum on an arbitrary (non-normalized) vector."""
    a, b = v
    return abs(a) + abs(b) + abs(a + b) + abs(a - b)


def phi(nu):
    """Anisotropy of a Euclidean unit vector."""
    if abs(euclid(nu) - 1.0) > 1e-9:
        raise NotUnit(f"{nu!r} is not a unit vector")
    return phi_raw(nu)


def phi_length(segment):
    """Phi-length of a segment: Euclidean length times phi of the unit normal.

    phi is invariant under 90-degree rotation, so this equals phi of the
    difference vector itself; integer endpoints give exact integer values.
    """
    (ax, ay), (bx, by) = segment
    d = (bx - ax, by - ay)
    if d == (0, 0):
        raise OutOfRange("degenerate segment")
    return phi_raw(d)


@dataclass(frozen=True)
class PolygonalSet:
    """A polygonal region given by simple closed boundary curves.

    The first ring is the outer boundary, counterclockwise; any further
    rings are holes, clockwise.  Outward unit normals per segment follow
    from the orientation.  ``convex_pieces`` optionally lists a convex
    decomposition (each piece a CCW vertex tuple) used by clipping.
    """

    rings: tuple
    convex_pieces: tuple = ()

    def __post_init__(self):
        for ring in self.rings:
            if len(ring) < 3:
                raise OutOfRange("a boundary ring needs at least 3 vertices")

    @property
    def area(self):
        total = 0.0
        for ring in self.rings:
            total += _shoelace(ring)
        return total / 2.0

    def segments(self):
        for ring in self.rings:
            m = len(ring)
            for k in range(m):
                yield ring[k], ring[(k + 1) % m]

    def outward_normal(self, a, b):
        """Unit outward normal of an oriented boundary segment."""
        dx, dy = b[0] - a[0], b[1] - a[1]
        ln = math.hypot(dx, dy)
        return (dy / ln, -dx / ln)

    def scaled(self, factor):
        return PolygonalSet(
            rings=tuple(
                tuple((x * factor, y * factor) for x, y in ring) for ring in self.rings
            ),
            convex_pieces=tuple(
                tuple((x * factor, y * factor) for x, y in piece)
                for piece in self.convex_pieces
            ),
        )

    def translated(self, t):
        tx, ty = t
        return PolygonalSet(
            rings=tuple(
                tuple((x + tx, y + ty) for x, y in ring) for ring in self.rings
            ),
            convex_pieces=tuple(
                tuple((x + tx, y + ty) for x, y in piece)
                for piece in self.convex_pieces
            ),
        )

    def pieces(self):
        """Convex pieces covering the set (the outer ring if already convex)."""
        if self.convex_pieces:
            return self.convex_pieces
        return (self.rings[0],)


def _shoelace(ring):
    s = 0.0
    m = len(ring)
    for k in range(m):
        (ax, ay), (bx, by) = ring[k], ring[(k + 1) % m]
        s += ax * by - ay * bx
    return s


def aniso_perimeter(p):
    """Anisotropic perimeter: sum of phi-lengths over all boundary segments."""
    return float(sum(phi_length(seg) for seg in p.segments()))


def wulff_octagon(scale):
    """The zonotope of the four generators at the given scale.

    An octagon whose sides all have unit sup-norm length at scale 1:
    Euclidean length 1 horizontal and vertical, sqrt(2) diagonal.  Its area
    is ``7 * scale**2`` and its anisotropic perimeter ``28 * scale``.
    """
    if not scale > 0:
        raise OutOfRange("scale must be positive")
    s = float(scale)
    ring = (
        (1.5 * s, -0.5 * s),
        (1.5 * s, 0.5 * s),
        (0.5 * s, 1.5 * s),
        (-0.5 * s, 1.5 * s),
        (-1.5 * s, 0.5 * s),
        (-1.5 * s, -0.5 * s),
        (-0.5 * s, -1.5 * s),
        (0.5 * s, -1.5 * s),
    )
    return PolygonalSet(rings=(ring,))


def unit_area_wulff():
    return wulff_octagon(1.0 / math.sqrt(WULFF_UNIT_AREA))


def square_polygon(side=1.0):
    s = float(side)
    return PolygonalSet(rings=(((0.0, 0.0), (s, 0.0), (s, s), (0.0, s)),))


def diamond_polygon(area=1.0):
    # Axis-aligned square rotated 45 degrees: half-diagonal r gives area 2r^2.
    r = math.sqrt(area / 2.0)
    return PolygonalSet(rings=(((r, 0.0), (0.0, r), (-r, 0.0), (0.0, -r)),))


def regular_polygon(k, area=1.0):
    raw = tuple(
        (math.cos(2.0 * math.pi * i / k), math.sin(2.0 * math.pi * i / k))
        for i in range(k)
    )
    p = PolygonalSet(rings=(raw,))
    return normalized_to_area(p, area)


def lshape_polygon(area=1.0):
    """An L made of two unit-ratio rectangles, scaled to the target area."""
    ring = ((0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 0.5), (0.5, 1.0), (0.0, 1.0))
    pieces = (
        ((0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.0, 0.5)),
        ((0.0, 0.5), (0.5, 0.5), (0.5, 1.0), (0.0, 1.0)),
    )
    p = PolygonalSet(rings=(ring,), convex_pieces=pieces)
    return normalized_to_area(p, area)


def random_convex_polygon(rng, k=8):
    """Convex polygon from sorted random directions with random radii."""
    angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(k))
    ring = []
    for a in angles:
        r = rng.uniform(0.5, 1.5)
        ring.append((r * math.cos(a), r * math.sin(a)))
    hull = _convex_hull(ring)
    return PolygonalSet(rings=(tuple(hull),))


def _convex_hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        raise OutOfRange("hull needs 3 points")

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def normalized_to_area(p, area=1.0):
    return p.scaled(math.sqrt(area / p.area))


def check_face_bound(fc, face, edges=None):
    """Verify ``3 M + defect(F) >= sum of phi-lengths`` over M boundary edges.

    ``edges`` defaults to every boundary edge of the face.  The inequality
    always holds for admissible graphs; a violation raises.  Returns
    ``(holds, slack)``.
    """
    if edges is None:
        edges = sorted(face.boundary_edges)
    else:
        edges = list(edges)
        for e in edges:
            if e not in face.boundary_edges:
                raise OutOfRange(f"edge {e} is not a boundary edge of the face")
    if not edges:
        raise OutOfRange("need at least one edge")
    pts = fc.graph.config.points
    lhs = 3 * len(edges) + face_defect(fc, face)
    rhs = sum(phi_length((pts[i], pts[j])) for i, j in edges)
    slack = lhs - rhs
    tol = 0 if fc.graph.config.mode == "lattice" else -RESIDUAL_TOL
    holds = slack >= tol
    if not holds:
        raise InvariantViolation(f"face bound violated: slack {slack}")
    return holds, slack


def region_phi_perimeter(sel):
    """Anisotropic perimeter of a region, summed edgewise over its boundary.

    Collinear adjacent boundary edges are deliberately not merged: the
    combinatorial and anisotropic perimeters must count the same segments.
    """
    pts = sel.complex.graph.config.points
    return sum(phi_length((pts[i], pts[j])) for i, j in sel.boundary_edges)


def check_region_bound(sel):
    """Verify ``3 P_comb(region) + sum of selected defects >= P_phi(region)``.

    Returns ``(holds, slack)``; a violation raises since the inequality
    can only fail through a bug, never through valid data.
    """
    fc = sel.complex
    lhs = 3 * sel.comb_perimeter + sum(
        face_defect(fc, fc.faces[idx]) for idx in sel.selected
    )
    rhs = region_phi_perimeter(sel)
    slack = lhs - rhs
    tol = 0 if fc.graph.config.mode == "lattice" else -RESIDUAL_TOL
    holds = slack >= tol
    if not holds:
        raise InvariantViolation(f"region bound violated: slack {slack}")
    return holds, slack
