"""Exact and guarded-floating planar primitives.

Points are plain ``(x, y)`` tuples.  In lattice mode the coordinates are
Python ints and every predicate below is exact.  In continuous mode the
coordinates are floats and each comparison against a decision boundary uses
a guard band: a deciding quantity that is nonzero but within ``GUARD`` of
zero raises :class:`AmbiguousPredicate` instead of silently rounding.  An
exact zero is on the boundary itself and is decided as the boundary case.
"""

from __future__ import annotations

import math
from enum import Enum

from .errors import AmbiguousPredicate, OutOfRange, ZeroVector

# Guard band for distance and orientation predicates in continuous mode.
# The bond predicate is discontinuous at sup-distance 1, so near-boundary
# values must not be decided silently.
GUARD = 1e-9

# Guard for the minimum-angle (>= pi/4) fan check in continuous mode;
# arctangent rounding compounds across the fan.
ANGLE_GUARD = 1e-7

# Tolerance for decomposition residuals reported in continuous mode.
RESIDUAL_TOL = 1e-6

TWO_PI = 2.0 * math.pi
QUARTER_PI = math.pi / 4.0

# The eight unit sup-norm lattice steps, indexed counterclockwise from +x.
KING_STEPS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))
KING_OCTANT = {d: k for k, d in enumerate(KING_STEPS)}


def sup_dist(p, q):
    """Chebyshev distance ``max(|dx|, |dy|)``; exact on integer inputs."""
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def euclid(v):
    return math.hypot(v[0], v[1])


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def orientation(a, b, c):
    """Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if isinstance(d, float) and d != 0.0 and abs(d) <= GUARD:
        raise AmbiguousPredicate(f"orientation determinant {d!r} inside guard band")
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


class CrossKind(Enum):
    """How two closed segments meet.

    ``PROPER_CROSS`` means the open segments share exactly one point.
    ``OVERLAP`` means a shared sub-segment of positive length.
    ``SHARED_ENDPOINT`` means the only common point is an endpoint of both.
    Everything else (including an endpoint of one touching the interior of
    the other) is ``DISJOINT``.
    """

    DISJOINT = "disjoint"
    SHARED_ENDPOINT = "shared_endpoint"
    PROPER_CROSS = "proper_cross"
    OVERLAP = "overlap"


def _scalar_interval_overlap(a0, a1, b0, b1):
    """Overlap length sign of [a0,a1] and [b0,b1] after sorting: 1 positive, 0 touch, -1 none."""
    lo = max(min(a0, a1), min(b0, b1))
    hi = min(max(a0, a1), max(b0, b1))
    if lo < hi:
        return 1
    if lo == hi:
        return 0
    return -1


def classify_crossing(s1, s2):
    """Classify how segments ``s1 = (a, b)`` and ``s2 = (c, d)`` intersect."""
    a, b = s1
    c, d = s2
    if a == b or c == d:
        raise OutOfRange("degenerate segment")
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)

    if o1 == 0 and o2 == 0:
        # Collinear: compare along the dominant axis.
        axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
        ov = _scalar_interval_overlap(a[axis], b[axis], c[axis], d[axis])
        if ov > 0:
            return CrossKind.OVERLAP
        if ov == 0 and (a in (c, d) or b in (c, d)):
            return CrossKind.SHARED_ENDPOINT
        return CrossKind.DISJOINT

    if a in (c, d) or b in (c, d):
        # Non-collinear segments sharing an endpoint meet nowhere else.
        return CrossKind.SHARED_ENDPOINT

    if o1 * o2 < 0 and o3 * o4 < 0:
        return CrossKind.PROPER_CROSS
    return CrossKind.DISJOINT


def ccw_angle(u, v):
    """Counterclockwise angle from ``u`` to ``v`` in ``(0, 2*pi]``.

    Positively parallel inputs return ``2*pi`` (a full turn, matching the
    single angle at a degree-one vertex).  Exact multiples of ``pi/4`` are
    produced for the eight lattice step directions.
    """
    if u == (0, 0) or v == (0, 0) or euclid(u) == 0.0 or euclid(v) == 0.0:
        raise ZeroVector(f"ccw_angle({u}, {v})")
    ou = KING_OCTANT.get(u)
    ov = KING_OCTANT.get(v)
    if ou is not None and ov is not None:
        step = (ov - ou) % 8
        return TWO_PI if step == 0 else step * QUARTER_PI
    ang = math.atan2(cross(u, v), dot(u, v)) % TWO_PI
    return TWO_PI if ang == 0.0 else ang


def _half_plane(d):
    # 0 for the upper half including the +x axis, 1 otherwise.
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def direction_cmp(u, v):
    """Counterclockwise-from-+x comparator for nonzero direction vectors."""
    hu, hv = _half_plane(u), _half_plane(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def winding_number(walk, pts, p):
    """Signed crossings of a horizontal +x ray from ``p`` with a closed walk.

    ``walk`` is a sequence of directed vertex-index pairs; ``pts`` maps index
    to coordinates.  Uses the half-open rule ``ay <= py < by``, so vertices
    and horizontal edges on the ray never double-count.  Exact on ints.
    """
    w = 0
    px, py = p
    for u, v in walk:
        ax, ay = pts[u]
        bx, by = pts[v]
        if ay <= py < by:
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) > 0:
                w += 1
        elif by <= py < ay:
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                w -= 1
    return w
