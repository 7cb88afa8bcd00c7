"""Bond graphs over finite particle configurations.

The bond rule puts an edge between every pair of particles at sup-norm
distance exactly 1.  A configuration is feasible when no pair is closer
than 1; for distinct lattice points this is automatic.  The only admissible
non-planarity of a feasible bond graph is a crossed square: an axis-parallel
unit square carrying all four sides and both diagonals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cmp_to_key

from .errors import DuplicatePoint, Infeasible, InvariantViolation, NonFinite
from .geometry import (
    ANGLE_GUARD,
    GUARD,
    KING_OCTANT,
    QUARTER_PI,
    CrossKind,
    ccw_angle,
    classify_crossing,
    direction_cmp,
    sub,
    sup_dist,
)

LATTICE = "lattice"
CONTINUOUS = "continuous"


@dataclass(frozen=True)
class Configuration:
    """Finite ordered list of distinct planar points.

    Lattice mode requires exact integer coordinates; continuous mode
    requires finite floats.  Vertex identity downstream is the index into
    ``points``, never the coordinates.
    """

    points: tuple
    mode: str = LATTICE

    def __post_init__(self):
        if self.mode not in (LATTICE, CONTINUOUS):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.points) == 0:
            raise ValueError("a configuration needs at least one point")
        seen = set()
        for p in self.points:
            if len(p) != 2:
                raise ValueError(f"point {p!r} is not planar")
            x, y = p
            if self.mode == LATTICE:
                if not (isinstance(x, int) and isinstance(y, int)):
                    raise ValueError(f"lattice coordinates must be ints, got {p!r}")
            else:
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise NonFinite(f"non-finite coordinate in {p!r}")
            if p in seen:
                raise DuplicatePoint(f"point {p!r} appears twice")
            seen.add(p)

    @classmethod
    def lattice(cls, points):
        return cls(tuple((int(x), int(y)) for x, y in points), LATTICE)

    @classmethod
    def continuous(cls, points):
        return cls(tuple((float(x), float(y)) for x, y in points), CONTINUOUS)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class Quad:
    """A crossed square: corner indices in CCW order from the lower-left."""

    corners: tuple  # (ll, lr, ur, ul) vertex indices
    sides: tuple  # 4 undirected edges
    diagonals: tuple  # 2 undirected edges


def _edge(i, j):
    return (i, j) if i < j else (j, i)


# Hooks run on every freshly built graph; the test suite registers a
# compactness assertion here so every configuration it touches is checked.
_build_hooks = []


def add_build_hook(fn):
    _build_hooks.append(fn)


def remove_build_hook(fn):
    _build_hooks.remove(fn)


class BondGraph:
    """Immutable bond graph: edges, CCW adjacency fans, crossed squares."""

    __slots__ = (
        "config",
        "n",
        "edges",
        "edge_set",
        "adj",
        "adj_pos",
        "degrees",
        "quads",
        "diagonal_edges",
        "crossing_violations",
        "explicit_edges",
    )

    def __init__(self, config, edges, quads, crossing_violations=(), explicit=False):
        self.config = config
        self.n = len(config.points)
        self.edges = sorted(edges)
        self.edge_set = set(self.edges)
        self.quads = tuple(quads)
        self.diagonal_edges = {e for q in self.quads for e in q.diagonals}
        self.crossing_violations = tuple(crossing_violations)
        self.explicit_edges = explicit
        self._build_fans()

    def _build_fans(self):
        pts = self.config.points
        nbrs = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        adj = []
        adj_pos = []
        for i, lst in enumerate(nbrs):
            dirs = {j: sub(pts[j], pts[i]) for j in lst}
            octs = [KING_OCTANT.get(d) for d in dirs.values()]
            if all(o is not None for o in octs):
                lst.sort(key=lambda j: KING_OCTANT[dirs[j]])
            else:
                lst.sort(key=cmp_to_key(lambda a, b: direction_cmp(dirs[a], dirs[b])))
            for a, b in zip(lst, lst[1:]):
                if direction_cmp(dirs[a], dirs[b]) == 0:
                    raise InvariantViolation(
                        f"two bonds at vertex {i} share a direction: {a}, {b}"
                    )
            adj.append(lst)
            adj_pos.append({j: k for k, j in enumerate(lst)})
        self.adj = adj
        self.adj_pos = adj_pos
        self.degrees = [len(lst) for lst in adj]

    @property
    def mode(self):
        return self.config.mode

    def degree(self, i):
        return self.degrees[i]

    def neighbors(self, i):
        return self.adj[i]

    @classmethod
    def from_edges(cls, config, edges, quads=()):
        """Graph with an explicit edge set, bypassing the sup-norm bond rule.

        This is the entry point for the generic decomposition machinery
        (any straight-edge graph, e.g. triangular-lattice subsets with
        Euclidean unit bonds expressed in integer basis coordinates).
        """
        norm = {_edge(i, j) for i, j in edges}
        for i, j in norm:
            if not (0 <= i < len(config.points) and 0 <= j < len(config.points)):
                raise ValueError(f"edge ({i},{j}) names a missing vertex")
            if i == j:
                raise ValueError("self-loop")
        g = cls(config, norm, quads, explicit=True)
        for fn in _build_hooks:
            fn(g)
        return g


def _lattice_edges_and_quads(config):
    pts = config.points
    index = {p: i for i, p in enumerate(pts)}
    edges = set()
    # One representative direction per unordered pair.
    for p, i in index.items():
        x, y = p
        for d in ((1, 0), (0, 1), (1, 1), (-1, 1)):
            j = index.get((x + d[0], y + d[1]))
            if j is not None:
                edges.add(_edge(i, j))
    quads = []
    # Any properly crossing pair of lattice bonds is a pair of unit-cell
    # diagonals, so scanning cells finds every crossed square.
    for p, ll in sorted(index.items(), key=lambda kv: kv[1]):
        x, y = p
        lr = index.get((x + 1, y))
        ul = index.get((x, y + 1))
        ur = index.get((x + 1, y + 1))
        if lr is not None and ul is not None and ur is not None:
            quads.append(
                Quad(
                    corners=(ll, lr, ur, ul),
                    sides=(_edge(ll, lr), _edge(lr, ur), _edge(ur, ul), _edge(ul, ll)),
                    diagonals=(_edge(ll, ur), _edge(lr, ul)),
                )
            )
    return edges, quads


def _continuous_edges(config):
    pts = config.points
    n = len(pts)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            d = sup_dist(pts[i], pts[j])
            if d < 1.0 - GUARD:
                raise Infeasible((i, j))
            if d <= 1.0 + GUARD:
                # Within the guard band of 1 counts as a bond.
                edges.add((i, j))
    return edges


def _bucket_edges(pts, edges):
    """Map unit grid cells to the edges whose bounding box meets them."""
    buckets = {}
    for e in edges:
        (ax, ay), (bx, by) = pts[e[0]], pts[e[1]]
        x0, x1 = (ax, bx) if ax <= bx else (bx, ax)
        y0, y1 = (ay, by) if ay <= by else (by, ay)
        for cx in range(math.floor(x0), math.floor(x1) + 1):
            for cy in range(math.floor(y0), math.floor(y1) + 1):
                buckets.setdefault((cx, cy), []).append(e)
    return buckets


def _proper_crossings(pts, edges):
    """All properly crossing edge pairs, found via unit-cell bucketing."""
    buckets = _bucket_edges(pts, edges)
    seen = set()
    out = []
    for group in buckets.values():
        m = len(group)
        for a in range(m):
            e1 = group[a]
            for b in range(a + 1, m):
                e2 = group[b]
                key = (e1, e2) if e1 < e2 else (e2, e1)
                if key in seen:
                    continue
                seen.add(key)
                s1 = (pts[e1[0]], pts[e1[1]])
                s2 = (pts[e2[0]], pts[e2[1]])
                if classify_crossing(s1, s2) is CrossKind.PROPER_CROSS:
                    out.append(key)
    return out


def _quad_from_crossing(config, pts, edge_set, e1, e2):
    """Build the crossed square spanned by two crossing diagonals, or None."""
    ids = (e1[0], e1[1], e2[0], e2[1])
    if len(set(ids)) != 4:
        return None
    coords = [pts[i] for i in ids]
    xs = sorted(c[0] for c in coords)
    ys = sorted(c[1] for c in coords)
    if config.mode == LATTICE:
        square = xs[0] == xs[1] and xs[2] == xs[3] and xs[2] - xs[1] == 1 and (
            ys[0] == ys[1] and ys[2] == ys[3] and ys[2] - ys[1] == 1
        )
    else:
        square = (
            abs(xs[0] - xs[1]) <= GUARD
            and abs(xs[2] - xs[3]) <= GUARD
            and abs(xs[2] - xs[1] - 1.0) <= GUARD
            and abs(ys[0] - ys[1]) <= GUARD
            and abs(ys[2] - ys[3]) <= GUARD
            and abs(ys[2] - ys[1] - 1.0) <= GUARD
        )
    if not square:
        return None
    by_pos = sorted(ids, key=lambda i: (pts[i][1], pts[i][0]))
    ll, lr = sorted(by_pos[:2], key=lambda i: pts[i][0])
    ul, ur = sorted(by_pos[2:], key=lambda i: pts[i][0])
    sides = (_edge(ll, lr), _edge(lr, ur), _edge(ur, ul), _edge(ul, ll))
    diagonals = (_edge(ll, ur), _edge(lr, ul))
    if any(e not in edge_set for e in sides + diagonals):
        return None
    if {e1, e2} != set(diagonals):
        return None
    return Quad((ll, lr, ur, ul), sides, diagonals)


def build(config):
    """Bond graph of a configuration; raises Infeasible on a pair closer than 1."""
    if config.mode == LATTICE:
        edges, quads = _lattice_edges_and_quads(config)
        violations = ()
    else:
        edges = _continuous_edges(config)
        pts = config.points
        quads = []
        violations = []
        seen_quads = set()
        for e1, e2 in _proper_crossings(pts, edges):
            q = _quad_from_crossing(config, pts, edges, e1, e2)
            if q is None:
                violations.append((e1, e2))
            elif q.corners not in seen_quads:
                seen_quads.add(q.corners)
                quads.append(q)
    g = BondGraph(config, edges, quads, violations)
    for fn in _build_hooks:
        fn(g)
    return g


@dataclass
class AdmissibilityReport:
    """Outcome of checking the degree and crossing-edge properties."""

    feasible: bool
    md_violations: list  # vertices of degree > 8
    ce_violations: list  # properly crossing edge pairs not forming a crossed square
    boxtimes_quads: list  # every crossed square, as a Quad
    angle_violations: list = field(default_factory=list)  # (vertex, angle) below pi/4

    @property
    def admissible(self):
        return not (self.md_violations or self.ce_violations or self.angle_violations)


def check_admissibility(g):
    """Verify max-degree 8, the crossed-square law, and the pi/4 angle floor.

    Violations are reported, not raised: for feasible configurations the
    report must come back clean, and the test suite leans on that.
    """
    pts = g.config.points
    md = [i for i in range(g.n) if g.degrees[i] > 8]
    quads = []
    ce = list(g.crossing_violations)
    seen_quads = set()
    for e1, e2 in _proper_crossings(pts, g.edges):
        q = _quad_from_crossing(g.config, pts, g.edge_set, e1, e2)
        if q is None:
            if (e1, e2) not in ce:
                ce.append((e1, e2))
        elif q.corners not in seen_quads:
            seen_quads.add(q.corners)
            quads.append(q)

    angle_bad = []
    lattice = g.config.mode == LATTICE and not g.explicit_edges
    for i in range(g.n):
        fan = g.adj[i]
        deg = len(fan)
        if deg < 2:
            continue
        if lattice:
            # Fan directions are king steps; consecutive octant gaps >= 1
            # give angles >= pi/4 exactly.
            continue
        # Consecutive CCW gaps suffice: any non-adjacent pair is separated
        # by at least two gaps on either side.
        for k in range(deg):
            u = sub(pts[fan[k]], pts[i])
            v = sub(pts[fan[(k + 1) % deg]], pts[i])
            ang = ccw_angle(u, v)
            if ang < QUARTER_PI - ANGLE_GUARD:
                angle_bad.append((i, ang))
    return AdmissibilityReport(
        feasible=True,
        md_violations=md,
        ce_violations=ce,
        boxtimes_quads=quads,
        angle_violations=angle_bad,
    )


def connected_components(g):
    """Vertex-index partition by bond-path connectivity."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def energy(g):
    """Total energy and excess: ``E = -#edges``, ``F = 8N - 2#edges``."""
    e = -len(g.edges)
    f = 8 * g.n + 2 * e
    return e, f
