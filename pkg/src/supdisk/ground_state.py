"""Exhaustive lattice ground-state search and minimizer structure checks.

Energy minimizers with n particles maximize the bond count, bonds being
king moves on the integer lattice.  The search enumerates king-connected
lattice animals exactly once each (fixed under translation, with the
lexicographically least cell pinned at the origin) and reduces the set of
maximizers by the dihedral symmetry group at emission.  Restricting to
connected candidates loses nothing: a disconnected maximizer could be
translated into contact and gain a bond.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .defects import face_defect
from .errors import (
    AmbiguousPredicate,
    BudgetExceeded,
    Infeasible,
    InvariantViolation,
    OutOfRange,
)
from .faces import ComponentRole, EdgeClass, FaceKind, enumerate_faces
from .graph import BondGraph, Configuration, build, connected_components, energy

KING = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))


def _normalize(cells):
    mx = min(x for x, _ in cells)
    my = min(y for _, y in cells)
    return tuple(sorted((x - mx, y - my) for x, y in cells))


def canonical_form(cells):
    """Least translation-normalized image under the 8 square symmetries."""
    best = None
    for sx, sy, swap in (
        (1, 1, False), (-1, 1, False), (1, -1, False), (-1, -1, False),
        (1, 1, True), (-1, 1, True), (1, -1, True), (-1, -1, True),
    ):
        img = [
            ((y if swap else x) * sx, (x if swap else y) * sy) for x, y in cells
        ]
        cand = _normalize(img)
        if best is None or cand < best:
            best = cand
    return best


def animal_edge_count(cells):
    s = set(cells)
    return sum(
        1 for (x, y) in s for dx, dy in ((1, 0), (1, 1), (0, 1), (-1, 1))
        if (x + dx, y + dy) in s
    )


@dataclass
class SearchResult:
    n: int
    max_edges: int
    min_excess: int
    minimizers: tuple  # canonical cell tuples, pairwise distinct
    nodes: int
    elapsed: float
    complete: bool

    def configurations(self):
        return tuple(Configuration.lattice(m) for m in self.minimizers)


def brute_force_min(n, *, node_budget=None, time_budget=None):
    """Exact minimum energy over n-point lattice configurations.

    Complete enumeration is practical up to n = 9; beyond that a node or
    time budget is required and exhaustion raises BudgetExceeded with the
    partial result attached as ``exc.partial``.
    """
    if not 1 <= n <= 12:
        raise OutOfRange("n must be between 1 and 12")
    if n > 9 and node_budget is None and time_budget is None:
        raise OutOfRange("beyond n = 9 a node or time budget is required")

    t0 = time.time()
    best = -1
    maximizers = []
    nodes = 0
    exhausted = False

    # Cells ordered by (y, x); the origin is the least cell of every animal.
    def allowed(c):
        return c[1] > 0 or (c[1] == 0 and c[0] >= 0)

    placed = []
    placed_set = set()
    edge_total = 0

    def visit():
        nonlocal best, maximizers
        if edge_total > best:
            best = edge_total
            maximizers = [tuple(placed)]
        elif edge_total == best:
            maximizers.append(tuple(placed))

    def rec(untried, seen):
        nonlocal nodes, edge_total, exhausted
        while untried:
            if exhausted:
                return
            cell = untried.pop()
            gained = sum(
                (cell[0] + dx, cell[1] + dy) in placed_set for dx, dy in KING
            )
            placed.append(cell)
            placed_set.add(cell)
            edge_total += gained
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = True
            if time_budget is not None and nodes % 4096 == 0:
                if time.time() - t0 > time_budget:
                    exhausted = True
            if len(placed) == n:
                visit()
            elif not exhausted:
                # Admissible bound: a new cell gains at most 8 bonds.
                if edge_total + 8 * (n - len(placed)) >= best:
                    fresh = []
                    for dx, dy in KING:
                        nb = (cell[0] + dx, cell[1] + dy)
                        if nb not in seen and allowed(nb):
                            fresh.append(nb)
                            seen.add(nb)
                    rec(untried + fresh, seen)
                    seen.difference_update(fresh)
            placed.pop()
            placed_set.remove(cell)
            edge_total -= gained

    origin = (0, 0)
    rec([origin], {origin})

    canon = {}
    for cells in maximizers:
        canon.setdefault(canonical_form(cells), None)
    result = SearchResult(
        n=n,
        max_edges=best,
        min_excess=8 * n - 2 * best,
        minimizers=tuple(sorted(canon)),
        nodes=nodes,
        elapsed=time.time() - t0,
        complete=not exhausted,
    )
    if exhausted:
        err = BudgetExceeded(f"search for n={n} stopped after {nodes} nodes")
        err.partial = result
        raise err
    return result


@dataclass
class CrystallizationReport:
    connected: bool
    no_wire_edges: bool
    faces_ok: bool  # every bounded face a triangle or a crossed square
    simple_boundary: bool
    min_degree: int
    face_defects_ok: bool  # every bounded face defect in {0, 1}
    triangle_rigidity_ok: bool

    def all_flags(self, min_degree_floor=3):
        return (
            self.connected
            and self.no_wire_edges
            and self.faces_ok
            and self.simple_boundary
            and self.face_defects_ok
            and self.triangle_rigidity_ok
            and self.min_degree >= min_degree_floor
        )


def _is_triangle(face):
    return (
        face.kind is FaceKind.PLANAR
        and face.comb_perimeter == 3
        and face.interior_component_count == 0
    )


def _union_is_triangle(pts, tri_a, tri_b):
    """Whether two triangles sharing an edge merge into one triangle."""
    verts = sorted(set(tri_a) | set(tri_b))
    if len(verts) != 4:
        return False
    hull = _hull_indices([pts[v] for v in verts])
    if len(hull) != 3:
        return False
    area = _tri_area(pts, tri_a) + _tri_area(pts, tri_b)
    hull_pts = [pts[verts[k]] for k in hull]
    hull_area = abs(
        (hull_pts[1][0] - hull_pts[0][0]) * (hull_pts[2][1] - hull_pts[0][1])
        - (hull_pts[1][1] - hull_pts[0][1]) * (hull_pts[2][0] - hull_pts[0][0])
    )
    return abs(area - hull_area) <= 1e-9 * max(1, hull_area)


def _tri_area(pts, tri):
    a, b, c = (pts[v] for v in tri)
    return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _hull_indices(points):
    order = sorted(range(len(points)), key=lambda k: points[k])
    def half(seq):
        out = []
        for k in seq:
            while len(out) >= 2:
                o, a = points[out[-2]], points[out[-1]]
                b = points[k]
                if (a[0]-o[0])*(b[1]-o[1]) - (a[1]-o[1])*(b[0]-o[0]) <= 0:
                    out.pop()
                else:
                    break
            out.append(k)
        return out
    lower = half(order)
    upper = half(reversed(order))
    return lower[:-1] + upper[:-1]


def verify_crystallization(config):
    """Evaluate every structural property expected of an energy minimizer.

    Each flag is computed independently; nothing is assumed.  Triangle
    rigidity asks that each triangular face either has both its axis legs
    on crossed squares or pairs with a neighbor triangle into a larger
    triangle.
    """
    g = config if isinstance(config, BondGraph) else build(config)
    fc = enumerate_faces(g)
    pts = g.config.points

    connected = len(connected_components(g)) == 1
    no_wire = all(
        cl not in (EdgeClass.WIRE_INT, EdgeClass.WIRE_EXT)
        for cl in fc.edge_class.values()
    )
    bounded = fc.bounded_faces
    faces_ok = all(f.kind is FaceKind.BOXTIMES or _is_triangle(f) for f in bounded)

    ubd = fc.unbounded
    interiors = [c for c in ubd.boundary_components if c.role is ComponentRole.INTERIOR]
    simple = False
    if len(interiors) == 1 and interiors[0].cycle:
        cyc = interiors[0].cycle
        heads = [u for u, _ in cyc]
        edges = {(min(u, v), max(u, v)) for u, v in cyc}
        simple = len(cyc) >= 3 and len(set(heads)) == len(cyc) and len(edges) == len(cyc)

    min_degree = min(g.degrees)
    defects_ok = all(face_defect(fc, f) in (0, 1) for f in bounded)

    rigidity = True
    for f in bounded:
        if not _is_triangle(f):
            continue
        tri = tuple(f.polygon)
        legs_on_squares = []
        paired = False
        for k in range(3):
            i, j = tri[k], tri[(k + 1) % 3]
            e = (min(i, j), max(i, j))
            other = fc.side[(j, i)] if fc.side[(i, j)] == f.index else fc.side[(i, j)]
            neighbor = fc.faces[other]
            dx = abs(pts[i][0] - pts[j][0])
            dy = abs(pts[i][1] - pts[j][1])
            axis_leg = (dx == 0) != (dy == 0)
            if axis_leg:
                legs_on_squares.append(neighbor.kind is FaceKind.BOXTIMES)
            if _is_triangle(neighbor) and _union_is_triangle(
                pts, tri, tuple(neighbor.polygon)
            ):
                paired = True
        if not ((len(legs_on_squares) == 2 and all(legs_on_squares)) or paired):
            rigidity = False

    return CrystallizationReport(
        connected=connected,
        no_wire_edges=no_wire,
        faces_ok=faces_ok,
        simple_boundary=simple,
        min_degree=min_degree,
        face_defects_ok=defects_ok,
        triangle_rigidity_ok=rigidity,
    )


def monotonicity_check(n_max, **budget):
    """Search 1..n_max and assert the minimum excess never decreases.

    Also asserts the companion statement that the maximal bond count grows
    by at most 4 per added particle.  Returns the list of SearchResults.
    """
    results = [brute_force_min(n, **budget) for n in range(1, n_max + 1)]
    for prev, cur in zip(results, results[1:]):
        if cur.min_excess < prev.min_excess:
            raise InvariantViolation(
                f"min excess dropped from n={prev.n} to n={cur.n}"
            )
        if cur.max_edges > prev.max_edges + 4:
            raise InvariantViolation(
                f"max edges jumped by more than 4 at n={cur.n}"
            )
    return results


def concave_corner_violations(config):
    """Occurrences of the forbidden notch: an empty axis neighbor flanked
    by both of its adjacent diagonal neighbors."""
    pts = set(config.points)
    out = []
    flank = {
        (0, 1): ((1, 1), (-1, 1)),
        (0, -1): ((1, -1), (-1, -1)),
        (1, 0): ((1, 1), (1, -1)),
        (-1, 0): ((-1, 1), (-1, -1)),
    }
    for x, y in pts:
        for (ux, uy), (d1, d2) in flank.items():
            if (x + ux, y + uy) in pts:
                continue
            if (x + d1[0], y + d1[1]) in pts and (x + d2[0], y + d2[1]) in pts:
                out.append(((x, y), (ux, uy)))
    return out


def perturbation_test(config, samples, magnitude, seed=0):
    """Random continuous perturbations of a lattice minimizer.

    Each sample either jitters every point independently by at most
    ``magnitude`` in sup norm or slides one vertex (or one side of a
    bridge split) along an axis, which moves along the flat part of the
    sup-norm unit sphere and can preserve contacts exactly.  No sample may
    strictly decrease the energy; the worst (most negative) finite energy
    delta is returned, with infeasible samples counting as +infinity.
    """
    if magnitude < 0:
        raise OutOfRange("magnitude must be nonnegative")
    rng = random.Random(seed)
    base = build(config)
    e0, _ = energy(base)
    pts = [tuple(map(float, p)) for p in config.points]
    n = len(pts)

    bridges = _bridge_splits(base)
    worst = math.inf

    for _ in range(samples):
        for _attempt in range(10):
            kind = rng.random()
            if kind < 0.7 or magnitude == 0.0:
                moved = [
                    (
                        x + rng.uniform(-magnitude, magnitude),
                        y + rng.uniform(-magnitude, magnitude),
                    )
                    for x, y in pts
                ]
            elif kind < 0.9 or not bridges:
                i = rng.randrange(n)
                t = rng.uniform(-magnitude, magnitude)
                axis = rng.randrange(2)
                moved = list(pts)
                x, y = moved[i]
                moved[i] = (x + t, y) if axis == 0 else (x, y + t)
            else:
                side = rng.choice(bridges)
                t = rng.uniform(-magnitude, magnitude)
                axis = rng.randrange(2)
                dx, dy = (t, 0.0) if axis == 0 else (0.0, t)
                moved = [
                    (x + dx, y + dy) if k in side else (x, y)
                    for k, (x, y) in enumerate(pts)
                ]
            try:
                g1 = build(Configuration.continuous(moved))
            except Infeasible:
                delta = math.inf
                break
            except AmbiguousPredicate:
                continue
            delta = energy(g1)[0] - e0
            break
        else:
            continue
        if delta < worst:
            worst = delta
    if worst < 0:
        raise InvariantViolation(
            f"a perturbation decreased the energy by {-worst}"
        )
    return worst


def _bridge_splits(g):
    """Vertex sets that detach when one bridge edge is removed."""
    splits = []
    for e in g.edges:
        keep = [x for x in g.edges if x != e]
        parent = list(range(g.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in keep:
            parent[find(i)] = find(j)
        if find(e[0]) != find(e[1]):
            side = {v for v in range(g.n) if find(v) == find(e[1])}
            splits.append(frozenset(side))
    return splits
