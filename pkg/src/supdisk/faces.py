"""Face enumeration, edge classification, and region selection.

Faces are computed on the *surface graph*: the bond graph with the two
diagonals of every crossed square removed.  Each crossed square then shows
up as one bounded face of the surface graph and is tagged as such; the
remaining bounded faces are the planar faces, and there is exactly one
unbounded face.

The traversal keeps the face on the right of each directed half-edge, so
the exterior walk of a bounded face is clockwise (negative doubled area)
and every other walk is counterclockwise or area-zero (pure trees).  A
connected component of the graph owns exactly one non-negative walk, its
outer rim; that rim is an interior boundary component of whichever face
contains the component.  Containment is decided by exact ray casting, so
in lattice mode the whole construction is integer arithmetic end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidSelection, InvariantViolation
from .geometry import winding_number


class FaceKind(Enum):
    BOXTIMES = "boxtimes"
    PLANAR = "planar"
    UNBOUNDED = "unbounded"


class EdgeClass(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    WIRE_INT = "wire_int"
    WIRE_EXT = "wire_ext"


class ComponentRole(Enum):
    EXTERIOR = "exterior"
    INTERIOR = "interior"


@dataclass(frozen=True)
class BoundaryComponent:
    """One connected piece of a face boundary.

    ``cycle`` is the oriented closed walk as directed vertex-index pairs;
    wire edges appear twice (once per direction).  A single vertex sitting
    inside the face is a point component with an empty cycle and
    graph-length 0.
    """

    role: ComponentRole
    cycle: tuple
    graph_length: int
    vertices: frozenset


@dataclass
class Face:
    index: int
    kind: FaceKind
    boundary_components: list
    comb_perimeter: int
    boundary_edges: frozenset  # traversed once in this face's walks
    wire_edges: frozenset  # traversed twice in this face's walks
    quad: object = None  # the Quad for a crossed-square face
    polygon: tuple = ()  # exterior walk vertex sequence (bounded faces)
    twice_area: object = None  # doubled area of the open face, None for unbounded

    @property
    def interior_component_count(self):
        return sum(
            1 for c in self.boundary_components if c.role is ComponentRole.INTERIOR
        )

    @property
    def incident_edges(self):
        """All edges lying in the closure of this face."""
        extra = tuple(self.quad.diagonals) if self.quad is not None else ()
        return self.boundary_edges | self.wire_edges | frozenset(extra)

    @property
    def bounded(self):
        return self.kind is not FaceKind.UNBOUNDED


class FaceComplex:
    """Faces of a bond graph plus edge classes and incidence maps."""

    __slots__ = (
        "graph",
        "faces",
        "unbounded",
        "edge_class",
        "side",
        "components",
        "component_of",
        "component_face",
    )

    def __init__(self, graph, faces, unbounded, edge_class, side, components,
                 component_of, component_face):
        self.graph = graph
        self.faces = faces
        self.unbounded = unbounded
        self.edge_class = edge_class
        self.side = side  # directed (u, v) -> face index
        self.components = components  # list of vertex lists
        self.component_of = component_of  # vertex -> component id
        self.component_face = component_face  # component id -> face index

    @property
    def bounded_faces(self):
        return [f for f in self.faces if f.bounded]

    @property
    def boxtimes_faces(self):
        return [f for f in self.faces if f.kind is FaceKind.BOXTIMES]

    @property
    def planar_faces(self):
        return [f for f in self.faces if f.kind is FaceKind.PLANAR]

    def face_of_side(self, u, v):
        return self.faces[self.side[(u, v)]]


def _union_find(n):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    return find, union


def enumerate_faces(g):
    """Build the face complex of an admissible bond graph."""
    if g.crossing_violations:
        raise InvariantViolation(
            f"graph has non-square crossings: {g.crossing_violations[:3]}"
        )
    pts = g.config.points
    n = g.n

    diag = g.diagonal_edges
    surf_adj = []
    surf_pos = []
    for i in range(n):
        lst = [j for j in g.adj[i] if (min(i, j), max(i, j)) not in diag]
        surf_adj.append(lst)
        surf_pos.append({j: k for k, j in enumerate(lst)})

    # Orbits of the face-on-the-right traversal.
    orbits = []  # list of tuples (traversals, twice_area, vertexset, bbox)
    orbit_of = {}  # directed edge -> orbit id
    for u0 in range(n):
        for v0 in surf_adj[u0]:
            if (u0, v0) in orbit_of:
                continue
            oid = len(orbits)
            walk = []
            u, v = u0, v0
            while (u, v) not in orbit_of:
                orbit_of[(u, v)] = oid
                walk.append((u, v))
                lst = surf_adj[v]
                u, v = v, lst[(surf_pos[v][u] + 1) % len(lst)]
            a2 = 0
            xs = []
            ys = []
            for a, b in walk:
                pa, pb = pts[a], pts[b]
                a2 += pa[0] * pb[1] - pa[1] * pb[0]
                xs.append(pa[0])
                ys.append(pa[1])
            orbits.append(
                (
                    tuple(walk),
                    a2,
                    frozenset(a for a, _ in walk),
                    (min(xs), min(ys), max(xs), max(ys)),
                )
            )

    # Graph components (surface edges suffice: diagonals never connect
    # vertices that the sides do not).
    find, union = _union_find(n)
    for i in range(n):
        for j in surf_adj[i]:
            union(i, j)
    comp_id = {}
    component_of = [0] * n
    components = []
    for v in range(n):
        r = find(v)
        if r not in comp_id:
            comp_id[r] = len(components)
            components.append([])
        component_of[v] = comp_id[r]
        components[comp_id[r]].append(v)

    orbit_comp = [component_of[next(iter(o[2]))] for o in orbits]
    # Outer rim of each component: its orbit of maximal doubled area.
    comp_orbits = [[] for _ in components]
    for oid, c in enumerate(orbit_comp):
        comp_orbits[c].append(oid)
    comp_outer = []
    for c, oids in enumerate(comp_orbits):
        if not oids:
            comp_outer.append(None)  # isolated vertex
        else:
            best = max(oids, key=lambda o: orbits[o][1])
            if orbits[best][1] < 0:
                raise InvariantViolation("component outer walk has negative area")
            comp_outer.append(best)

    cw_orbits = [oid for oid, o in enumerate(orbits) if o[1] < 0]

    # Crossed-square lookup by corner set.
    quad_by_corners = {frozenset(q.corners): q for q in g.quads}

    face_of_orbit = {}
    faces = []
    for oid in cw_orbits:
        walk, a2, vset, _ = orbits[oid]
        quad = quad_by_corners.get(vset) if len(walk) == 4 else None
        kind = FaceKind.BOXTIMES if quad is not None else FaceKind.PLANAR
        face_of_orbit[oid] = len(faces)
        faces.append(
            Face(
                index=len(faces),
                kind=kind,
                boundary_components=[
                    BoundaryComponent(
                        role=ComponentRole.EXTERIOR,
                        cycle=walk,
                        graph_length=len(walk),
                        vertices=vset,
                    )
                ],
                comb_perimeter=len(walk),
                boundary_edges=frozenset(),
                wire_edges=frozenset(),
                quad=quad,
                polygon=tuple(a for a, _ in walk),
                twice_area=-a2,
            )
        )
    claimed = sum(1 for f in faces if f.kind is FaceKind.BOXTIMES)
    if claimed != len(g.quads):
        raise InvariantViolation(
            f"{len(g.quads)} crossed squares but {claimed} matching faces"
        )

    ubd_index = len(faces)
    unbounded = Face(
        index=ubd_index,
        kind=FaceKind.UNBOUNDED,
        boundary_components=[],
        comb_perimeter=0,
        boundary_edges=frozenset(),
        wire_edges=frozenset(),
    )
    faces.append(unbounded)

    # Containing face of each component: innermost clockwise walk of a
    # *different* component that winds around a representative vertex.
    component_face = []
    for c, verts in enumerate(components):
        p = pts[verts[0]]
        best = None
        for oid in cw_orbits:
            if orbit_comp[oid] == c:
                continue
            walk, a2, _, bbox = orbits[oid]
            if not (bbox[0] < p[0] < bbox[2] and bbox[1] < p[1] < bbox[3]):
                continue
            if winding_number(walk, pts, p) != 0:
                if best is None or -a2 < -orbits[best][1]:
                    best = oid
        component_face.append(ubd_index if best is None else face_of_orbit[best])

    # Attach every component rim (or point) as an interior boundary
    # component of its containing face.
    for c, verts in enumerate(components):
        fidx = component_face[c]
        outer = comp_outer[c]
        if outer is None:
            bc = BoundaryComponent(
                role=ComponentRole.INTERIOR,
                cycle=(),
                graph_length=0,
                vertices=frozenset(verts),
            )
        else:
            walk, _, vset, _ = orbits[outer]
            bc = BoundaryComponent(
                role=ComponentRole.INTERIOR,
                cycle=walk,
                graph_length=len(walk),
                vertices=vset,
            )
            face_of_orbit[outer] = fidx
            if fidx != ubd_index:
                # The component's rim encloses area that is not part of
                # the face containing it.
                faces[fidx].twice_area -= orbits[outer][1]
        faces[fidx].boundary_components.append(bc)
        faces[fidx].comb_perimeter += bc.graph_length

    # Any remaining walks would be unexpected; every orbit is either the
    # clockwise rim of its own face or the outer rim of a component.
    for oid in range(len(orbits)):
        if oid not in face_of_orbit:
            raise InvariantViolation("walk is neither a face rim nor a component rim")

    # Per-face edge roles from traversal multiplicity, and the side map.
    side = {}
    tally = [dict() for _ in faces]
    for oid, (walk, _, _, _) in enumerate(orbits):
        fidx = face_of_orbit[oid]
        t = tally[fidx]
        for u, v in walk:
            side[(u, v)] = fidx
            e = (u, v) if u < v else (v, u)
            t[e] = t.get(e, 0) + 1
    for f in faces:
        t = tally[f.index]
        f.boundary_edges = frozenset(e for e, k in t.items() if k == 1)
        f.wire_edges = frozenset(e for e, k in t.items() if k == 2)

    # Diagonals of a crossed square belong to that face on both sides.
    # The square interior is on the right of its bottom edge walked
    # right-to-left.
    for q in g.quads:
        fidx = side[(q.corners[1], q.corners[0])]
        for i, j in q.diagonals:
            side[(i, j)] = fidx
            side[(j, i)] = fidx

    edge_class = {}
    for e in g.edges:
        if e in diag:
            edge_class[e] = EdgeClass.INTERIOR
            continue
        f1 = side[e]
        f2 = side[(e[1], e[0])]
        if f1 != f2:
            if f1 == ubd_index or f2 == ubd_index:
                edge_class[e] = EdgeClass.BOUNDARY
            else:
                edge_class[e] = EdgeClass.INTERIOR
        else:
            edge_class[e] = (
                EdgeClass.WIRE_EXT if f1 == ubd_index else EdgeClass.WIRE_INT
            )

    return FaceComplex(
        graph=g,
        faces=faces,
        unbounded=unbounded,
        edge_class=edge_class,
        side=side,
        components=components,
        component_of=component_of,
        component_face=component_face,
    )


def classify_edges(fc):
    """Edge class map (computed during enumeration)."""
    return fc.edge_class


def boundary_components(fc, face):
    """Boundary components of a face, exterior first for bounded faces."""
    comps = list(face.boundary_components)
    comps.sort(key=lambda c: c.role is not ComponentRole.EXTERIOR)
    return comps


@dataclass(frozen=True)
class RegionSelection:
    """A face selection S with the geometry of the union of its closures."""

    complex: FaceComplex
    selected: frozenset  # face indices
    boundary_edges: frozenset  # edges lying in the topological boundary
    exterior_edges: frozenset  # edges meeting the region in at most 2 points
    component_count: int  # components of region plus all bonds plus all points

    @property
    def comb_perimeter(self):
        return len(self.boundary_edges)


def select_region(fc, selection):
    """Materialize the union of the selected bounded faces' closures.

    The selection must contain every crossed-square face and only bounded
    faces.  The returned component count is verified against the sum of
    interior-component counts of the unselected faces, which must agree by
    the double-counting identity.
    """
    sel = frozenset(f.index if isinstance(f, Face) else int(f) for f in selection)
    ubd = fc.unbounded.index
    for idx in sel:
        if idx == ubd or not (0 <= idx < len(fc.faces)):
            raise InvalidSelection(f"face {idx} is not a bounded face")
    for f in fc.boxtimes_faces:
        if f.index not in sel:
            raise InvalidSelection(f"crossed-square face {f.index} not selected")

    boundary = []
    exterior = []
    for e in fc.graph.edges:
        s1 = fc.side[e] in sel
        s2 = fc.side[(e[1], e[0])] in sel
        if s1 != s2:
            boundary.append(e)
        elif not s1:
            exterior.append(e)

    find, union = _union_find(fc.graph.n)
    for i, j in fc.graph.edges:
        union(i, j)
    for idx in sel:
        face = fc.faces[idx]
        anchor = None
        for bc in face.boundary_components:
            for v in bc.vertices:
                if anchor is None:
                    anchor = v
                else:
                    union(anchor, v)
    count = len({find(v) for v in range(fc.graph.n)})

    unselected_interiors = sum(
        f.interior_component_count for f in fc.faces if f.index not in sel
    )
    if unselected_interiors != count:
        raise InvariantViolation(
            f"double-counting identity failed: {unselected_interiors} != {count}"
        )

    return RegionSelection(
        complex=fc,
        selected=sel,
        boundary_edges=frozenset(boundary),
        exterior_edges=frozenset(exterior),
        component_count=count,
    )


def comb_perimeter_region(sel):
    """Number of edges lying in the topological boundary of the region."""
    return len(sel.boundary_edges)
