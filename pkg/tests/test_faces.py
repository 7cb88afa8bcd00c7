"""Face enumeration, edge classification, and region selection tests."""

from __future__ import annotations

import random

import pytest

from support import (
    flood_fill_planar_face_count,
    random_lattice_config,
    random_selection,
)

from supdisk.errors import InvalidSelection
from supdisk.faces import (
    ComponentRole,
    EdgeClass,
    FaceKind,
    boundary_components,
    comb_perimeter_region,
    enumerate_faces,
    select_region,
)
from supdisk.graph import Configuration, build, connected_components

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
RING5 = (
    [(i, 0) for i in range(6)]
    + [(i, 5) for i in range(6)]
    + [(0, j) for j in range(1, 5)]
    + [(5, j) for j in range(1, 5)]
)


def faces_of(points):
    return enumerate_faces(build(Configuration.lattice(points)))


def test_square_faces():
    fc = faces_of(SQUARE)
    assert len(fc.boxtimes_faces) == 1
    assert len(fc.planar_faces) == 0
    assert fc.unbounded.kind is FaceKind.UNBOUNDED
    assert fc.boxtimes_faces[0].comb_perimeter == 4
    assert fc.boxtimes_faces[0].twice_area == 2


def test_triangle_face():
    fc = faces_of([(0, 0), (1, 0), (0, 1)])
    assert len(fc.planar_faces) == 1
    assert fc.planar_faces[0].comb_perimeter == 3


def test_continuous_triangle_face():
    cfg = Configuration.continuous([(0.0, 0.0), (1.0, 0.0), (0.3, 1.0)])
    fc = enumerate_faces(build(cfg))
    assert len(fc.planar_faces) == 1
    assert fc.planar_faces[0].comb_perimeter == 3


def test_2x2_block_faces_and_euler():
    pts = [(i, j) for i in range(3) for j in range(3)]
    fc = faces_of(pts)
    assert len(fc.boxtimes_faces) == 4
    assert len(fc.planar_faces) == 0
    g = fc.graph
    chi = g.n - len(g.edges) + len(fc.faces)
    assert chi == 1 + len(connected_components(g)) - 2 * len(g.quads)


def test_edge_classes_square():
    fc = faces_of(SQUARE)
    classes = sorted(c.value for c in fc.edge_class.values())
    assert classes == ["boundary"] * 4 + ["interior"] * 2
    for e in fc.graph.diagonal_edges:
        assert fc.edge_class[e] is EdgeClass.INTERIOR


def test_edge_classes_wires():
    fc = faces_of([(0, 0), (1, 0)])
    assert list(fc.edge_class.values()) == [EdgeClass.WIRE_EXT]
    fc = faces_of([(0, 0), (1, 0), (2, 0)])
    assert list(fc.edge_class.values()) == [EdgeClass.WIRE_EXT] * 2
    fc = faces_of([(0, 0), (1, 0), (0, 1)])
    assert sorted(c.value for c in fc.edge_class.values()) == ["boundary"] * 3


def test_wire_inside_hole_is_wire_int():
    pts = RING5 + [(2, 2), (3, 2)]
    fc = faces_of(pts)
    pair_edge = tuple(
        sorted(
            (
                fc.graph.config.points.index((2, 2)),
                fc.graph.config.points.index((3, 2)),
            )
        )
    )
    assert fc.edge_class[pair_edge] is EdgeClass.WIRE_INT


def test_unbounded_components_of_isolated_and_pair():
    fc = faces_of([(4, 4)])
    comps = boundary_components(fc, fc.unbounded)
    assert len(comps) == 1
    assert comps[0].role is ComponentRole.INTERIOR
    assert comps[0].graph_length == 0

    fc = faces_of([(0, 0), (1, 0)])
    comps = boundary_components(fc, fc.unbounded)
    assert len(comps) == 1
    assert comps[0].graph_length == 2  # wire traversed twice


def test_annulus_hole_with_island():
    # A hollow ring with an isolated vertex in the hole: the hole face has
    # an exterior component and one interior point component.
    pts = RING5 + [(2, 2)]
    fc = faces_of(pts)
    holes = [
        f
        for f in fc.planar_faces
        if any(c.role is ComponentRole.INTERIOR for c in f.boundary_components)
    ]
    assert len(holes) == 1
    hole = holes[0]
    comps = boundary_components(fc, hole)
    assert comps[0].role is ComponentRole.EXTERIOR
    assert [c.graph_length for c in comps[1:]] == [0]


def test_face_count_against_flood_fill_oracle():
    rng = random.Random(21)
    for _ in range(40):
        cfg = random_lattice_config(rng, nmax=16)
        fc = enumerate_faces(build(cfg))
        assert len(fc.planar_faces) == flood_fill_planar_face_count(cfg)


def test_face_count_flood_fill_on_ring():
    cfg = Configuration.lattice(RING5)
    fc = enumerate_faces(build(cfg))
    assert len(fc.planar_faces) == flood_fill_planar_face_count(cfg)
    assert len(fc.planar_faces) == 5  # hole face plus four corner triangles


def test_euler_identity_fuzz():
    rng = random.Random(22)
    for _ in range(800):
        cfg = random_lattice_config(rng, nmax=45)
        g = build(cfg)
        fc = enumerate_faces(g)
        chi = g.n - len(g.edges) + len(fc.faces)
        assert chi == 1 + len(connected_components(g)) - 2 * len(g.quads)


def test_edge_classes_partition_fuzz():
    rng = random.Random(23)
    for _ in range(500):
        cfg = random_lattice_config(rng, nmax=45)
        g = build(cfg)
        fc = enumerate_faces(g)
        assert set(fc.edge_class) == set(g.edges)


def test_face_areas_tile_fuzz():
    # Total bounded face area equals the area enclosed by the outer rims
    # of the top-level components, an exact integer identity.
    rng = random.Random(24)
    for _ in range(300):
        cfg = random_lattice_config(rng, nmax=45)
        fc = enumerate_faces(build(cfg))
        total = sum(f.twice_area for f in fc.bounded_faces)
        rims = sum(
            c.graph_length and _walk_area2(fc, c)
            for c in fc.unbounded.boundary_components
        )
        assert total == rims


def _walk_area2(fc, comp):
    pts = fc.graph.config.points
    s = 0
    for u, v in comp.cycle:
        pu, pv = pts[u], pts[v]
        s += pu[0] * pv[1] - pu[1] * pv[0]
    return s


def test_select_region_examples():
    # Connected crystallized block, everything selected.
    pts = [(i, j) for i in range(3) for j in range(3)]
    fc = faces_of(pts)
    sel = select_region(fc, [f.index for f in fc.bounded_faces])
    assert sel.component_count == 1
    assert sel.exterior_edges == frozenset()
    assert comb_perimeter_region(sel) == 8

    # Empty selection on a bonded pair.
    fc = faces_of([(0, 0), (1, 0)])
    sel = select_region(fc, [])
    assert sel.component_count == 1
    assert len(sel.exterior_edges) == 1
    assert comb_perimeter_region(sel) == 0


def test_select_region_requires_boxtimes():
    fc = faces_of(SQUARE)
    with pytest.raises(InvalidSelection):
        select_region(fc, [])
    with pytest.raises(InvalidSelection):
        select_region(fc, [fc.unbounded.index])


def test_double_counting_identity_fuzz():
    # select_region verifies the identity internally; exercise it across
    # random graphs and random selections.
    rng = random.Random(25)
    for _ in range(600):
        cfg = random_lattice_config(rng, nmax=45)
        fc = enumerate_faces(build(cfg))
        select_region(fc, random_selection(rng, fc))
        select_region(fc, [f.index for f in fc.boxtimes_faces])
        select_region(fc, [f.index for f in fc.bounded_faces])


def test_boxtimes_region_comb_perimeter():
    fc = faces_of(SQUARE)
    sel = select_region(fc, [f.index for f in fc.boxtimes_faces])
    assert comb_perimeter_region(sel) == 4


def test_bounded_planar_exterior_length_at_least_three():
    rng = random.Random(26)
    for _ in range(300):
        cfg = random_lattice_config(rng, nmax=40)
        fc = enumerate_faces(build(cfg))
        for f in fc.planar_faces:
            ext = [
                c
                for c in f.boundary_components
                if c.role is ComponentRole.EXTERIOR
            ]
            assert len(ext) == 1
            assert ext[0].graph_length >= 3
