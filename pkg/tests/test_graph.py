"""Bond graph construction, admissibility, and energy tests."""

from __future__ import annotations

import random

import pytest

from support import naive_edge_count, random_lattice_config

from supdisk.errors import DuplicatePoint, Infeasible
from supdisk.graph import (
    Configuration,
    build,
    check_admissibility,
    connected_components,
    energy,
)

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_build_square_has_six_edges_and_one_quad():
    g = build(Configuration.lattice(SQUARE))
    assert len(g.edges) == 6
    assert len(g.quads) == 1
    assert len(g.diagonal_edges) == 2


def test_build_far_pair_has_no_edges():
    g = build(Configuration.lattice([(0, 0), (2, 0)]))
    assert g.edges == []


def test_build_infeasible_pair_raises_with_pair():
    with pytest.raises(Infeasible) as exc:
        build(Configuration.continuous([(0.0, 0.0), (0.5, 0.5)]))
    assert exc.value.pair == (0, 1)


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePoint):
        Configuration.lattice([(0, 0), (0, 0)])


def test_energy_examples():
    assert energy(build(Configuration.lattice(SQUARE))) == (-6, 20)
    assert energy(build(Configuration.lattice([(3, 3)]))) == (0, 8)
    assert energy(build(Configuration.lattice([(0, 0), (1, 1)]))) == (-1, 14)


def test_connected_components_examples():
    assert len(connected_components(build(Configuration.lattice([(0, 0), (1, 0)])))) == 1
    assert len(connected_components(build(Configuration.lattice([(0, 0), (5, 5)])))) == 2
    far = SQUARE + [(9, 9)]
    assert len(connected_components(build(Configuration.lattice(far)))) == 2


def test_edge_count_matches_naive_oracle():
    rng = random.Random(10)
    for _ in range(300):
        cfg = random_lattice_config(rng, nmax=40)
        g = build(cfg)
        assert len(g.edges) == naive_edge_count(cfg.points)


def test_crystal_center_degree_eight_fan():
    pts = [(i, j) for i in range(3) for j in range(3)]
    g = build(Configuration.lattice(pts))
    center = pts.index((1, 1))
    assert g.degree(center) == 8
    rep = check_admissibility(g)
    assert rep.admissible
    assert len(rep.boxtimes_quads) == 4


def test_degree_eight_neighbors_form_crystal_stencil():
    rng = random.Random(11)
    seen_deg8 = 0
    for _ in range(400):
        cfg = random_lattice_config(rng, nmax=40)
        g = build(cfg)
        pts = cfg.points
        for i in range(g.n):
            if g.degree(i) == 8:
                seen_deg8 += 1
                x, y = pts[i]
                stencil = {
                    (x + dx, y + dy)
                    for dx in (-1, 0, 1)
                    for dy in (-1, 0, 1)
                    if (dx, dy) != (0, 0)
                }
                assert {pts[j] for j in g.neighbors(i)} == stencil
    assert seen_deg8 > 10


def test_admissibility_fuzz():
    # Feasible configurations always come back clean: degree at most 8,
    # every proper crossing a crossed square, every fan angle >= pi/4.
    rng = random.Random(12)
    for _ in range(4000):
        cfg = random_lattice_config(rng, nmax=25)
        rep = check_admissibility(build(cfg))
        assert rep.md_violations == []
        assert rep.ce_violations == []
        assert rep.angle_violations == []


def test_excess_nonnegative_and_positive_for_finite_sets():
    rng = random.Random(13)
    for _ in range(200):
        cfg = random_lattice_config(rng, nmax=50)
        _, f = energy(build(cfg))
        assert f > 0  # boundary vertices always exist


def test_continuous_build_guard_band_bond():
    # a distance within the guard band of 1 from below still bonds
    g = build(Configuration.continuous([(0.0, 0.0), (1.0 - 1e-10, 0.0)]))
    assert len(g.edges) == 1
    g = build(Configuration.continuous([(0.0, 0.0), (1.0 + 1e-10, 0.0)]))
    assert len(g.edges) == 1
    g = build(Configuration.continuous([(0.0, 0.0), (1.0 + 1e-6, 0.0)]))
    assert len(g.edges) == 0


def test_continuous_quads_detected():
    g = build(Configuration.continuous([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]))
    assert len(g.quads) == 1
    rep = check_admissibility(g)
    assert rep.admissible


def test_max_degree_fuzz():
    rng = random.Random(14)
    for _ in range(2000):
        cfg = random_lattice_config(rng, nmax=30)
        g = build(cfg)
        assert max(g.degrees) <= 8
