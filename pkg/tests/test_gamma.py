"""Recovery sequences, convergence sweeps, and symmetric-difference tests."""

from __future__ import annotations

import math
import random

import pytest

from support import random_lattice_config

from supdisk.anisotropy import (
    aniso_perimeter,
    diamond_polygon,
    lshape_polygon,
    square_polygon,
    unit_area_wulff,
)
from supdisk.errors import DegenerateTarget
from supdisk.gamma import (
    LatticeRegion,
    boxtimes_cells,
    boxtimes_region,
    boxtimes_region_perimeter,
    compactness_diagnostics,
    directional_density,
    gamma_sweep,
    lattice_bond_count,
    lattice_excess,
    predicted_densities,
    recovery_sequence,
    rescaled_excess,
    symdiff_area,
)
from supdisk.graph import Configuration, build, connected_components, energy


def test_fast_paths_match_bond_graph():
    rng = random.Random(50)
    for _ in range(60):
        cfg = random_lattice_config(rng, nmax=50)
        g = build(cfg)
        assert lattice_bond_count(cfg) == len(g.edges)
        assert lattice_excess(cfg) == energy(g)[1]
        assert len(boxtimes_cells(cfg)) == len(g.quads)
        side_count = {}
        for q in g.quads:
            for e in q.sides:
                side_count[e] = side_count.get(e, 0) + 1
        per = sum(1 for v in side_count.values() if v == 1)
        assert boxtimes_region_perimeter(cfg) == per


def test_recovery_square_n4_is_block():
    cfg = recovery_sequence(square_polygon(), 4)
    assert cfg.points == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_recovery_cardinality_connectivity():
    rng = random.Random(51)
    shapes = [square_polygon(), diamond_polygon(), unit_area_wulff(), lshape_polygon()]
    for shape in shapes:
        for n in (30, 100, 500):
            cfg = recovery_sequence(shape, n)
            assert len(cfg.points) == n
            assert len(connected_components(build(cfg))) == 1


def test_recovery_degenerate_target():
    thin = square_polygon().scaled(0.01)  # area 1e-4, far too thin for n
    with pytest.raises(DegenerateTarget):
        recovery_sequence(thin, 1000)


def test_rescaled_excess_examples():
    assert rescaled_excess(Configuration.lattice([(0, 0)])) == 8.0
    vals = []
    for m in (5, 10, 20, 40):
        block = [(i, j) for i in range(m) for j in range(m)]
        vals.append(rescaled_excess(Configuration.lattice(block)))
    # blocks approach 12 monotonically: 12 - 4/m
    for m, v in zip((5, 10, 20, 40), vals):
        assert v == pytest.approx(12.0 - 4.0 / m)
    gaps = [abs(v - 12.0) for v in vals]
    assert gaps == sorted(gaps, reverse=True)


def test_symdiff_trivial_cases():
    sq = square_polygon()
    assert symdiff_area(sq, sq) == pytest.approx(0.0)
    shifted = sq.translated((1.0, 0.0))
    assert symdiff_area(sq, shifted) == pytest.approx(2.0)
    region = LatticeRegion(cells=((0, 0),), scale=1.0)
    assert symdiff_area(region, sq) == pytest.approx(0.0)
    assert symdiff_area(region, shifted) == pytest.approx(2.0)


def test_symdiff_lshape():
    l = lshape_polygon()
    assert symdiff_area(l, l) == pytest.approx(0.0)
    assert l.area == pytest.approx(1.0)


def test_boxtimes_region_converges_to_target():
    sq = square_polygon()
    vals = []
    for n in (100, 400, 2500, 10000):
        cfg = recovery_sequence(sq, n)
        vals.append(symdiff_area(boxtimes_region(cfg, n), sq))
    for a, b in zip(vals, vals[1:]):
        assert b <= 2.0 * a  # monotone up to a factor-2 slack
    assert vals[-1] < 0.05


def test_compactness_examples():
    block = Configuration.lattice([(i, j) for i in range(4) for j in range(4)])
    d = compactness_diagnostics(block)
    assert d.count_bound_ok and d.perimeter_bound_ok
    pair = Configuration.lattice([(0, 0), (1, 0)])
    d = compactness_diagnostics(pair)
    assert d.boxtimes_count == 0 and d.excess == 14


def test_directional_density_square():
    rows = directional_density(square_polygon(), 2500)
    for row in rows:
        pred = predicted_densities(row.normal)
        assert pred == row.predicted
        assert sum(pred.values()) == pytest.approx(
            abs(row.normal[0]) + abs(row.normal[1])
            + abs(row.normal[0] + row.normal[1])
            + abs(row.normal[0] - row.normal[1])
        )
        # axis sides: horizontal or vertical density 1, the other 0,
        # both diagonal classes 1
        assert row.max_abs_deviation < 0.06


def test_directional_density_diamond():
    rows = directional_density(diamond_polygon(), 2500)
    for row in rows:
        assert row.predicted["diag_sum"] + row.predicted["diag_diff"] == (
            pytest.approx(math.sqrt(2.0))
        )
        assert row.max_abs_deviation < 0.08


def test_gamma_sweep_square():
    exp = gamma_sweep(square_polygon(), [100, 900, 2500])
    assert exp.target_phi_perimeter == pytest.approx(12.0)
    rs = [r.rescaled_excess for r in exp.records]
    gaps = [abs(v - 12.0) for v in rs]
    assert gaps == sorted(gaps, reverse=True)
    for r in exp.records:
        assert r.cardinality == r.n
        assert r.liminf_ok and r.chebyshev_ok
        assert not math.isnan(r.symdiff)


def test_gamma_sweep_octagon_converges():
    target = aniso_perimeter(unit_area_wulff())
    exp = gamma_sweep(unit_area_wulff(), [400, 1600, 6400])
    last = exp.records[-1]
    assert abs(last.rescaled_excess - target) / target < 0.05
    # error within the calibrated corner-correction envelope
    for r in exp.records:
        assert abs(r.rescaled_excess - target) <= 30.0 / math.sqrt(r.n)


def test_full_sweep_envelope_all_shapes():
    # decade sweep for each reference shape: the rescaled excess stays
    # within the calibrated 30 / sqrt(n) envelope of the target perimeter,
    # and the small-face and face-count inequalities hold at every step
    # (gamma_sweep raises otherwise).
    n_values = [100, 1000, 10_000, 100_000]
    shapes = [square_polygon(), diamond_polygon(), unit_area_wulff(), lshape_polygon()]
    for shape in shapes:
        exp = gamma_sweep(shape, n_values)
        target = exp.target_phi_perimeter
        for r in exp.records:
            assert abs(r.rescaled_excess - target) <= 30.0 / math.sqrt(r.n)
        symdiffs = [r.symdiff for r in exp.records]
        for a, b in zip(symdiffs, symdiffs[1:]):
            assert b <= 2.0 * a
