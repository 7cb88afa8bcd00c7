"""Recovery sequences, rescaled-excess sweeps, and compactness diagnostics.

A recovery configuration for a target polygon E of area 1 is the lattice
intersection of sqrt(n) * E with the particle count corrected to exactly n.
The correction adds or removes whole rows flush along the longest
axis-parallel boundary run, which costs O(1) excess per row and keeps the
perimeter perturbation O(sqrt(deficit)).  Large sweeps use vectorized bond
counting; the slow bond-graph path is cross-checked against it in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .anisotropy import PolygonalSet, aniso_perimeter, region_phi_perimeter
from .errors import DegenerateTarget, InvariantViolation, OutOfRange
from .faces import enumerate_faces, select_region
from .graph import Configuration, build

_SHIFT_X = 0.5e-7
_SHIFT_Y = 1.37e-7  # distinct irrational-ish shifts break boundary ties

_BOND_DIRS = ((1, 0), (0, 1), (1, 1), (1, -1))


def _as_array(x):
    if isinstance(x, Configuration):
        return np.asarray(x.points, dtype=np.int64)
    a = np.asarray(x, dtype=np.int64)
    if a.ndim != 2 or a.shape[1] != 2:
        raise OutOfRange("expected an (n, 2) array of lattice points")
    return a


_KEY_BASE = np.int64(1) << 25
_KEY_MOD = np.int64(1) << 26


def _keys(arr):
    # Injective and nonnegative for |coord| < 2**25.
    return (arr[:, 0] + _KEY_BASE) * _KEY_MOD + (arr[:, 1] + _KEY_BASE)


def _unkeys(keys):
    xs = keys // _KEY_MOD - _KEY_BASE
    ys = keys % _KEY_MOD - _KEY_BASE
    return np.stack([xs, ys], axis=1)


def _key_delta(dx, dy):
    return np.int64(dx) * _KEY_MOD + np.int64(dy)


def lattice_bond_count(points):
    """Number of sup-distance-1 pairs in a set of lattice points."""
    arr = _as_array(points)
    if len(arr) == 0:
        return 0
    keys = np.sort(_keys(arr))
    total = 0
    for dx, dy in _BOND_DIRS:
        shifted = np.sort(_keys(arr + np.array([dx, dy], dtype=np.int64)))
        total += len(np.intersect1d(keys, shifted, assume_unique=True))
    return int(total)


def lattice_excess(points):
    """Excess energy ``8 n - 2 #bonds`` of a lattice point set."""
    arr = _as_array(points)
    return 8 * len(arr) - 2 * lattice_bond_count(arr)


def rescaled_excess(points):
    """``F(X) / sqrt(#X)``, the quantity converging to an anisotropic perimeter."""
    arr = _as_array(points)
    return lattice_excess(arr) / math.sqrt(len(arr))


def boxtimes_cells(points):
    """Lower-left corners of fully occupied unit cells (the crossed squares)."""
    arr = _as_array(points)
    if len(arr) < 4:
        return arr[:0]
    keys = np.sort(_keys(arr))
    cur = keys
    for dx, dy in ((1, 0), (0, 1), (1, 1)):
        cur = np.intersect1d(cur, keys - _key_delta(dx, dy), assume_unique=True)
    return _unkeys(cur)


def boxtimes_region_perimeter(points):
    """Edges on the boundary of the union of the closed crossed squares."""
    cells = boxtimes_cells(points)
    if len(cells) == 0:
        return 0
    k = np.sort(_keys(cells))
    total = 0
    for d in ((0, 1), (1, 0)):
        shifted = np.sort(_keys(cells + np.array(d, dtype=np.int64)))
        inter = len(np.intersect1d(k, shifted, assume_unique=True))
        total += 2 * (len(cells) - inter)
    return int(total)


@dataclass(frozen=True)
class CompactnessDiagnostics:
    n: int
    excess: int
    boxtimes_count: int
    boxtimes_perimeter: int
    count_bound_ok: bool  # #squares >= n - excess
    perimeter_bound_ok: bool  # perimeter <= 7 * excess


def compactness_diagnostics(points):
    """Check the two compactness bounds on any lattice point set.

    Both always hold for feasible configurations; a failure raises.
    """
    arr = _as_array(points)
    n = len(arr)
    f = lattice_excess(arr)
    nb = len(boxtimes_cells(arr))
    per = boxtimes_region_perimeter(arr)
    diag = CompactnessDiagnostics(
        n=n,
        excess=f,
        boxtimes_count=nb,
        boxtimes_perimeter=per,
        count_bound_ok=nb >= n - f,
        perimeter_bound_ok=per <= 7 * f,
    )
    if not (diag.count_bound_ok and diag.perimeter_bound_ok):
        raise InvariantViolation(f"compactness bound violated: {diag}")
    return diag


def digitize(target, n):
    """Lattice points of ``sqrt(n) * target`` under the half-open rule.

    A lattice point counts when a fixed tiny up-right shift of it lies in
    the region, which includes lower/left boundary points and excludes
    upper/right ones, making the count deterministic.
    """
    lam = math.sqrt(n)
    scaled = target.scaled(lam)
    xs0 = math.floor(min(x for ring in scaled.rings for x, _ in ring)) - 1
    xs1 = math.ceil(max(x for ring in scaled.rings for x, _ in ring)) + 1
    ys0 = math.floor(min(y for ring in scaled.rings for _, y in ring)) - 1
    ys1 = math.ceil(max(y for ring in scaled.rings for _, y in ring)) + 1
    gx, gy = np.meshgrid(
        np.arange(xs0, xs1 + 1, dtype=np.int64),
        np.arange(ys0, ys1 + 1, dtype=np.int64),
        indexing="ij",
    )
    px = gx.ravel().astype(np.float64) + _SHIFT_X
    py = gy.ravel().astype(np.float64) + _SHIFT_Y
    inside = np.zeros(px.shape, dtype=bool)
    for piece in scaled.pieces():
        inside |= _inside_convex(px, py, piece)
    pts = np.stack([gx.ravel()[inside], gy.ravel()[inside]], axis=1)
    return pts


def _inside_convex(px, py, ring):
    ok = np.ones(px.shape, dtype=bool)
    m = len(ring)
    for k in range(m):
        ax, ay = ring[k]
        bx, by = ring[(k + 1) % m]
        ok &= (bx - ax) * (py - ay) - (by - ay) * (px - ax) > 0
    return ok


def _boundary_runs(pts_set, arr):
    """Longest contiguous same-row or same-column run of boundary points
    with an empty outward neighbor; returns (length, cells, outward)."""
    best = None
    for outward, group_axis in (((0, 1), 1), ((0, -1), 1), ((1, 0), 0), ((-1, 0), 0)):
        # Group by the coordinate perpendicular to the run direction.
        rows = {}
        ox, oy = outward
        for x, y in arr:
            if (x + ox, y + oy) not in pts_set:
                key = y if group_axis == 1 else x
                rows.setdefault(key, []).append(x if group_axis == 1 else y)
        for key, vals in rows.items():
            vals.sort()
            start = 0
            for k in range(1, len(vals) + 1):
                if k == len(vals) or vals[k] != vals[k - 1] + 1:
                    run_len = k - start
                    if best is None or run_len > best[0]:
                        if group_axis == 1:
                            cells = [(v, key) for v in vals[start:k]]
                        else:
                            cells = [(key, v) for v in vals[start:k]]
                        best = (run_len, cells, outward)
                    start = k
    return best


def recovery_sequence(target, n):
    """Feasible, connected lattice configuration of exactly n points near
    ``sqrt(n) * target``.

    Deficit points are added as whole rows flush along the longest
    axis-parallel boundary run; surplus points are removed in reverse
    raster order, i.e. from the top row rightmost first.
    """
    if n < 1:
        raise OutOfRange("n must be positive")
    pts = digitize(target, n)
    if len(pts) < max(1, n // 2):
        raise DegenerateTarget(
            f"scaled target holds {len(pts)} lattice points, need {n}"
        )
    pset = {(int(x), int(y)) for x, y in pts}
    deficit = n - len(pset)
    if deficit > 0:
        while deficit > 0:
            run = _boundary_runs(pset, sorted(pset))
            if run is None:
                raise DegenerateTarget("no boundary run to attach a patch to")
            _, cells, (ox, oy) = run
            placed = 0
            for x, y in cells:
                if deficit - placed == 0:
                    break
                q = (x + ox, y + oy)
                if q not in pset:
                    pset.add(q)
                    placed += 1
            if placed == 0:
                raise DegenerateTarget("cardinality patch cannot grow")
            deficit -= placed
    elif deficit < 0:
        order = sorted(pset, key=lambda p: (p[1], p[0]), reverse=True)
        for p in order[: -deficit]:
            pset.remove(p)
    return Configuration.lattice(sorted(pset))


@dataclass(frozen=True)
class LatticeRegion:
    """Union of closed unit cells (given by lower-left corners) at a scale."""

    cells: tuple
    scale: float = 1.0

    @property
    def area(self):
        return len(self.cells) * self.scale * self.scale


def _clip_convex(poly, clip):
    """Sutherland-Hodgman clip of a polygon against a convex CCW window."""
    out = list(poly)
    m = len(clip)
    for k in range(m):
        if not out:
            return []
        ax, ay = clip[k]
        bx, by = clip[(k + 1) % m]
        dxl, dyl = bx - ax, by - ay

        def inside(p):
            return dxl * (p[1] - ay) - dyl * (p[0] - ax) >= 0

        def intersect(p, q):
            sx, sy = q[0] - p[0], q[1] - p[1]
            denom = dxl * sy - dyl * sx
            t = (dyl * (p[0] - ax) - dxl * (p[1] - ay)) / denom
            return (p[0] + t * sx, p[1] + t * sy)

        cur = out
        out = []
        s = cur[-1]
        for e in cur:
            if inside(e):
                if not inside(s):
                    out.append(intersect(s, e))
                out.append(e)
            elif inside(s):
                out.append(intersect(s, e))
            s = e
    return out


def _poly_area(poly):
    s = 0.0
    m = len(poly)
    for k in range(m):
        ax, ay = poly[k]
        bx, by = poly[(k + 1) % m]
        s += ax * by - ay * bx
    return abs(s) / 2.0


def symdiff_area(a, b):
    """Exact area of the symmetric difference of two regions.

    Supports a lattice-cell union against a polygonal set (the main use:
    rescaled crossed-square regions against the target) and two polygonal
    sets whose convex pieces are disjoint.
    """
    if isinstance(a, PolygonalSet) and isinstance(b, PolygonalSet):
        inter = 0.0
        for pa in a.pieces():
            for pb in b.pieces():
                clipped = _clip_convex(pa, pb)
                if len(clipped) >= 3:
                    inter += _poly_area(clipped)
        return a.area + b.area - 2.0 * inter
    if isinstance(b, LatticeRegion):
        a, b = b, a
    if not isinstance(a, LatticeRegion) or not isinstance(b, PolygonalSet):
        raise OutOfRange("unsupported operand types for symdiff_area")
    s = a.scale
    cells = np.asarray(a.cells, dtype=np.float64)
    inter = 0.0
    straddlers = np.ones(len(cells), dtype=bool)
    # Cells with all four corners strictly inside one convex piece lie
    # fully inside it (pieces are disjoint), so only boundary cells need
    # exact clipping.
    for piece in b.pieces():
        full = np.ones(len(cells), dtype=bool)
        for ox, oy in ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)):
            full &= _inside_convex(
                (cells[:, 0] + ox) * s, (cells[:, 1] + oy) * s, piece
            )
        inter += float(np.count_nonzero(full)) * s * s
        straddlers &= ~full
    for cx, cy in cells[straddlers]:
        cell = (
            (cx * s, cy * s),
            ((cx + 1) * s, cy * s),
            ((cx + 1) * s, (cy + 1) * s),
            (cx * s, (cy + 1) * s),
        )
        for piece in b.pieces():
            clipped = _clip_convex(cell, piece)
            if len(clipped) >= 3:
                inter += _poly_area(clipped)
    return a.area + b.area - 2.0 * inter


def boxtimes_region(points, n=None):
    """Crossed-square region of a point set, rescaled by 1/sqrt(n)."""
    arr = _as_array(points)
    cells = boxtimes_cells(arr)
    count = len(arr) if n is None else n
    return LatticeRegion(
        cells=tuple((int(x), int(y)) for x, y in cells),
        scale=1.0 / math.sqrt(count),
    )


_CLASS_DIRS = {
    "horizontal": ((1, 0), (-1, 0)),
    "vertical": ((0, 1), (0, -1)),
    "diag_sum": ((1, 1), (-1, -1)),  # density |n1 + n2|
    "diag_diff": ((1, -1), (-1, 1)),  # density |n1 - n2|
}


def predicted_densities(normal):
    n1, n2 = normal
    return {
        "horizontal": abs(n1),
        "vertical": abs(n2),
        "diag_sum": abs(n1 + n2),
        "diag_diff": abs(n1 - n2),
    }


@dataclass(frozen=True)
class SideDensity:
    side_index: int
    normal: tuple
    length: float
    measured: dict
    predicted: dict

    @property
    def max_abs_deviation(self):
        return max(
            abs(self.measured[k] - self.predicted[k]) for k in self.measured
        )


def directional_density(target, n, corner_margin=3.0):
    """Measured missing-bond densities per polygon side and direction class.

    Works on the raw digitization of ``sqrt(n) * target`` (no cardinality
    patch, which would locally distort one side).  Each missing bond slot
    is attributed to the nearest polygon side; slots within
    ``corner_margin`` lattice units of a polygon vertex are excluded and
    the side length is shortened accordingly, so the figure measures the
    mid-side density.  The four predicted densities always sum to phi of
    the side normal.
    """
    lam = math.sqrt(n)
    pts = digitize(target, n)
    pset = {(int(x), int(y)) for x, y in pts}
    ring = target.rings[0]
    m = len(ring)
    sides = []
    for k in range(m):
        a = (ring[k][0] * lam, ring[k][1] * lam)
        b = (ring[(k + 1) % m][0] * lam, ring[(k + 1) % m][1] * lam)
        sides.append((a, b))
    counts = [dict.fromkeys(_CLASS_DIRS, 0) for _ in sides]

    def nearest_side(p):
        best_k, best_d = -1, math.inf
        for k, (a, b) in enumerate(sides):
            d = _point_segment_dist(p, a, b)
            if d < best_d:
                best_k, best_d = k, d
        return best_k

    for x, y in pset:
        missing = []
        for cls, dirs in _CLASS_DIRS.items():
            for dx, dy in dirs:
                if (x + dx, y + dy) not in pset:
                    missing.append(cls)
        if not missing:
            continue
        k = nearest_side((x, y))
        a, b = sides[k]
        if (
            math.dist((x, y), a) < corner_margin
            or math.dist((x, y), b) < corner_margin
        ):
            continue
        for cls in missing:
            counts[k][cls] += 1

    out = []
    for k, (a, b) in enumerate(sides):
        seg_len = math.dist(a, b)
        eff_len = max(seg_len - 2.0 * corner_margin, 1.0)
        nrm = target.outward_normal(ring[k], ring[(k + 1) % m])
        pred = predicted_densities(nrm)
        meas = {cls: counts[k][cls] / eff_len for cls in _CLASS_DIRS}
        out.append(
            SideDensity(
                side_index=k,
                normal=nrm,
                length=seg_len / lam,
                measured=meas,
                predicted=pred,
            )
        )
    return out


def _point_segment_dist(p, a, b):
    px, py = p
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


@dataclass
class GammaRecord:
    n: int
    cardinality: int
    excess: int
    rescaled_excess: float
    symdiff: float = math.nan
    liminf_ok: bool = True
    liminf_lhs: float = math.nan
    liminf_rhs: float = math.nan
    chebyshev_ok: bool = True


@dataclass
class GammaExperiment:
    """A rescaled-excess sweep toward the anisotropic perimeter of a target."""

    target: PolygonalSet
    target_phi_perimeter: float
    records: list = field(default_factory=list)


def liminf_check(config, beta=0.25):
    """Rescaled anisotropic perimeter of the small-face region against the
    rescaled excess plus the vanishing correction term.

    Selects the crossed squares together with every bounded face of
    combinatorial perimeter at most n**beta; with the excess constant
    instantiated per configuration the bound is self-contained.
    """
    g = build(config)
    n = g.n
    fc = enumerate_faces(g)
    cutoff = n ** beta
    sel = [
        f.index
        for f in fc.bounded_faces
        if f.quad is not None or f.comb_perimeter <= cutoff
    ]
    region = select_region(fc, sel)
    f_total = sum(8 - d for d in g.degrees)
    c = f_total / math.sqrt(n)
    lhs = region_phi_perimeter(region) / math.sqrt(n)
    rhs = f_total / math.sqrt(n) + 64.0 * c * n ** (-beta)
    big_faces = sum(1 for f in fc.faces if f.comb_perimeter > cutoff)
    cheb_ok = big_faces <= 8.0 * c * n ** (0.5 - beta)
    return lhs, rhs, lhs <= rhs + 1e-9, cheb_ok


def gamma_sweep(target, n_values, *, beta=0.25, faces_up_to=200_000,
                symdiff_up_to=200_000):
    """Run recovery configurations for each n and collect convergence data."""
    exp = GammaExperiment(
        target=target, target_phi_perimeter=aniso_perimeter(target)
    )
    for n in n_values:
        cfg = recovery_sequence(target, n)
        arr = _as_array(cfg)
        compactness_diagnostics(arr)
        f = lattice_excess(arr)
        rec = GammaRecord(
            n=n,
            cardinality=len(arr),
            excess=f,
            rescaled_excess=f / math.sqrt(n),
        )
        if len(arr) != n:
            raise InvariantViolation("recovery cardinality drifted")
        if n <= symdiff_up_to:
            rec.symdiff = symdiff_area(boxtimes_region(arr, n), target)
        if n <= faces_up_to:
            lhs, rhs, ok, cheb = liminf_check(cfg, beta=beta)
            rec.liminf_lhs, rec.liminf_rhs, rec.liminf_ok = lhs, rhs, ok
            rec.chebyshev_ok = cheb
            if not ok or not cheb:
                raise InvariantViolation(f"sweep inequality failed at n={n}")
        exp.records.append(rec)
    return exp
