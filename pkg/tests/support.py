"""Shared fuzz generators and independent oracles for the test suite."""

from __future__ import annotations

from supdisk.graph import Configuration

KING = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))
TRI_STEPS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def random_lattice_points(rng, n=None, nmax=60):
    """Mixed-style random finite lattice sets: dense, connected, sparse, holey."""
    if n is None:
        n = rng.randint(1, nmax)
    style = rng.randrange(4)
    pts = set()
    if style == 0:
        k = max(2, int((n * rng.uniform(1.0, 3.0)) ** 0.5) + 1)
        while len(pts) < n:
            pts.add((rng.randrange(k), rng.randrange(k)))
    elif style == 1:
        cur = (0, 0)
        pts.add(cur)
        frontier = [cur]
        while len(pts) < n:
            base = frontier[rng.randrange(len(frontier))]
            d = KING[rng.randrange(8)]
            q = (base[0] + d[0], base[1] + d[1])
            if q not in pts:
                pts.add(q)
                frontier.append(q)
    elif style == 2:
        k = max(3, int(n * rng.uniform(1.5, 4.0)))
        while len(pts) < n:
            pts.add((rng.randrange(k), rng.randrange(k)))
    else:
        k = max(2, int(n ** 0.5) + 1)
        cells = [(i, j) for i in range(k) for j in range(k)]
        rng.shuffle(cells)
        pts = set(cells[:n])
    return sorted(pts)


def random_lattice_config(rng, n=None, nmax=60):
    return Configuration.lattice(random_lattice_points(rng, n, nmax))


def random_selection(rng, fc):
    """A valid random face selection: all crossed squares, a coin per planar face."""
    sel = [f.index for f in fc.boxtimes_faces]
    for f in fc.planar_faces:
        if rng.random() < 0.5:
            sel.append(f.index)
    return sel


def random_triangular_graph(rng, nmax=50, drop_edges=True):
    """Random triangular-lattice subset in integer basis coordinates.

    Points live on the lattice spanned by (1, 0) and (1/2, sqrt(3)/2);
    in basis coordinates the six unit neighbors are TRI_STEPS.  Randomly
    dropping bonds produces wires, trees, and holes.
    """
    n = rng.randint(1, nmax)
    style = rng.randrange(3)
    pts = set()
    if style == 0:
        k = max(2, int((n * rng.uniform(1.0, 2.5)) ** 0.5) + 1)
        while len(pts) < n:
            pts.add((rng.randrange(k), rng.randrange(k)))
    elif style == 1:
        cur = (0, 0)
        pts.add(cur)
        while len(pts) < n:
            base = list(pts)[rng.randrange(len(pts))]
            d = TRI_STEPS[rng.randrange(6)]
            pts.add((base[0] + d[0], base[1] + d[1]))
    else:
        k = max(3, n)
        while len(pts) < n:
            pts.add((rng.randrange(k), rng.randrange(k)))
    order = sorted(pts)
    index = {p: i for i, p in enumerate(order)}
    edges = set()
    for (x, y), i in index.items():
        for dx, dy in ((1, 0), (0, 1), (-1, 1)):
            j = index.get((x + dx, y + dy))
            if j is not None:
                edges.add((min(i, j), max(i, j)))
    if drop_edges and edges:
        keep_p = rng.uniform(0.4, 1.0)
        edges = {e for e in edges if rng.random() < keep_p}
    config = Configuration.lattice(order)
    return config, edges


def naive_edge_count(points):
    """Quadratic sup-distance pair count, independent of the builder."""
    pts = list(points)
    return sum(
        1
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
        if max(abs(pts[i][0] - pts[j][0]), abs(pts[i][1] - pts[j][1])) == 1
    )


def grow_fixed_animals(n):
    """All king-connected fixed animals of size n by extend-and-deduplicate.

    Slow reference enumeration, independent of the production search.
    """
    def normalize(cells):
        mx = min(x for x, _ in cells)
        my = min(y for _, y in cells)
        return tuple(sorted((x - mx, y - my) for x, y in cells))

    current = {((0, 0),)}
    for _ in range(n - 1):
        nxt = set()
        for animal in current:
            cells = set(animal)
            for x, y in animal:
                for dx, dy in KING:
                    q = (x + dx, y + dy)
                    if q not in cells:
                        nxt.add(normalize(animal + (q,)))
        current = nxt
    return current


# Flood-fill face-count oracle.  Samples live on a quarter-step grid with
# offsets (1/8, 1/16); in 16x scaled integers no sample ever lies on a
# lattice vertex, an axis edge, or a diagonal edge.

def _seg_intersects(a, b, c, d):
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    def on(p, q, r):
        return (
            orient(p, q, r) == 0
            and min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
        )
    return on(a, b, c) or on(a, b, d) or on(c, d, a) or on(c, d, b)


def flood_fill_planar_face_count(config):
    """Count bounded complement components on a fine grid.

    Closed unit squares of the crossed squares are treated as blocked,
    matching the face definition.  Returns the number of bounded free
    components, which must equal the number of planar faces.
    """
    from supdisk.graph import build

    pts = [(16 * x, 16 * y) for x, y in config.points]
    edge_list = []
    g = build(config)
    for i, j in g.edges:
        if (i, j) not in g.diagonal_edges:
            edge_list.append((pts[i], pts[j]))
    squares = []
    for q in g.quads:
        xs = [pts[c][0] for c in q.corners]
        ys = [pts[c][1] for c in q.corners]
        squares.append((min(xs), min(ys), max(xs), max(ys)))

    x0 = min(x for x, _ in pts) - 16
    x1 = max(x for x, _ in pts) + 16
    y0 = min(y for _, y in pts) - 16
    y1 = max(y for _, y in pts) + 16

    def samples():
        sx = []
        x = x0 + 2
        while x <= x1:
            sx.append(x)
            x += 4
        sy = []
        y = y0 + 1
        while y <= y1:
            sy.append(y)
            y += 4
        return sx, sy

    sx, sy = samples()

    def blocked(p):
        for bx0, by0, bx1, by1 in squares:
            if bx0 <= p[0] <= bx1 and by0 <= p[1] <= by1:
                return True
        return False

    def passable(p, q):
        for a, b in edge_list:
            if _seg_intersects(p, q, a, b):
                return False
        return True

    free = {}
    for ix, x in enumerate(sx):
        for iy, y in enumerate(sy):
            if not blocked((x, y)):
                free[(ix, iy)] = (x, y)

    seen = set()
    bounded = 0
    for start in free:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        touches_frame = False
        while stack:
            cur = stack.pop()
            ix, iy = cur
            if ix in (0, len(sx) - 1) or iy in (0, len(sy) - 1):
                touches_frame = True
            for nb in ((ix + 1, iy), (ix - 1, iy), (ix, iy + 1), (ix, iy - 1)):
                if nb in free and nb not in seen:
                    if passable(free[cur], free[nb]):
                        seen.add(nb)
                        stack.append(nb)
        if not touches_frame:
            bounded += 1
    return bounded
