"""Deterministic SVG rendering of graphs, faces, regions, and polygons.

The SVG path is hand-assembled so the output is byte-identical for a fixed
input and option set: no timestamps, stable element ordering, fixed number
formatting.  Report figures (convergence plots, minimizer galleries) go
through matplotlib instead and are not byte-stable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .anisotropy import PolygonalSet
from .faces import EdgeClass, FaceComplex, FaceKind, RegionSelection

EDGE_STYLE = {
    EdgeClass.BOUNDARY: ("#1a1a1a", 2.5, None),
    EdgeClass.INTERIOR: ("#8a8a8a", 1.5, None),
    EdgeClass.WIRE_EXT: ("#c0392b", 2.0, "6,3"),
    EdgeClass.WIRE_INT: ("#e67e22", 2.0, "6,3"),
}
DIAGONAL_STYLE = ("#b0c4de", 1.0, "3,3")
FACE_FILL = {FaceKind.BOXTIMES: "#aec6e8", FaceKind.PLANAR: "#fde8a8"}
SELECTED_FILL = "#9fd6a5"


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 48.0
    margin: float = 0.75
    show_defects: bool = False
    vertex_radius: float = 4.0


def _fmt(x):
    if isinstance(x, int):
        return str(x)
    return f"{x:.4f}".rstrip("0").rstrip(".")


def render_svg(obj, options=RenderOptions()):
    """Vector image of a face complex, region selection, or polygonal set."""
    if isinstance(obj, RegionSelection):
        return _render_complex(obj.complex, options, selection=obj)
    if isinstance(obj, FaceComplex):
        return _render_complex(obj, options)
    if isinstance(obj, PolygonalSet):
        return _render_polyset(obj, options)
    raise TypeError(f"cannot render {type(obj).__name__}")


def _svg_document(xmin, ymin, xmax, ymax, body, options):
    s = options.scale
    m = options.margin

    def tx(x):
        return (x - xmin + m) * s

    def ty(y):
        return (ymax - y + m) * s  # flip so +y is up

    w = _fmt((xmax - xmin + 2 * m) * s)
    h = _fmt((ymax - ymin + 2 * m) * s)
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
    )
    return head + "".join(body(tx, ty)) + "</svg>\n"


def _render_complex(fc, options, selection=None):
    pts = fc.graph.config.points
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]

    def body(tx, ty):
        out = []
        faces = [f for f in fc.bounded_faces]
        faces.sort(key=lambda f: (-(f.twice_area or 0), f.index))
        for f in faces:
            ring = " ".join(
                f"{_fmt(tx(pts[v][0]))},{_fmt(ty(pts[v][1]))}" for v in f.polygon
            )
            fill = FACE_FILL[f.kind]
            if selection is not None and f.index in selection.selected:
                fill = SELECTED_FILL if f.kind is FaceKind.PLANAR else FACE_FILL[f.kind]
            out.append(f'<polygon points="{ring}" fill="{fill}" stroke="none"/>\n')
        for e in sorted(fc.graph.edges):
            i, j = e
            if e in fc.graph.diagonal_edges:
                color, width, dash = DIAGONAL_STYLE
            else:
                color, width, dash = EDGE_STYLE[fc.edge_class[e]]
            if selection is not None and e in selection.boundary_edges:
                color, width = "#14632c", 3.0
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(
                f'<line x1="{_fmt(tx(pts[i][0]))}" y1="{_fmt(ty(pts[i][1]))}" '
                f'x2="{_fmt(tx(pts[j][0]))}" y2="{_fmt(ty(pts[j][1]))}" '
                f'stroke="{color}" stroke-width="{width}"{dash_attr}/>\n'
            )
        for i in range(fc.graph.n):
            out.append(
                f'<circle cx="{_fmt(tx(pts[i][0]))}" cy="{_fmt(ty(pts[i][1]))}" '
                f'r="{options.vertex_radius}" fill="#1a1a1a"/>\n'
            )
        if options.show_defects:
            from .defects import face_defect

            for f in fc.bounded_faces:
                cx = sum(pts[v][0] for v in f.polygon) / len(f.polygon)
                cy = sum(pts[v][1] for v in f.polygon) / len(f.polygon)
                out.append(
                    f'<text x="{_fmt(tx(cx))}" y="{_fmt(ty(cy))}" '
                    f'font-size="12" text-anchor="middle" fill="#333333">'
                    f"{face_defect(fc, f)}</text>\n"
                )
        return out

    doc = _svg_document(min(xs), min(ys), max(xs), max(ys), body, options)
    return doc.encode("utf-8")


def _render_polyset(p, options):
    xs = [x for ring in p.rings for x, _ in ring]
    ys = [y for ring in p.rings for _, y in ring]

    def body(tx, ty):
        out = []
        for ring in p.rings:
            path = " ".join(f"{_fmt(tx(x))},{_fmt(ty(y))}" for x, y in ring)
            out.append(
                f'<polygon points="{path}" fill="#d8e8f6" '
                'stroke="#1a1a1a" stroke-width="2"/>\n'
            )
        return out

    doc = _svg_document(min(xs), min(ys), max(xs), max(ys), body, options)
    return doc.encode("utf-8")


def _pyplot():
    os.environ.setdefault("MPLBACKEND", "Agg")
    import matplotlib.pyplot as plt

    return plt


def save_gamma_figure(experiment, path):
    """Convergence figure: rescaled excess against n, with the target line."""
    plt = _pyplot()
    ns = [r.n for r in experiment.records]
    vals = [r.rescaled_excess for r in experiment.records]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(ns, vals, "o-", label="rescaled excess")
    ax.axhline(
        experiment.target_phi_perimeter,
        color="crimson",
        linestyle="--",
        label="anisotropic perimeter",
    )
    ax.set_xlabel("particle count n")
    ax.set_ylabel("excess / sqrt(n)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_minimizers_figure(result, path):
    """Gallery of the minimizing configurations found by a search."""
    plt = _pyplot()
    mins = result.minimizers
    cols = min(4, max(1, len(mins)))
    rows = (len(mins) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(3 * cols, 3 * rows), squeeze=False)
    for ax in axes.ravel():
        ax.axis("off")
    for k, cells in enumerate(mins):
        ax = axes[k // cols][k % cols]
        s = set(cells)
        for x, y in cells:
            for dx, dy in ((1, 0), (1, 1), (0, 1), (-1, 1)):
                if (x + dx, y + dy) in s:
                    ax.plot([x, x + dx], [y, y + dy], color="steelblue", lw=1.5)
        ax.plot([x for x, _ in cells], [y for _, y in cells], "o", color="black")
        ax.set_aspect("equal")
        ax.set_title(f"minimizer {k + 1}", fontsize=9)
    fig.suptitle(f"n={result.n}: {result.max_edges} bonds, excess {result.min_excess}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
