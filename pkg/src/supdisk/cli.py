"""Command-line driver.

Subcommands map one-to-one onto library operations; every run writes a
JSON report (stdout or ``--out``).  Sweep-style commands also write a CSV
table next to the report, and ``--plot`` adds a rendered figure.  Exit
codes: 0 success, 1 violated assertion or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path

from . import __version__
from .anisotropy import (
    aniso_perimeter,
    diamond_polygon,
    lshape_polygon,
    random_convex_polygon,
    regular_polygon,
    square_polygon,
    unit_area_wulff,
    wulff_octagon,
    PolygonalSet,
)
from .defects import decompose_square, face_defect
from .errors import SupdiskError
from .faces import FaceKind, enumerate_faces, select_region
from .formats import dumps_report, make_report, parse_config, write_delimited
from .gamma import directional_density, gamma_sweep
from .graph import build, check_admissibility, connected_components, energy
from .ground_state import brute_force_min, verify_crystallization
from .render import RenderOptions, render_svg


def _read_config(path):
    return parse_config(Path(path).read_bytes())


def _report(args, command, result):
    extra = {}
    if getattr(args, "tolerance", None) is not None:
        extra["tolerance_override"] = args.tolerance
    return make_report(command, result, seed=args.seed, extra=extra)


def _emit(report, out):
    text = dumps_report(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _selection_faces(fc, spec):
    if spec == "boxtimes":
        return [f.index for f in fc.boxtimes_faces]
    if spec == "all":
        return [f.index for f in fc.bounded_faces]
    if spec.startswith("perim<="):
        cutoff = int(spec[len("perim<="):])
        return [
            f.index
            for f in fc.bounded_faces
            if f.kind is FaceKind.BOXTIMES or f.comb_perimeter <= cutoff
        ]
    raise argparse.ArgumentTypeError(
        f"selection must be boxtimes, all, or perim<=K, got {spec!r}"
    )


def _shape(name, config_path, seed):
    if name == "square":
        return square_polygon()
    if name == "diamond":
        return diamond_polygon()
    if name == "octagon":
        return unit_area_wulff()
    if name == "lshape":
        return lshape_polygon()
    if name == "file":
        import json

        doc = json.loads(Path(config_path).read_text())
        ring = tuple((float(x), float(y)) for x, y in doc["vertices"])
        poly = PolygonalSet(rings=(ring,))
        return poly.scaled(math.sqrt(1.0 / poly.area))
    raise argparse.ArgumentTypeError(f"unknown shape {name!r}")


def _check_mode(args, config):
    if getattr(args, "mode", None) and args.mode != config.mode:
        raise SystemExit(
            f"error: config is {config.mode!r} but --mode {args.mode!r} was given"
        )


def cmd_validate(args):
    config = _read_config(args.config)
    _check_mode(args, config)
    g = build(config)
    rep = check_admissibility(g)
    result = {
        "n": g.n,
        "mode": config.mode,
        "edges": len(g.edges),
        "feasible": rep.feasible,
        "admissible": rep.admissible,
        "max_degree_violations": rep.md_violations,
        "crossing_violations": [list(map(list, v)) for v in rep.ce_violations],
        "angle_violations": rep.angle_violations,
        "boxtimes_count": len(rep.boxtimes_quads),
        "components": len(connected_components(g)),
    }
    _emit(_report(args, "validate", result), args.out)
    return 0 if rep.admissible else 1


def cmd_energy(args):
    config = _read_config(args.config)
    _check_mode(args, config)
    g = build(config)
    e, f = energy(g)
    result = {
        "n": g.n,
        "edges": len(g.edges),
        "E": e,
        "F": f,
        "rescaled_excess": f / math.sqrt(g.n),
    }
    _emit(_report(args, "energy", result), args.out)
    return 0


def cmd_faces(args):
    config = _read_config(args.config)
    _check_mode(args, config)
    fc = enumerate_faces(build(config))
    faces = [
        {
            "index": f.index,
            "kind": f.kind.value,
            "comb_perimeter": f.comb_perimeter,
            "interior_components": f.interior_component_count,
            "defect": face_defect(fc, f),
        }
        for f in fc.faces
    ]
    result = {
        "boxtimes": len(fc.boxtimes_faces),
        "planar": len(fc.planar_faces),
        "edge_classes": {
            cls.value: sum(1 for c in fc.edge_class.values() if c is cls)
            for cls in set(fc.edge_class.values())
        },
        "faces": faces,
    }
    _emit(_report(args, "faces", result), args.out)
    return 0


def cmd_decompose(args):
    config = _read_config(args.config)
    _check_mode(args, config)
    fc = enumerate_faces(build(config))
    sel = _selection_faces(fc, args.selection)
    report = decompose_square(fc, sel)
    result = {
        "selection": args.selection,
        "selected_faces": sorted(report.selection),
        "perimeter_term": report.perimeter_term,
        "component_term": report.component_term,
        "unselected_term": report.unselected_term,
        "defect_sum": report.defect_sum,
        "exterior_edge_term": report.exterior_edge_term,
        "total": report.total,
        "F": report.excess,
        "residual": report.residual,
        "P_comb": report.comb_perimeter,
        "components": report.component_count,
    }
    _emit(_report(args, "decompose", result), args.out)
    return 0 if report.residual == 0 else 1


def cmd_minimize(args):
    budget = {}
    if args.node_budget:
        budget["node_budget"] = args.node_budget
    result_obj = brute_force_min(args.n, **budget)
    result = {
        "n": result_obj.n,
        "max_edges": result_obj.max_edges,
        "min_excess": result_obj.min_excess,
        "minimizer_count": len(result_obj.minimizers),
        "minimizers": [list(map(list, m)) for m in result_obj.minimizers],
        "nodes": result_obj.nodes,
        "elapsed_s": round(result_obj.elapsed, 3),
        "complete": result_obj.complete,
    }
    _emit(_report(args, "minimize", result), args.out)
    if args.plot:
        from .render import save_minimizers_figure

        save_minimizers_figure(result_obj, _figure_path(args.out, "minimizers"))
    return 0


def cmd_crystal_check(args):
    config = _read_config(args.config)
    _check_mode(args, config)
    rep = verify_crystallization(config)
    result = {
        "connected": rep.connected,
        "no_wire_edges": rep.no_wire_edges,
        "faces_ok": rep.faces_ok,
        "simple_boundary": rep.simple_boundary,
        "min_degree": rep.min_degree,
        "face_defects_ok": rep.face_defects_ok,
        "triangle_rigidity_ok": rep.triangle_rigidity_ok,
        "all_flags": rep.all_flags(),
    }
    _emit(_report(args, "crystal-check", result), args.out)
    return 0 if rep.all_flags() else 1


def cmd_gamma(args):
    target = _shape(args.shape, args.config, args.seed)
    n_values = [int(v) for v in args.n.split(",")]
    exp = gamma_sweep(target, n_values, beta=args.beta)
    rows = [
        [
            r.n,
            r.cardinality,
            r.excess,
            f"{r.rescaled_excess:.6f}",
            f"{r.symdiff:.6f}",
            r.liminf_ok,
            r.chebyshev_ok,
        ]
        for r in exp.records
    ]
    header = [
        "n", "cardinality", "excess", "rescaled_excess", "symdiff",
        "liminf_ok", "chebyshev_ok",
    ]
    result = {
        "shape": args.shape,
        "P_phi_target": exp.target_phi_perimeter,
        "beta": args.beta,
        "records": [dict(zip(header, row)) for row in rows],
    }
    _emit(_report(args, "gamma", result), args.out)
    if args.out:
        write_delimited(rows, header, _sibling_path(args.out, ".csv"))
    if args.plot:
        from .render import save_gamma_figure

        save_gamma_figure(exp, _figure_path(args.out, "gamma"))
    densities = directional_density(target, n_values[-1]) if args.densities else None
    if densities is not None:
        worst = max(r.max_abs_deviation for r in densities)
        sys.stderr.write(f"max density deviation: {worst:.4f}\n")
    return 0


def cmd_wulff(args):
    scale = args.scale if args.scale else 1.0 / math.sqrt(7.0)
    octagon = wulff_octagon(scale)
    result = {
        "scale": scale,
        "vertices": [list(v) for v in octagon.rings[0]],
        "area": octagon.area,
        "P_phi": aniso_perimeter(octagon),
    }
    if args.compare:
        rng = random.Random(args.seed or 0)
        candidates = {
            "square": square_polygon(),
            "diamond": diamond_polygon(),
            "hexagon": regular_polygon(6),
            "octagon": unit_area_wulff(),
        }
        for k in range(args.compare):
            poly = random_convex_polygon(rng)
            candidates[f"random_{k}"] = poly.scaled(math.sqrt(1.0 / poly.area))
        table = {
            name: aniso_perimeter(p) for name, p in sorted(candidates.items())
        }
        result["area1_perimeters"] = table
        result["minimizer"] = min(table, key=table.get)
    _emit(_report(args, "wulff", result), args.out)
    return 0


def cmd_render(args):
    if args.shape:
        obj = _shape(args.shape, args.config, args.seed)
    else:
        config = _read_config(args.config)
        _check_mode(args, config)
        fc = enumerate_faces(build(config))
        obj = fc
        if args.selection:
            obj = select_region(fc, _selection_faces(fc, args.selection))
    data = render_svg(obj, RenderOptions(show_defects=args.defects))
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def _sibling_path(out, suffix):
    p = Path(out)
    return p.with_suffix(suffix)


def _figure_path(out, stem):
    if out:
        return Path(out).with_suffix(".png")
    return Path(f"{stem}.png")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="supdisk",
        description="Sup-norm sticky disk toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="configuration JSON file")
            p.add_argument("--mode", choices=["lattice", "continuous"],
                           help="assert the config file's coordinate mode")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tolerance", type=float, default=None,
                       help="override reporting tolerance (recorded in provenance)")

    p = sub.add_parser("validate", help="feasibility and admissibility report")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("energy", help="total energy and excess")
    common(p)
    p.set_defaults(fn=cmd_energy)

    p = sub.add_parser("faces", help="face census with perimeters and defects")
    common(p)
    p.set_defaults(fn=cmd_faces)

    p = sub.add_parser("decompose", help="verify the excess-energy decomposition")
    common(p)
    p.add_argument("--selection", default="boxtimes",
                   help="boxtimes | all | perim<=K")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("minimize", help="exhaustive lattice ground-state search")
    common(p, config=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(fn=cmd_minimize)

    p = sub.add_parser("crystal-check", help="minimizer structure flags")
    common(p)
    p.set_defaults(fn=cmd_crystal_check)

    p = sub.add_parser("gamma", help="recovery-sequence convergence sweep")
    common(p, config=False)
    p.add_argument("--config", help="polygon file for --shape file")
    p.add_argument("--shape", default="square",
                   choices=["square", "diamond", "octagon", "lshape", "file"])
    p.add_argument("--n", default="100,1000,10000",
                   help="comma-separated particle counts")
    p.add_argument("--beta", type=float, default=0.25)
    p.add_argument("--plot", action="store_true")
    p.add_argument("--densities", action="store_true",
                   help="also measure per-side missing-bond densities")
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("wulff", help="octagonal equilibrium shape")
    common(p, config=False)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--compare", type=int, default=0, metavar="K",
                   help="isoperimetric table with K random convex competitors")
    p.set_defaults(fn=cmd_wulff)

    p = sub.add_parser("render", help="deterministic SVG drawing")
    common(p, config=False)
    p.add_argument("--config", help="configuration JSON file")
    p.add_argument("--mode", choices=["lattice", "continuous"])
    p.add_argument("--shape", default=None,
                   choices=["square", "diamond", "octagon", "lshape", "file"])
    p.add_argument("--selection", default=None)
    p.add_argument("--defects", action="store_true")
    p.set_defaults(fn=cmd_render)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SupdiskError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
