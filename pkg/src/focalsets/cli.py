"""Command-line interface: `focal <command> <curve-file> [flags]`.

Commands: lightlike, arcs, frame, focal, cuspidal, bifurcation, classify,
ld, verify.  Exit codes: 0 pass, 1 verification failure, 2 usage/parse
error, 3 numeric/domain error.  All outputs are byte-deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import causal, focal_desitter, focal_r31, frames, meshes, verify
from .curvedsl import Ambient, load_curve, position
from .errors import CurveSyntaxError, GeometryError
from .meshes import fmt
from .minkowski import DEFAULT_TOL, mdot
from .singularities import classify, contact_sphere_type, dist_jet, local_model

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _build_parser():
    p = argparse.ArgumentParser(
        prog="focal",
        description="Focal and bifurcation sets of curves in R^3_1, S^2_1 and S^3_1.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mesh=False):
        sp.add_argument("curve", help="curve definition file")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--guard", type=float, default=causal.GUARD_SCALE,
                        help="guard-band scale relative to the median speed")
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        if mesh:
            sp.add_argument("--chart", choices=("frenet", "lightlike"), default="frenet")
            sp.add_argument("--grid", type=int, nargs=2, default=(32, 32), metavar=("N", "M"))
            sp.add_argument("--s-range", type=float, nargs=2, default=None, metavar=("A", "B"))
            sp.add_argument("--mu-range", type=float, nargs=2, default=(-1.0, 1.0),
                            metavar=("A", "B"))
            sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
            sp.add_argument("--projection", choices=("drop4", "stereo"), default="drop4")
            sp.add_argument("--attrs", default=None, help="sidecar attribute CSV path")

    common(sub.add_parser("lightlike", help="lightlike points with Omega certification"))
    common(sub.add_parser("arcs", help="spacelike/timelike arc decomposition"))
    fr = sub.add_parser("frame", help="Frenet frame report at a parameter")
    common(fr)
    fr.add_argument("--at", type=float, required=True)
    common(sub.add_parser("focal", help="focal mesh (OBJ + attribute CSV)"), mesh=True)
    cu = sub.add_parser("cuspidal", help="cuspidal-curve samples")
    common(cu)
    cu.add_argument("--s-range", type=float, nargs=2, default=None, metavar=("A", "B"))
    cu.add_argument("--grid", type=int, nargs=1, default=[64])
    cu.add_argument("--branch", type=int, choices=(1, -1), default=1)
    common(sub.add_parser("bifurcation", help="bifurcation set near lightlike points"),
           mesh=True)
    cl = sub.add_parser("classify", help="singularity class of f_v at (t, v)")
    common(cl)
    cl.add_argument("--at", type=float, required=True)
    cl.add_argument("--v", required=True, help="comma-separated centre coordinates")
    ld = sub.add_parser("ld", help="locus-of-degeneracy samples at a lightlike point")
    common(ld)
    ld.add_argument("--at", type=float, default=None, help="lightlike parameter (default: detect)")
    ld.add_argument("--mu-range", type=float, nargs=2, default=None, metavar=("A", "B"))
    ld.add_argument("--grid", type=int, nargs=1, default=[41])
    ve = sub.add_parser("verify", help="run a verification suite")
    common(ve)
    ve.add_argument("--suite", choices=verify.SUITE_NAMES, required=True)
    return p


def _emit(text, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv_text(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def cmd_lightlike(args, cu):
    points = causal.find_lightlike_points(cu, args.tol)
    arcs = causal.split_arcs(cu, points, args.tol)
    rows = []
    for i, p in enumerate(points):
        rows.append((p.t_star, p.omega_value, p.certified,
                     str(arcs[i].kind), str(arcs[i + 1].kind)))
    _emit(_csv_text(("t_star", "omega_value", "certified", "arc_kind_left", "arc_kind_right"),
                    rows), args.out)
    return EXIT_OK


def cmd_arcs(args, cu):
    points = causal.find_lightlike_points(cu, args.tol)
    arcs = causal.split_arcs(cu, points, args.tol)
    rows = [(a.interval[0], a.interval[1], str(a.kind)) for a in arcs]
    _emit(_csv_text(("t_lo", "t_hi", "kind"), rows), args.out)
    return EXIT_OK


def cmd_frame(args, cu):
    lines = [f"curve: {args.curve}", f"space: {cu.ambient.value}", f"t: {fmt(args.at)}"]
    if cu.ambient is Ambient.R31:
        f = frames.frame_r31(cu, args.at, args.tol, args.guard)
        for name in ("t", "n", "b"):
            lines.append(f"{name} = ({', '.join(fmt(c) for c in getattr(f, name))})")
        lines += [f"k = {fmt(f.k)}", f"tau = {fmt(f.tau)}",
                  f"eps = {f.eps}", f"delta = {f.delta}"]
    elif cu.ambient is Ambient.S21:
        f = frames.frame_s21(cu, args.at, args.tol, args.guard)
        for name in ("gamma", "t", "n"):
            lines.append(f"{name} = ({', '.join(fmt(c) for c in getattr(f, name))})")
        lines += [f"k_g = {fmt(f.kg)}", f"eps = {f.eps}", f"delta = {f.delta}"]
    else:
        f = frames.frame_s31(cu, args.at, args.tol, args.guard)
        for name in ("gamma", "t", "n", "e"):
            lines.append(f"{name} = ({', '.join(fmt(c) for c in getattr(f, name))})")
        kind = "k_g/tau_g" if f.variant.value == "spacelike" else "k_h/tau_h"
        lines += [f"variant = {f.variant}", f"{kind} = {fmt(f.k)} / {fmt(f.tau)}"]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _default_s_range(args, cu):
    if args.s_range is not None:
        return tuple(args.s_range)
    a, b = cu.domain
    w = b - a
    return (a + 0.1 * w, b - 0.1 * w)


def cmd_focal(args, cu, chart_override=None):
    chart = chart_override or args.chart
    if cu.ambient is Ambient.S21:
        return _s21_curve_csv(args, cu, chart)
    t_range = _default_s_range(args, cu)
    bundle = meshes.focal_mesh(cu, chart, t_range, tuple(args.mu_range),
                               args.grid[0], args.grid[1], args.branch,
                               args.projection, args.tol)
    out = args.out or "focal.obj"
    meshes.write_obj(bundle, out)
    attrs = args.attrs or (out.rsplit(".", 1)[0] + "_attrs.csv")
    meshes.write_attrs_csv(bundle, attrs)
    sys.stdout.write(
        f"vertices={len(bundle.vertices)} faces={len(bundle.faces)} "
        f"skipped_vertices={bundle.skipped_vertices} skipped_cells={bundle.skipped_cells}\n"
    )
    return EXIT_OK


def _s21_curve_csv(args, cu, chart):
    t_range = _default_s_range(args, cu)
    rows = []
    header = ("index", "s_or_t", "branch", "x1", "x2", "x3",
              "metric_class", "sing_class", "on_sphere_residual")
    idx = 0
    for t in np.linspace(t_range[0], t_range[1], args.grid[0]):
        try:
            if chart == "frenet":
                samples = [focal_desitter.spherical_focal_curve(cu, float(t), b, args.tol,
                                                                args.guard) for b in (1, -1)]
            else:
                samples = list(focal_desitter.spherical_bif_lightlike(cu, float(t), args.tol))
        except GeometryError:
            continue
        for s in samples:
            idx += 1
            res = abs(float(mdot(s.point, s.point)) - 1.0)
            rows.append((idx, t, s.branch, s.point[0], s.point[1], s.point[2],
                         str(s.metric_class), str(s.sing_class), res))
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_bifurcation(args, cu):
    return cmd_focal(args, cu, chart_override="lightlike")


def cmd_cuspidal(args, cu):
    t_range = _default_s_range(args, cu)
    rows = []
    ncomp = cu.dim
    header = ("index", "s_or_t", "mu", *[f"x{i+1}" for i in range(ncomp)], "sing_class")
    idx = 0
    for t in np.linspace(t_range[0], t_range[1], args.grid[0]):
        try:
            if cu.ambient is Ambient.R31:
                s = focal_r31.cuspidal_curve(cu, float(t), args.tol, args.guard)
                point, mu_s = s.point, s.mu_of_s
                sing = classify(cu, float(t), point, args.tol)
            elif cu.ambient is Ambient.S31:
                fr = frames.frame_s31(cu, float(t), args.tol, args.guard)
                if fr.variant.value == "spacelike":
                    samp = focal_desitter.g_cuspidal(cu, float(t), args.branch, args.tol, args.guard)
                else:
                    samp = focal_desitter.h_cuspidal(cu, float(t), args.branch, args.tol, args.guard)
                point, mu_s, sing = samp.point, samp.chart.mu, samp.sing_class
            else:
                scan = focal_desitter.spherical_singular_points(cu, t_range, args.tol)
                rows = [(i + 1, r, "", *position(cu, r), "") for i, r in enumerate(scan.roots)]
                break
        except GeometryError:
            continue
        idx += 1
        rows.append((idx, t, mu_s, *point, str(sing)))
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_classify(args, cu):
    v = np.array([float(x) for x in args.v.replace(",", " ").split()])
    sing = classify(cu, args.at, v, args.tol)
    dj = dist_jet(cu, args.at, v)
    lines = [f"t = {fmt(args.at)}", f"v = ({', '.join(fmt(c) for c in v)})",
             f"sing_class = {sing}"]
    try:
        lines.append(f"local_model = {local_model(sing)}")
    except ValueError:
        lines.append("local_model = n/a")
    try:
        lines.append(f"contact_sphere = {contact_sphere_type(cu, args.at, v, args.tol)}")
    except GeometryError:
        lines.append("contact_sphere = undefined (v on the curve)")
    lines.append("f_jets = " + " ".join(fmt(dj.d(k)) for k in range(6)))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_ld(args, cu):
    t0 = args.at
    if t0 is None:
        certified = [p for p in causal.find_lightlike_points(cu, args.tol) if p.certified]
        if not certified:
            raise GeometryError("no certified lightlike point found; pass --at explicitly")
        t0 = certified[0].t_star
    header = ("index", "s_or_t", "mu", "branch", *[f"x{i+1}" for i in range(cu.dim)],
              "metric_class", "det_gram")
    rows = []
    if cu.ambient is Ambient.S31:
        samples = focal_desitter.s31_ld_extract(cu, t0, resolution=args.grid[0], tol=args.tol)
    else:
        m0 = focal_r31.mu0(cu, t0, args.tol)
        mu_range = tuple(args.mu_range) if args.mu_range else (-0.9 * abs(m0), 0.9 * abs(m0))
        samples = focal_r31.ld_extract(cu, t0, mu_range, args.grid[0], args.tol)
    for i, s in enumerate(samples):
        gram = s.gram
        det_gram = float("nan") if gram is None else float(gram[0, 0] * gram[1, 1] - gram[0, 1] ** 2)
        rows.append((i + 1, s.chart.t, s.chart.mu, getattr(s, "branch", 0), *s.point,
                     str(s.metric_class), det_gram))
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_verify(args, cu):
    assertions = verify.run_suite(args.suite, cu)
    report = {
        "suite": args.suite,
        "curve": args.curve,
        "assertions": [
            {"name": a.name, "residual": a.residual, "tol": a.tol, "pass": a.passed}
            for a in assertions
        ],
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    failed = [a for a in assertions if not a.passed]
    if failed:
        sys.stderr.write(
            f"verify: {len(failed)} assertion(s) failed; first: {failed[0].name} "
            f"residual={failed[0].residual!r} tol={failed[0].tol!r}\n"
        )
        return EXIT_VERIFY_FAIL
    return EXIT_OK


_HANDLERS = {
    "lightlike": cmd_lightlike,
    "arcs": cmd_arcs,
    "frame": cmd_frame,
    "focal": cmd_focal,
    "cuspidal": cmd_cuspidal,
    "bifurcation": cmd_bifurcation,
    "classify": cmd_classify,
    "ld": cmd_ld,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cu = load_curve(args.curve)
    except (CurveSyntaxError, OSError) as err:
        sys.stderr.write(f"focal: {err}\n")
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args, cu)
    except GeometryError as err:
        sys.stderr.write(f"focal: {err}\n")
        return EXIT_NUMERIC
    except ValueError as err:
        sys.stderr.write(f"focal: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
