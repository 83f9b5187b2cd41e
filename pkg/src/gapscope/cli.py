"""Command line front end.

Subcommands: gen (write a problem file), analyze (sweep, classify, export
CSV/JSON/SVG), compare (tb verdicts between two reports), export
(re-render an SVG from a stored sweep).  Exit codes: 0 success, 1 domain
error with a message on stderr, 2 usage error (argparse).  The worker
count for sweeps honours GAPSCOPE_THREADS.
"""

import argparse
import math
import os
import sys

from . import storage
from .problems import BarrierSpec, UnfoldingSpec, hamming_plus_barrier, grover_pair, unfolding_family, diagonal_pair
from .sweep import ThetaGrid, sweep, write_sweep_csv, read_sweep_csv
from .curves import FrontCurve, front, cusps, self_intersections
from .topology import build_report
from .render import render_svg

TWO_PI = 2.0 * math.pi


def _parse_band_list(text):
    return tuple(int(b) for b in text.split(",") if b.strip())


def cmd_gen(args) -> int:
    if args.family == "hamming-barrier":
        pair = hamming_plus_barrier(BarrierSpec(args.n, args.l, args.u, args.h),
                                    eps=args.eps, seed=args.seed)
    elif args.family == "grover":
        pair = grover_pair(args.dim, seed=args.seed)
    elif args.family == "unfolding":
        pair = unfolding_family(UnfoldingSpec(eps=args.eps))
    elif args.family == "diagonal":
        a = [float(x) for x in args.a.split(",")]
        b = [float(x) for x in args.b.split(",")]
        pair = diagonal_pair(a, b)
    else:
        raise ValueError(f"unknown family {args.family!r}")
    storage.write_problem(pair, args.out, dense=not args.no_dense)
    print(f"wrote {args.out} ({pair.family}, dim {pair.dim})")
    return 0


def _resolve_config(args) -> storage.RunConfig:
    if args.config:
        cfg = storage.read_config(args.config)
    else:
        cfg = storage.RunConfig()
    if args.problem:
        cfg.problem = {"file": args.problem}
    if args.outdir is not None:
        cfg.outdir = args.outdir
    for name in ("start", "end", "delta", "window"):
        v = getattr(args, name)
        if v is not None:
            setattr(cfg, name, v)
    if args.bands is not None:
        cfg.bands = _parse_band_list(args.bands)
    if args.formats is not None:
        cfg.formats = tuple(f.strip() for f in args.formats.split(",") if f.strip())
    return cfg


def cmd_analyze(args) -> int:
    cfg = _resolve_config(args)
    if "file" in cfg.problem:
        pair = storage.read_problem(cfg.problem["file"])
    elif cfg.problem:
        pair = storage.build_pair(cfg.problem["family"], cfg.problem.get("params", {}),
                                  seed=cfg.problem.get("seed"))
    else:
        raise ValueError("no problem given: use --problem FILE or a config with a problem block")
    os.makedirs(cfg.outdir, exist_ok=True)
    grid = ThetaGrid(start=cfg.start, end=cfg.end, delta=cfg.delta)
    sw = sweep(pair, grid)
    bands0 = tuple(b - 1 for b in cfg.bands)
    report = build_report(pair, sw, bands=bands0, window=cfg.window)
    outputs = []
    if "csv" in cfg.formats:
        p = os.path.join(cfg.outdir, "sweep.csv")
        write_sweep_csv(sw, p)
        outputs.append(p)
    if "json" in cfg.formats:
        p = os.path.join(cfg.outdir, "report.json")
        storage.write_report(report, p)
        outputs.append(p)
    if "svg" in cfg.formats:
        p = os.path.join(cfg.outdir, "fronts.svg")
        fronts = [front(sw, b) for b in bands0]
        cusp_pts, cross_pts = [], []
        for fc in fronts:
            pts = fc.xy
            for r in cusps(fc).roots:
                i = int(round((r - fc.thetas[0]) / fc.delta)) % len(pts)
                cusp_pts.append(tuple(pts[i]))
            cross_pts.extend(c.point for c in self_intersections(fc))
        render_svg(fronts, p, cusp_points=cusp_pts, crossing_points=cross_pts,
                   title=f"{pair.family} fronts")
        outputs.append(p)
    print(f"{pair.family}: morphology={report['morphology']} "
          f"theta*={report['theta_star']:.6f} min_gap={report['min_gap']:.6g}")
    for p in outputs:
        print(f"wrote {p}")
    return 0


def cmd_compare(args) -> int:
    ra = storage.read_report(args.report_a)
    rb = storage.read_report(args.report_b)
    bands = sorted(set(ra.get("invariants", {})) & set(rb.get("invariants", {})), key=int)
    if not bands:
        raise ValueError("reports share no bands to compare")
    all_equal = True
    for b in bands:
        ta = ra["invariants"][b]["tb"]
        tb_ = rb["invariants"][b]["tb"]
        verdict = "equivalent" if ta == tb_ else "distinct"
        if ta != tb_:
            all_equal = False
        print(f"band {b}: tb {ta} vs {tb_} -> {verdict}")
    print("overall: " + ("equivalent" if all_equal else "distinct"))
    return 0


def cmd_export(args) -> int:
    header, data = read_sweep_csv(args.sweep)
    thetas = data[:, 0]
    d = float(thetas[1] - thetas[0])
    closed = abs((thetas[-1] + d) - (thetas[0] + TWO_PI)) < 1e-9
    bands = _parse_band_list(args.bands) if args.bands else None
    idx = {name: i for i, name in enumerate(header)}
    available = sorted(int(name.split("_")[1]) for name in header if name.startswith("lambda_"))
    if bands is None:
        bands = tuple(available[:2] or available)
    curves = []
    for b in bands:
        for col in (f"lambda_{b}", f"dlambda_{b}", f"rho_{b}"):
            if col not in idx:
                raise ValueError(f"column {col} not present in {args.sweep}")
        curves.append(FrontCurve(band=b - 1, thetas=thetas,
                                 lam=data[:, idx[f"lambda_{b}"]],
                                 dlam=data[:, idx[f"dlambda_{b}"]],
                                 rho=data[:, idx[f"rho_{b}"]],
                                 closed=closed))
    cusp_pts, cross_pts = [], []
    for fc in curves:
        pts = fc.xy
        for r in cusps(fc).roots:
            i = int(round((r - fc.thetas[0]) / fc.delta)) % len(pts)
            cusp_pts.append(tuple(pts[i]))
        cross_pts.extend(c.point for c in self_intersections(fc))
    render_svg(curves, args.out, cusp_points=cusp_pts, crossing_points=cross_pts,
               title=f"fronts from {os.path.basename(args.sweep)}")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gapscope",
                                description="Spectral gap analysis over annealing paths")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a problem file")
    gsub = g.add_subparsers(dest="family", required=True)

    hb = gsub.add_parser("hamming-barrier", help="transverse field vs weight plus barrier")
    hb.add_argument("--n", type=int, required=True)
    hb.add_argument("--l", type=int, required=True)
    hb.add_argument("--u", type=int, required=True)
    hb.add_argument("--h", type=float, default=0.0)
    hb.add_argument("--eps", type=float, default=0.0)
    hb.add_argument("--seed", type=int, default=0)

    gr = gsub.add_parser("grover", help="projector-complement pair")
    gr.add_argument("--dim", type=int, required=True)
    gr.add_argument("--seed", type=int, default=0)

    uf = gsub.add_parser("unfolding", help="perturbed Schur-form pencil")
    uf.add_argument("--eps", type=float, default=0.0)

    dg = gsub.add_parser("diagonal", help="commuting diagonal pair")
    dg.add_argument("--a", required=True, help="comma-separated reals")
    dg.add_argument("--b", required=True, help="comma-separated reals")

    for sp in (hb, gr, uf, dg):
        sp.add_argument("--out", default="problem.json")
        sp.add_argument("--no-dense", action="store_true",
                        help="store only family and parameters, not matrix entries")
        sp.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="sweep a problem and write csv/json/svg")
    a.add_argument("--problem", help="problem JSON file")
    a.add_argument("--config", help="run configuration JSON")
    a.add_argument("--outdir", default=None)
    a.add_argument("--start", type=float, default=None)
    a.add_argument("--end", type=float, default=None)
    a.add_argument("--delta", type=float, default=None)
    a.add_argument("--window", type=float, default=None)
    a.add_argument("--bands", default=None, help="comma-separated band numbers, 1-based")
    a.add_argument("--formats", default=None, help="subset of csv,json,svg")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", help="compare invariants between two reports")
    c.add_argument("report_a")
    c.add_argument("report_b")
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("export", help="render an SVG from a stored sweep CSV")
    e.add_argument("--sweep", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--bands", default=None)
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
