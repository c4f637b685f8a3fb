"""Command-line interface.

Subcommands: spectrum, catenoid, maximize, converge, verify.  All numeric
output carries 17 significant digits; every CSV starts with a `#` comment
echoing the fully resolved configuration, so runs are reproducible from
their outputs alone.  Outputs are byte-identical for any --threads value:
the computations are deterministic and the flag only caps worker count.
"""
import argparse
import sys

import numpy as np

from . import bounds, catenoid, geometry, optimizer, spectrum
from .errors import NumericalError, ValidationError


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def _config_header(subcommand, pairs):
    body = " ".join(f"{k}={_fmt(v)}" for k, v in pairs)
    return f"# subcommand={subcommand} {body}"


def _write_csv(path, header_line, columns, rows):
    lines = [header_line, ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _json_value(v, indent):
    pad = " " * indent
    if isinstance(v, dict):
        inner = ",\n".join(f'{pad}  "{k}": {_json_value(x, indent + 2)}'
                           for k, x in v.items())
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(v, (list, tuple)):
        inner = ",\n".join(f"{pad}  {_json_value(x, indent + 2)}" for x in v)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(v, str):
        return f'"{v}"'
    if v is None:
        return "null"
    return _fmt(v)


def _print_json(doc):
    sys.stdout.write(_json_value(doc, 0) + "\n")


# --- subcommands -----------------------------------------------------------

def _cmd_spectrum(args):
    try:
        mer = geometry.load_curve(args.curve)
    except FileNotFoundError:
        raise ValidationError(f"file not found: {args.curve}")
    except ValidationError:
        if args.resample is None:
            raise
        import json
        with open(args.curve, "r", encoding="utf-8") as f:
            pts = json.load(f)["points"]
        mer = geometry.reparametrize_constant_speed(pts, args.resample)
    spec = spectrum.merged_spectrum(mer, args.j, args.mesh)
    header = _config_header("spectrum", [
        ("curve", args.curve), ("j", args.j), ("mesh", args.mesh),
        ("resample", args.resample if args.resample is not None else 0),
        ("area", spec.area),
    ])
    rows = [(i + 1, e.value, e.k, e.n, e.multiplicity)
            for i, e in enumerate(spec.flat(args.j))]
    _write_csv(args.out, header, ("j", "lambda", "k", "n", "multiplicity"), rows)
    return 0


def _cmd_catenoid(args):
    circles = geometry.BoundaryCircles(args.r1, args.r2, args.h)
    cls = catenoid.classify_minimizer(circles, tol=args.tol)
    sols = []
    if circles.h > 0:
        sols = catenoid.solve_catenoids(circles)
    doc = {
        "r1": circles.r1,
        "r2": circles.r2,
        "h": circles.h,
        "classification": cls.kind.value,
        "discs_area": cls.discs_area,
        "solutions": [
            {"branch": s.branch.value, "c": s.c, "y0": s.y0, "area": s.area}
            for s in sols
        ],
    }
    _print_json(doc)
    if args.emit_meridian:
        outer = [s for s in sols if s.branch is catenoid.Branch.OUTER]
        if not outer:
            raise ValidationError("no catenoid exists for these circles; nothing to emit")
        mer = geometry.make_catenary(outer[0], circles, args.nodes)
        geometry.save_curve(mer, args.emit_meridian)
    return 0


def _optimizer_config(args):
    return optimizer.OptimizerConfig(
        control_points=args.control_points,
        restarts=args.restarts,
        max_iters=args.max_iters,
        mesh_inner=args.mesh_inner,
        mesh_final=args.mesh_final,
        step_init=args.step_init,
        step_min=args.step_min,
        seed=args.seed,
        x_min=args.x_min,
    )


def _optimizer_pairs(circles, cfg):
    return [
        ("r1", circles.r1), ("r2", circles.r2), ("h", circles.h),
        ("control_points", cfg.control_points), ("restarts", cfg.restarts),
        ("max_iters", cfg.max_iters), ("mesh_inner", cfg.mesh_inner),
        ("mesh_final", cfg.mesh_final), ("step_init", cfg.step_init),
        ("step_min", cfg.step_min), ("seed", cfg.seed),
        ("x_min", cfg.x_min if cfg.x_min is not None else circles.default_x_min()),
    ]


def _cmd_maximize(args):
    import os
    circles = geometry.BoundaryCircles(args.r1, args.r2, args.h)
    cfg = _optimizer_config(args)
    res = optimizer.maximize_eigenvalue(circles, args.j, cfg)
    os.makedirs(args.out, exist_ok=True)
    geometry.save_curve(res.meridian, os.path.join(args.out, "meridian.json"))
    spec = spectrum.merged_spectrum(res.meridian, args.j, cfg.mesh_final)
    pairs = [("j", args.j)] + _optimizer_pairs(circles, cfg)
    header = _config_header("maximize", pairs)
    _write_csv(os.path.join(args.out, "spectrum.csv"), header,
               ("j", "lambda", "k", "n", "multiplicity"),
               [(i + 1, e.value, e.k, e.n, e.multiplicity)
                for i, e in enumerate(spec.flat(args.j))])
    _write_csv(os.path.join(args.out, "trace.csv"), header,
               ("iteration", "best_lambda"),
               list(res.trace))
    print(f"lambda_{args.j} = {_fmt(res.lambda_j)}  (iterations={res.iterations}, "
          f"mesh_suspect={_fmt(res.mesh_suspect)})")
    return 0


def _cmd_converge(args):
    circles = geometry.BoundaryCircles(args.r1, args.r2, args.h)
    cfg = _optimizer_config(args)
    j_list = [int(tok) for tok in args.j_list.split(",") if tok.strip()]
    if not j_list:
        raise ValidationError("empty --j-list")
    rows = optimizer.convergence_experiment(circles, j_list, cfg)
    pairs = [("j_list", args.j_list)] + _optimizer_pairs(circles, cfg)
    header = _config_header("converge", pairs)
    _write_csv(args.out, header,
               ("j", "lambda_j", "lambda_over_j", "area", "length",
                "hausdorff_to_catenoid"),
               [(r["j"], r["lambda_j"], r["lambda_over_j"], r["area"],
                 r["length"], r["hausdorff_to_catenoid"]) for r in rows])
    suspect = [r["j"] for r in rows if r["mesh_suspect"]]
    if suspect:
        print(f"warning: mesh_suspect at j in {suspect}", file=sys.stderr)
    return 0


def _verify_rows(args):
    seeds = np.random.SeedSequence(args.seed).spawn(args.trials)
    rows = []
    name = args.check
    for trial in range(args.trials):
        rng = np.random.default_rng(seeds[trial])
        if name == "lemma31":
            mer = geometry.random_meridian(rng, x_range=(1.0, 2.0))
            reps = bounds.check_annulus_comparison(mer, args.k_max, args.n_max, args.mesh)
        elif name == "lemma32":
            dip = None
            r_lo, r_hi = 1.0, 2.0
            a = 0.5 * r_lo
            if rng.random() < 0.5:
                dip = a * rng.uniform(0.4, 0.9)
            mer = geometry.random_meridian(rng, x_range=(r_lo, r_hi), dip_to=dip)
            r1 = float(mer.points[0, 0])
            r2 = float(mer.points[-1, 0])
            a_trial = 0.5 * min(r1, r2)
            b_trial = 2.0 * max(float(mer.x.max()), r1, r2)
            j = int(rng.integers(1, 6))
            reps = list(bounds.check_confinement(mer, j, a_trial, b_trial, args.mesh))
        elif name == "lemma33":
            mer = geometry.random_meridian(rng, x_range=(1.0, 2.0))
            j = int(rng.integers(1, 8))
            reps = [bounds.length_bound(mer, j, args.mesh)]
        elif name == "lemma43":
            n_parts = int(rng.integers(1, 6))
            parts = [(rng.uniform(0.5, 2.5), rng.uniform(0.5, 2.5))
                     for _ in range(n_parts)]
            j = int(rng.integers(1, 51))
            reps = [bounds.rectangle_counting_check(parts, j)]
        elif name == "weyl":
            if trial % 2 == 0:
                a = rng.uniform(0.6, 1.5)
                ln = rng.uniform(0.8, 2.0)
                spec = spectrum.cylinder_spectrum(a, ln, 2000)
            else:
                w = rng.uniform(1.0, 2.0)
                hh = rng.uniform(1.0, 2.0)
                spec = spectrum.rectangle_spectrum(w, hh, 2000)
            reps = [bounds.weyl_report(spec, 500, 2000, 0.12)]
        else:
            raise ValidationError(f"unknown check: {name}")
        for rep in reps:
            rows.append((rep.name, rep.lhs, rep.rhs, rep.satisfied, args.seed, trial))
    return rows


def _cmd_verify(args):
    rows = _verify_rows(args)
    pairs = [("check", args.check), ("seed", args.seed), ("trials", args.trials),
             ("mesh", args.mesh), ("k_max", args.k_max), ("n_max", args.n_max)]
    header = _config_header("verify", pairs)
    _write_csv(args.out, header,
               ("name", "lhs", "rhs", "satisfied", "seed", "trial"), rows)
    bad = [r for r in rows if not r[3]]
    print(f"{args.check}: {len(rows) - len(bad)}/{len(rows)} satisfied")
    return 0 if not bad else 2


def build_parser():
    parser = _Parser(prog="revspec",
                     description="Dirichlet spectra of surfaces of revolution: "
                                 "solvers, catenoids, eigenvalue maximization, "
                                 "and inequality checks")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_threads(p):
        p.add_argument("--threads", type=int, default=1,
                       help="cap on worker threads (output is identical for any value)")

    p = sub.add_parser("spectrum", help="merged spectrum of a curve file")
    p.add_argument("--curve", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--mesh", type=int, default=8000)
    p.add_argument("--resample", type=int, default=None,
                   help="resample the input polyline at N chords first")
    p.add_argument("--out", default="-")
    add_threads(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("catenoid", help="catenoid solutions and the minimizer class")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--tol", type=float, default=catenoid.TIE_TOL)
    p.add_argument("--emit-meridian", default=None, metavar="FILE")
    p.add_argument("--nodes", type=int, default=2000)
    add_threads(p)
    p.set_defaults(func=_cmd_catenoid)

    def add_optimizer_flags(p):
        p.add_argument("--r1", type=float, required=True)
        p.add_argument("--r2", type=float, required=True)
        p.add_argument("--h", type=float, required=True)
        p.add_argument("--control-points", type=int, default=12)
        p.add_argument("--restarts", type=int, default=4)
        p.add_argument("--max-iters", type=int, default=200)
        p.add_argument("--mesh-inner", type=int, default=1000)
        p.add_argument("--mesh-final", type=int, default=8000)
        p.add_argument("--step-init", type=float, default=0.25)
        p.add_argument("--step-min", type=float, default=1e-4)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--x-min", type=float, default=None)
        add_threads(p)

    p = sub.add_parser("maximize", help="maximize the j-th eigenvalue")
    add_optimizer_flags(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_maximize)

    p = sub.add_parser("converge", help="maximizer diagnostics against the catenoid")
    add_optimizer_flags(p)
    p.add_argument("--j-list", required=True)
    p.add_argument("--out", required=True, metavar="CSV")
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("verify", help="randomized inequality checks")
    p.add_argument("check", choices=("lemma31", "lemma32", "lemma33", "lemma43", "weyl"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--mesh", type=int, default=4000)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--out", default="-")
    add_threads(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            raise ValidationError("--threads must be >= 1")
        return args.func(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        for k, v in e.context.items():
            print(f"  {k} = {v}", file=sys.stderr)
        return 2
    except SystemExit as e:
        return 0 if e.code in (0, None) else int(e.code)


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
