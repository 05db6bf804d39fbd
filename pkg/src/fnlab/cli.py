"""Command-line front end: ``fnlab <command> ...``.

Exit status: 0 success, 2 invalid input, 3 numerical degeneracy or
non-hyperbolic element, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import DegeneracyError, FNLabError, NonHyperbolicError
from .experiments import (ExperimentConfig, run_divergent_twist, run_shrinking_curve,
                          run_thickpart_scan, run_wolpert_verification)
from .fileio import dumps_point, read_point
from .metrics import d_arc_lower, d_fn, d_ls_lower

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE, EXIT_USAGE = 0, 2, 3, 64
OUT_DIR_ENV = "FNLAB_OUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _cmd_dist(args) -> int:
    p, q = read_point(args.a), read_point(args.b)
    if args.metric == "fn":
        b = d_fn(p, q)
    elif args.metric == "ls":
        b = d_ls_lower(p, q, args.budget)
    else:
        b = d_arc_lower(p, q, args.budget)
    if args.report:
        print("pair_id,metric,kind,value,budget,source")
        budget = "" if b.budget is None else b.budget
        print(f"{args.pair_id},{args.metric},{b.kind.value},{_fmt(b.value)},{budget},{b.source}")
    else:
        print(_fmt(b.value))
    return EXIT_OK


def _emit(report, out: str | None, default_name: str):
    if out is None and os.environ.get(OUT_DIR_ENV):
        out = str(Path(os.environ[OUT_DIR_ENV]) / f"{default_name}.csv")
    if out is None:
        sys.stdout.write(report.to_csv())
    else:
        report.write(out)
        print(out)


def _cmd_verify(args) -> int:
    cfg = ExperimentConfig("wolpert", samples=args.samples, seed=args.seed,
                           delta=args.delta, M=args.M)
    rep = run_wolpert_verification(cfg)
    _emit(rep, args.out, "wolpert")
    s = rep.summary
    print(f"max_rel_err_d1={_fmt(s['max_rel_err_d1'])} max_rel_err_d2={_fmt(s['max_rel_err_d2'])}",
          file=sys.stderr)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    kw = dict(k_min=args.kmin, k_max=args.kmax, t=args.t, budget=args.budget, seed=args.seed)
    if args.which == "thickpart":
        cfg = ExperimentConfig("thickpart", surface=args.surface or "genus-2", samples=args.samples,
                               epsilon=args.epsilon, epsilon0=args.epsilon0, radius=args.radius,
                               thin_epsilon=args.thin_epsilon, **kw)
        rep = run_thickpart_scan(cfg)
    else:
        cfg = ExperimentConfig(args.which, surface=args.surface or "four-holed-sphere", **kw)
        run = run_shrinking_curve if args.which == "shrinking-curve" else run_divergent_twist
        rep = run(cfg)
    _emit(rep, args.out, args.which)
    return EXIT_OK


def _cmd_io(args) -> int:
    p = read_point(args.input)
    if args.action == "validate":
        d = p.decomposition
        print(f"ok: {len(d.pants)} pants, genus {d.genus}, {d.n_interior} interior, "
              f"{d.n_boundary} boundary")
        return EXIT_OK
    text = dumps_point(p)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if text.encode("utf-8") != Path(args.input).read_bytes():
        print("note: input was not in canonical form; emitted canonical form", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fnlab", description="Fenchel-Nielsen / length-spectrum numerical lab")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="distance between two surface files")
    d.add_argument("metric", choices=("fn", "ls", "arc"))
    d.add_argument("--a", required=True)
    d.add_argument("--b", required=True)
    d.add_argument("--budget", type=int, default=3, help="enumeration budget K (ls, arc)")
    d.add_argument("--report", action="store_true", help="print a CSV report row")
    d.add_argument("--pair-id", default="a-b")
    d.set_defaults(func=_cmd_dist)

    v = sub.add_parser("verify", help="derivative formula verification")
    v.add_argument("what", choices=("wolpert",))
    v.add_argument("--samples", type=int, default=34, help="configurations per preset")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--delta", type=float, default=0.3)
    v.add_argument("--M", type=float, default=3.0)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("experiment", help="run a report experiment")
    e.add_argument("which", choices=("shrinking-curve", "divergent-twist", "thickpart"))
    e.add_argument("--surface", help="preset name")
    e.add_argument("--kmin", type=int, default=3)
    e.add_argument("--kmax", type=int, default=20)
    e.add_argument("--t", type=float, default=1.0)
    e.add_argument("--budget", type=int, default=2)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--samples", type=int, default=200)
    e.add_argument("--epsilon", type=float, default=0.3)
    e.add_argument("--epsilon0", type=float)
    e.add_argument("--radius", type=float, default=1.0)
    e.add_argument("--thin-epsilon", type=float)
    e.add_argument("--out")
    e.set_defaults(func=_cmd_experiment)

    i = sub.add_parser("io", help="validate or canonically re-emit a surface file")
    i.add_argument("action", choices=("validate", "roundtrip"))
    i.add_argument("--in", dest="input", required=True)
    i.add_argument("--out")
    i.set_defaults(func=_cmd_io)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (DegeneracyError, NonHyperbolicError) as exc:
        print(f"fnlab: numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except FNLabError as exc:
        print(f"fnlab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:  # overflow or division by zero deep inside a computation
        print(f"fnlab: numerical degeneracy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
