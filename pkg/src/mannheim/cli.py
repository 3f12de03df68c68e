"""Command-line interface.

Subcommands: classify, frame, offset, theorems, reparam. Exit codes are a
stable contract: 0 success, 1 input or I/O error, 2 geometric degeneracy or
pairing mismatch, 3 theorem failure, 64 usage error. MANNHEIM_SEED overrides
--seed for the theorem suite.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import offsets as off
from . import surface_io as sio
from . import surfaces as rg
from . import theorems as th
from .curves import inverse_arclength
from .errors import GeometryError, SurfaceFileError
from .expr import parse_expr
from .kernel import compile_ast
from .vectors import ldot_arr

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GEOMETRY = 2
EXIT_THEOREM = 3
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt_small(x: float) -> str:
    # sub-roundoff curvature noise prints as an exact 0
    if abs(x) < 1e-12:
        x = 0.0
    return f"{x:g}"


def _emit(text: str, out: str) -> None:
    if out in ("csv", "json"):
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _export(rows, columns, out: str) -> None:
    if out == "csv" or (out not in ("csv", "json") and out.endswith(".csv")):
        _emit(sio.rows_to_csv(rows, columns), out)
    elif out == "json" or (out not in ("csv", "json") and out.endswith(".json")):
        _emit(sio.rows_to_json(rows, columns), out)
    else:
        raise _UsageError(f"cannot infer format from {out!r}; use a .csv or "
                          ".json path, or the literal 'csv' or 'json'")


def _cmd_classify(args) -> int:
    surf = sio.load_surface(args.file)
    t = rg.classify_surface(surf)
    if t.is_degenerate:
        print(f"type=degenerate reason={t.reason}")
        return EXIT_GEOMETRY
    dev = rg.is_developable(surf)
    s0, s1 = surf.domain
    g = rg.frame_grid(surf, np.linspace(s0, s1, min(surf.samples, 512)))
    kmin, kmax = float(np.min(g["kappa"])), float(np.max(g["kappa"]))
    print(f"type={t.tag} eps1={t.eps1:+d} eps2={t.eps2:+d} "
          f"developable={'true' if dev else 'false'} "
          f"kappa=[{_fmt_small(kmin)},{_fmt_small(kmax)}]")
    return EXIT_OK


def _cmd_frame(args) -> int:
    if args.grid < 2:
        raise _UsageError("--grid must be at least 2")
    surf = sio.load_surface(args.file)
    rows = sio.frame_table(surf, args.grid)
    _export(rows, sio.FRAME_COLUMNS, args.out)
    return EXIT_OK


def _offset_rows(surf, svals) -> list:
    c = surf.base_grid(svals, 0)
    qv = surf.director_grid(svals, 0)
    return [{"s": float(svals[i]),
             "c1": float(c[i, 0]), "c2": float(c[i, 1]), "c3": float(c[i, 2]),
             "q1": float(qv[i, 0]), "q2": float(qv[i, 1]), "q3": float(qv[i, 2])}
            for i in range(len(svals))]


def _cmd_offset(args) -> int:
    if args.grid < 2:
        raise _UsageError("--grid must be at least 2")
    base = sio.load_surface(args.file)
    theta = args.theta
    if theta == "solve":
        s0, s1 = base.domain
        mid = 0.5 * (s0 + s1)
        f = rg.frenet_frame(base, mid)
        r_prog = compile_ast(parse_expr(args.R))
        r_val = float(r_prog.eval_many(np.array([mid]))[0])
        theta = repr(off.solve_theta(args.pairing, r_val, f.kappa, f.ds1_ds))
        print(f"theta={theta}")
    spec = off.OffsetSpec(base, args.R, theta, args.pairing)
    surf = off.build_offset(spec)
    t = rg.classify_surface(surf)
    if t.is_degenerate:
        print(f"type=degenerate reason={t.reason}")
        return EXIT_GEOMETRY
    s0, s1 = base.domain
    svals = np.linspace(s0, s1, args.grid)

    # trim ruling-stationary points before measuring the drall
    qd = surf.director_grid(svals, 1)
    good = np.abs(ldot_arr(qd, qd)) > 1e-9
    excluded = off.mask_intervals(svals, ~good)
    mann = off.mannheim_condition_check(base, surf)
    print(f"mannheim={'true' if mann else 'false'}")
    print(f"type={t.tag}")
    if good.any():
        d = rg.drall_grid(surf, svals[good])
        print(f"max_drall={sio.fmt(float(np.max(np.abs(d))))}")
    else:
        print("max_drall=undefined")
    if excluded:
        ivs = ";".join(f"[{a:.6g},{b:.6g}]" for a, b in excluded)
        print(f"excluded={ivs}")
    rows = _offset_rows(surf, svals[good])
    _export(rows, sio.OFFSET_COLUMNS, args.out)
    return EXIT_OK


def _cmd_theorems(args) -> int:
    seed = args.seed
    env = os.environ.get("MANNHEIM_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            print(f"error: MANNHEIM_SEED must be an integer, got {env!r}",
                  file=sys.stderr)
            return EXIT_INPUT
    reports = th.run_suite(filter=args.filter, seed=seed)
    text = sio.theorem_report_json(reports, seed, th.SUITE_VERSION)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in reports:
        print(f"{r.id}: {r.verdict}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_THEOREM


def _cmd_reparam(args) -> int:
    if args.grid < 2:
        raise _UsageError("--grid must be at least 2")
    surf = sio.load_surface(args.file)
    total, inv = inverse_arclength(surf.k)
    tvals = np.linspace(0.0, total, args.grid)
    rows = []
    for t in tvals:
        s = inv(float(t))
        p = surf.k.eval(s)
        rows.append({"t": float(t), "s": float(s), "k1": float(p[0]),
                     "k2": float(p[1]), "k3": float(p[2])})
    _export(rows, ("t", "s", "k1", "k2", "k3"), args.out)
    return EXIT_OK


def _build_parser() -> _Parser:
    p = _Parser(prog="mannheim",
                description="Ruled surfaces and Mannheim offsets in "
                            "Minkowski 3-space")
    sub = p.add_subparsers(dest="command", metavar="command")

    c = sub.add_parser("classify", help="surface type, developability, "
                       "curvature range")
    c.add_argument("file")

    f = sub.add_parser("frame", help="export the moving frame grid")
    f.add_argument("file")
    f.add_argument("--grid", type=int, default=512)
    f.add_argument("--out", default="csv",
                   help="'csv'/'json' for stdout or a .csv/.json path")

    o = sub.add_parser("offset", help="build an offset surface and verify it")
    o.add_argument("file")
    o.add_argument("--R", required=True, help="offset distance expression")
    o.add_argument("--theta", required=True,
                   help="offset angle expression, or 'solve'")
    o.add_argument("--pairing", required=True,
                   choices=["eq11", "eq12", "eq13"])
    o.add_argument("--out", required=True)
    o.add_argument("--grid", type=int, default=128)

    t = sub.add_parser("theorems", help="run the verification suite")
    t.add_argument("--filter", default=None)
    t.add_argument("--report", default=None, help="write the JSON here "
                   "instead of stdout")
    t.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("reparam", help="arclength reparametrization table "
                       "of the base curve")
    r.add_argument("file")
    r.add_argument("--grid", type=int, default=129)
    r.add_argument("--out", default="csv")
    return p


_COMMANDS = {"classify": _cmd_classify, "frame": _cmd_frame,
             "offset": _cmd_offset, "theorems": _cmd_theorems,
             "reparam": _cmd_reparam}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise _UsageError("a command is required")
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SurfaceFileError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
