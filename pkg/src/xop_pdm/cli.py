"""Command-line entry point ``xop-pdm``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from . import checks, susy
from .models import JacobiModel, LaguerreModel, auto_domain, wavefunction
from .solver import Grid, verify_model

FIGURES = {
    "1": LaguerreModel(b=1.0, alpha=2.0),
    "2": JacobiModel(a=0.2, alpha=2.0, beta=2.5),
}
PLOT_POINTS = 2001


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _write_csv(header, columns, out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([_fmt(v) for v in row])
    _emit(buf.getvalue(), out)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def build_model(args):
    v0 = None if args.v0 == "auto" else float(args.v0)
    if args.family == "laguerre":
        return LaguerreModel(b=args.b, alpha=args.alpha, v0bar=v0)
    beta = 2.5 if args.beta is None else args.beta
    return JacobiModel(a=args.a, alpha=args.alpha, beta=beta, v0hat=v0)


def _sample_x(model, args) -> np.ndarray:
    lo, hi = auto_domain(model, max(args.levels, 4))
    lo = lo if args.xmin is None else args.xmin
    hi = hi if args.xmax is None else args.xmax
    n = PLOT_POINTS if args.n is None else args.n
    return np.linspace(lo, hi, n)


def _grid(model, args):
    if args.xmin is None and args.xmax is None and args.n is None:
        return "auto"
    from .solver import auto_grid
    g = auto_grid(model, args.levels + 1)
    return Grid(args.xmin if args.xmin is not None else g.xmin,
                args.xmax if args.xmax is not None else g.xmax,
                args.n if args.n is not None else g.n)


def _table(args, header, cols):
    if args.format == "json":
        _emit(_json({h: [float(v) for v in c] for h, c in zip(header, cols)}), args.out)
    else:
        _write_csv(header, cols, args.out)


def cmd_spectrum(args) -> int:
    model = build_model(args)
    ms = list(range(args.levels))
    _table(args, ["m", "E"], [ms, [model.energy(m) for m in ms]])
    return 0


def cmd_profile(args) -> int:
    model = build_model(args)
    x = _sample_x(model, args)
    if args.command == "mass":
        col, name = model.mass(x), "M"
    elif args.command == "potential":
        col, name = model.potential(x), "V_eff"
    else:
        col, name = wavefunction(model, args.m, x, normalized=not args.raw), f"psi_{args.m}"
    _table(args, ["x", name], [x, col])
    return 0


def cmd_susy(args) -> int:
    model = build_model(args)
    x = _sample_x(model, args)
    header = ["x", "B", "V_eff", "V1_closed", "V1_fromB"]
    cols = [x, susy.superpotential(model, x), model.potential(x),
            susy.partner_potential(model, x), susy.partner_from_B(model, x)]
    for m in range(args.levels):
        header.append(f"partner_psi_{m}")
        cols.append(susy.partner_eigenstate(model, m, x, normalized=True))
    R, dev = susy.shape_invariance_check(model, x)
    _table(args, header, cols)
    sys.stderr.write(_json({"shape_invariance": {"remainder": R, "max_dev": dev}}))
    return 0


def _report(model, reps, check_list, extra=None) -> dict:
    levels = []
    for rep in reps:
        for lv in rep.to_dict()["levels"]:
            lv["hamiltonian"] = "partner" if rep.partner else "base"
            levels.append(lv)
    out = {
        "family": model.family_name,
        "params": model.params(),
        "levels": levels,
        "grids": [{"hamiltonian": "partner" if r.partner else "base", **r.to_dict()["grid"]} for r in reps],
        "invariants": [c.to_dict() for c in check_list],
        "converged": all(r.converged for r in reps) and all(c.passed for c in check_list),
    }
    if extra:
        out.update(extra)
    return out


def cmd_verify(args) -> int:
    model = build_model(args)
    grid = _grid(model, args)
    reps = [verify_model(model, args.levels, grid), verify_model(model, args.levels, grid, partner=True)]
    report = _report(model, reps, [])
    _emit(_json(report), args.out)
    return 0 if report["converged"] else 1


def cmd_figure(args) -> int:
    model = FIGURES[args.which]
    x = np.linspace(*auto_domain(model, 4), PLOT_POINTS)
    cols = [x, model.mass(x), model.potential(x),
            wavefunction(model, 0, x, True) ** 2, wavefunction(model, 1, x, True) ** 2]
    _table(args, ["x", "M", "V_eff", "psi0_sq", "psi1_sq"], cols)
    return 0


def cmd_check(args) -> int:
    if args.family_given:
        models = [build_model(args)]
    else:
        models = list(FIGURES.values())
    results = []
    for model in models:
        check_list, reps = checks.run_all(model, args.levels)
        results.append(_report(model, reps, check_list, {"notes": [checks.uncorrected_offset(model)]}))
    ok = all(r["converged"] for r in results)
    _emit(_json({"passed": ok, "models": results}), args.out)
    return 0 if ok else 1


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", choices=["laguerre", "jacobi"], default=None)
    common.add_argument("--b", type=float, default=1.0)
    common.add_argument("--a", type=float, default=0.2)
    common.add_argument("--alpha", type=float, default=2.0)
    common.add_argument("--beta", type=float, default=None)
    common.add_argument("--v0", default="auto", help='"auto" (zero-point offset) or a number')
    common.add_argument("--levels", type=int, default=4)
    common.add_argument("--xmin", type=float)
    common.add_argument("--xmax", type=float)
    common.add_argument("--n", type=int, help="sample/grid points")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    p = _Parser(prog="xop-pdm", description="X1 exceptional-polynomial position-dependent-mass models")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common]).set_defaults(func=cmd_spectrum)
    sub.add_parser("potential", parents=[common]).set_defaults(func=cmd_profile)
    sub.add_parser("mass", parents=[common]).set_defaults(func=cmd_profile)
    wf = sub.add_parser("wavefunction", parents=[common])
    wf.add_argument("--m", type=int, default=0)
    wf.add_argument("--raw", action="store_true", help="skip numerical normalization")
    wf.set_defaults(func=cmd_profile)
    sub.add_parser("susy", parents=[common]).set_defaults(func=cmd_susy)
    sub.add_parser("verify", parents=[common]).set_defaults(func=cmd_verify)
    fig = sub.add_parser("figure", parents=[common])
    fig.add_argument("--which", choices=["1", "2"], required=True)
    fig.set_defaults(func=cmd_figure)
    sub.add_parser("check", parents=[common]).set_defaults(func=cmd_check)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
        args.family_given = args.family is not None
        if args.family is None:
            args.family = "laguerre"
        if args.levels < 1:
            raise UsageError("--levels must be >= 1")
        if args.family == "laguerre" and args.beta is not None:
            raise UsageError("--beta applies only to --family jacobi")
        return args.func(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"xop-pdm: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
