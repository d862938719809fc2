"""Command-line interface.

Commands: solve, bound, round, oracle, scan-alpha, jaynes.  Configs are JSON
files in the format documented in constraints.py; the names of the bundled
example problems (die_unconstrained, die_mean, traffic, queue_mean,
queue_bounded) are accepted wherever a config path is expected.

Exit codes: 0 success, 2 infeasible problem, 3 solver failure, 4 bound
validity failure, 5 enumeration budget exceeded.  Data goes to stdout (or
--out), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from . import __version__
from .bounds import (
    BoundValidityError,
    KIND_CLI_NAMES,
    compute_bound,
    jaynes_comparison,
    scan_alpha,
)
from .constraints import ConstraintError, load_problem, satisfies
from .discretize import round_to_counts
from .oracle import (
    OracleBudgetError,
    DEFAULT_BUDGET,
    concentration_report,
    per_vector_detail,
)
from .solver import ConvergenceError, InfeasibleError, solve_maxent

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_SOLVER = 3
EXIT_VALIDITY = 4
EXIT_BUDGET = 5

_BUNDLED = ("die_unconstrained", "die_mean", "traffic", "queue_mean", "queue_bounded")


def _resolve_config(name: str) -> str:
    if Path(name).exists():
        return name
    stem = name[:-5] if name.endswith(".json") else name
    if stem in _BUNDLED:
        return str(resources.files("entcon").joinpath(f"configs/{stem}.json"))
    raise ConstraintError(
        f"config {name!r} is neither a file nor one of the bundled problems "
        f"{', '.join(_BUNDLED)}"
    )


def _manifest(args, command: str, params: dict) -> dict:
    return {
        "command": command,
        "config": getattr(args, "config", None),
        "parameters": params,
        "format": args.format,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _emit(args, payload: dict, table_lines: list[str], csv_rows=None, csv_header=None):
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        if csv_header:
            writer.writerow(csv_header)
        for row in csv_rows or []:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = "\n".join(table_lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.6g}"
    return str(x)


def _load_and_solve(args):
    path = _resolve_config(args.config)
    cs, tol = load_problem(path)
    return path, cs, tol, solve_maxent(cs)


def _cmd_solve(args) -> int:
    path, cs, tol, sol = _load_and_solve(args)
    payload = {"manifest": _manifest(args, "solve", {}), "solution": sol.to_json()}
    lines = [
        f"# solve {path}",
        f"H* = {sol.h_star:.6g}   mu* = {sol.mu_star}   "
        f"phi_min = {sol.phi_min:.6g}   phi_max = {sol.phi_max:.6g}",
        f"kkt_residual = {sol.kkt_residual:.3e}",
        "phi* = " + " ".join(f"{v:.6g}" for v in sol.phi_star),
    ]
    rows = [[i, repr(float(v))] for i, v in enumerate(sol.phi_star)]
    _emit(args, payload, lines, rows, ["cell", "phi_star"])
    return EXIT_OK


def _cmd_bound(args) -> int:
    params = {"kind": args.kind, "eps": args.eps, "eta": args.eta,
              "theta": args.theta, "delta_h": args.delta_h, "m": args.m}
    if args.kind == "uniform":
        if args.m is None:
            raise BoundValidityError("--kind uniform requires --m")
        report = compute_bound("uniform", None, None, None, args.eps,
                               theta=args.theta, m=args.m)
    else:
        _, cs, tol, sol = _load_and_solve(args)
        report = compute_bound(args.kind, sol, cs, tol, args.eps,
                               eta=args.eta, theta=args.theta,
                               delta_h=args.delta_h)
    payload = {"manifest": _manifest(args, "bound", params), "report": report.to_json()}
    lines = [
        f"# bound kind={args.kind}",
        f"N = {report.n}   (real {report.n_real:.6g})   alpha_hat = {report.alpha_hat:.6g}",
        f"C1 = {report.c1:.6g}   C2 = {report.c2:.6g}   "
        f"theta_inf = {_fmt(report.theta_inf)}   theta0 = {report.theta0:.6g}",
        f"active branch: {report.active_branch}",
        report.summary(),
    ]
    for check in report.validity:
        lines.append(f"  [{'ok' if check.passed else 'FAIL'}] {check.name} {check.detail}")
    rows = [[k, v] for k, v in sorted(report.to_json().items())
            if k not in ("validity", "summary", "notes")]
    _emit(args, payload, lines, rows, ["field", "value"])
    return EXIT_OK


def _cmd_round(args) -> int:
    path, cs, tol, sol = _load_and_solve(args)
    cv = round_to_counts(sol, args.n)
    fv = cv.frequencies()
    rep = satisfies(cs, tol, fv.as_fractions())
    payload = {
        "manifest": _manifest(args, "round", {"n": args.n}),
        "counts": cv.to_json(),
        "frequencies": [f"{v.numerator}/{v.denominator}" for v in fv.as_fractions()],
        "satisfies": rep.ok,
        "residuals": [
            {"category": r.category, "row": r.row, "residual": r.residual,
             "limit": _fmt(r.limit), "ok": r.ok}
            for r in rep.rows
        ],
    }
    lines = [
        f"# round {path} n={args.n}",
        "nu*  = " + " ".join(str(v) for v in cv.nu),
        "f*   = " + " ".join(f"{v}/{args.n}" for v in cv.nu),
        "f*   ~ " + " ".join(f"{v / args.n:.8g}" for v in cv.nu),
        f"satisfies tolerances: {rep.ok}",
    ]
    for r in rep.rows:
        lines.append(
            f"  [{'ok' if r.ok else 'FAIL'}] {r.category}[{r.row}] "
            f"residual {r.residual:.3e} limit {_fmt(r.limit)}"
        )
    rows = [[i, v, f"{v / args.n:.12g}"] for i, v in enumerate(cv.nu)]
    _emit(args, payload, lines, rows, ["cell", "nu", "f"])
    return EXIT_OK


def _cmd_oracle(args) -> int:
    path, cs, tol, sol = _load_and_solve(args)
    rep = concentration_report(
        cs, tol, sol, args.n, args.criterion,
        eta=args.eta, theta=args.theta, budget=args.budget)
    if args.detail:
        with open(args.detail, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                [f"nu{i}" for i in range(cs.m)]
                + ["H", "l1_dist", "linf_dist", "realizations", "in_C", "in_A"])
            for row in per_vector_detail(cs, tol, sol, args.n, args.criterion,
                                         eta=args.eta, theta=args.theta,
                                         budget=args.budget):
                nu, h, l1, linf, cnt, in_c, in_a = row
                writer.writerow(list(nu) + [repr(h), repr(l1), repr(linf),
                                            cnt, int(in_c), int(in_a)])
    payload = {"manifest": _manifest(
        args, "oracle",
        {"n": args.n, "criterion": args.criterion, "eta": args.eta,
         "theta": args.theta, "budget": args.budget}),
        "report": rep.to_json()}
    lines = [
        f"# oracle {path} n={args.n} criterion={args.criterion}",
        f"vectors: total {rep.total_vectors}, satisfying constraints {rep.in_c}",
        f"realizations in C: {rep.realizations_in_c}",
        f"near set: {rep.a_vectors} vectors, {rep.a_count} realizations",
        f"far set:  {rep.b_vectors} vectors, {rep.b_count} realizations",
        f"boundary-flagged vectors: {rep.boundary_vectors}",
        f"near fraction: {rep.ratio:.12g}",
    ]
    rows = [[k, v] for k, v in sorted(rep.to_json().items())]
    _emit(args, payload, lines, rows, ["field", "value"])
    return EXIT_OK


def _cmd_scan_alpha(args) -> int:
    params = {"kind": args.kind, "eps": args.eps, "eta": args.eta,
              "theta": args.theta, "delta_h": args.delta_h,
              "grid": args.grid, "m": args.m}
    if args.kind == "uniform":
        rows = scan_alpha("uniform", None, None, None, args.eps,
                          theta=args.theta, grid=args.grid, m=args.m)
    else:
        _, cs, tol, sol = _load_and_solve(args)
        rows = scan_alpha(args.kind, sol, cs, tol, args.eps, eta=args.eta,
                          theta=args.theta, delta_h=args.delta_h, grid=args.grid)
    payload = {
        "manifest": _manifest(args, "scan-alpha", params),
        "rows": [
            {"alpha": r.alpha, "N_curve": r.n_curve, "radius_curve": r.rhs_curve,
             "is_crossing": r.is_crossing}
            for r in rows
        ],
    }
    lines = [f"# scan-alpha kind={args.kind}",
             f"{'alpha':>14} {'N(alpha)':>16} {'radius curve':>16} crossing"]
    for r in rows:
        lines.append(
            f"{r.alpha:14.6e} {_fmt(r.n_curve):>16} {_fmt(r.rhs_curve):>16} "
            f"{'*' if r.is_crossing else ''}"
        )
    csv_rows = [[r.alpha,
                 "" if r.n_curve is None else repr(r.n_curve),
                 "" if r.rhs_curve is None else repr(r.rhs_curve),
                 int(r.is_crossing)] for r in rows]
    _emit(args, payload, lines, csv_rows,
          ["alpha", "N_curve", "radius_curve", "is_crossing"])
    return EXIT_OK


def _cmd_jaynes(args) -> int:
    if args.config:
        _, cs, tol, sol = _load_and_solve(args)
        m = sol.m
        h_star = sol.h_star
    else:
        if args.m is None or args.hstar is None:
            raise BoundValidityError("jaynes needs --config or both --m and --hstar")
        m, h_star = args.m, args.hstar
    comp = jaynes_comparison(m, args.ell, args.eps, args.n, h_star)
    payload = {"manifest": _manifest(
        args, "jaynes",
        {"ell": args.ell, "eps": args.eps, "n": args.n, "m": m, "hstar": h_star}),
        "comparison": comp.to_json()}
    lines = [
        f"# jaynes m={m} ell={args.ell} dof={comp.dof} eps={args.eps} n={args.n}",
        f"chi2 critical = {comp.chi2_critical:.6g}",
        f"equivalent eta = {comp.eta_equivalent:.6g}   (delta H = {comp.delta_h:.6g})",
        f"C1 = {comp.c1_jaynes:.6g}   C2 = {comp.c2_jaynes:.6g}",
    ]
    rows = [[k, v] for k, v in sorted(comp.to_json().items())]
    _emit(args, payload, lines, rows, ["field", "value"])
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="entcon",
        description="Entropy-concentration certificates for constrained allocations.")
    top.add_argument("--version", action="version", version=f"entcon {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        if config_required:
            p.add_argument("--config", required=True,
                           help="problem config path or bundled name")
        else:
            p.add_argument("--config", default=None)
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--out", default=None, help="write output to this path")

    p = sub.add_parser("solve", help="solve the maximum-entropy program")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bound", help="compute a concentration threshold")
    p.add_argument("--kind", required=True, choices=sorted(KIND_CLI_NAMES))
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--delta-h", dest="delta_h", type=float, default=None,
                   help="override the absolute entropy deviation eta*H*")
    p.add_argument("--m", type=int, default=None, help="cells (uniform kind only)")
    common(p, config_required=False)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("round", help="round the solution to integer counts")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_round)

    p = sub.add_parser("oracle", help="exact enumeration report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--criterion", choices=("entropy", "norm"), required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--detail", default=None,
                   help="also write a per-vector CSV to this path")
    common(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("scan-alpha", help="tabulate the two crossing curves")
    p.add_argument("--kind", required=True, choices=sorted(KIND_CLI_NAMES))
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--delta-h", dest="delta_h", type=float, default=None)
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--m", type=int, default=None)
    common(p, config_required=False)
    p.set_defaults(func=_cmd_scan_alpha)

    p = sub.add_parser("jaynes", help="chi-squared comparison")
    p.add_argument("--ell", type=int, required=True,
                   help="number of independent equality constraints")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--hstar", type=float, default=None)
    common(p, config_required=False)
    p.set_defaults(func=_cmd_jaynes)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except BoundValidityError as exc:
        print(f"bound validity: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except OracleBudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY


if __name__ == "__main__":
    sys.exit(main())
