"""Command-line front end: ``solve``, ``bench``, ``check-jacobian``, ``list``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import bench
from .errors import SolverError, UnknownProblem
from .jacobian import check_jacobian
from .methods import solve
from .model import MethodId, SolveConfig
from .problems import PROBLEM_IDS, get_problem, list_problems

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
JACOBIAN_TOL = 1e-4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"malformed vector {text!r}") from None


def _ids(text: Optional[str]) -> Optional[list[str]]:
    if text is None:
        return None
    ids = [t.strip().lower() for t in text.split(",") if t.strip()]
    for pid in ids:
        get_problem(pid)
    return ids


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def cmd_solve(args) -> int:
    entry = get_problem(args.problem)
    x0 = entry.paper_start if args.x0 is None else _floats(args.x0)
    if len(x0) != entry.problem.dim:
        raise UsageError(f"--x0 has {len(x0)} entries, problem {entry.id} has dimension {entry.problem.dim}")
    cfg = SolveConfig(method=MethodId.parse(args.method), epsilon=args.eps,
                      max_iterations=args.max_iter, norm_kind=args.norm,
                      trace_enabled=args.trace or args.format == "json")
    report = solve(entry.problem, x0, cfg)

    if args.format == "json":
        doc = {
            "termination": report.termination.value,
            "iterations": report.iterations_used,
            "final": [float(v) for v in report.final_iterate],
            "error_estimate": report.error_estimate,
            "coc": report.coc_estimate,
            "trace": [{"n": r.n, "x": [float(v) for v in r.x],
                       "residual_norm": r.residual_norm, "step_norm": r.step_norm}
                      for r in report.trace],
        }
        print(json.dumps(doc, indent=2))
    else:
        out = [f"problem     ({entry.id}) {entry.problem.display}",
               f"method      {cfg.method.value}",
               f"x0          {bench.fmt_vector(x0, trim=True)}"]
        if args.trace:
            for r in report.trace:
                step = "-" if r.step_norm is None else f"{r.step_norm:.2e}"
                out.append(f"  n={r.n:<4d} x={bench.fmt_vector(r.x)}  |F|={r.residual_norm:.2e}  |dx|={step}")
        status = report.termination.value if report.converged else f"No convergence ({report.termination.value})"
        out += [f"termination {status}",
                f"solution    {bench.fmt_vector(report.final_iterate)}",
                f"iterations  {report.iterations_used}",
                f"error       {bench.fmt_sci(report.error_estimate)}"]
        if report.coc_estimate is not None:
            out.append(f"coc         {report.coc_estimate:.3f}")
        if report.detail:
            out.append(f"detail      {report.detail}")
        print("\n".join(out))
    return EXIT_OK if report.converged else EXIT_FAILED


def cmd_bench(args) -> int:
    methods = None if args.methods is None else [MethodId.parse(m) for m in args.methods.split(",")]
    cells = bench.run_bench(_ids(args.problems), methods, epsilon=args.eps,
                            compare=args.compare)
    text = bench.to_csv(cells) if args.format == "csv" else bench.to_markdown(cells)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_jacobian(args) -> int:
    ids = _ids(args.problems) or list(PROBLEM_IDS)
    worst = 0.0
    for pid in ids:
        gap = check_jacobian(get_problem(pid).problem, args.samples, args.seed)
        worst = max(worst, gap)
        flag = "ok" if gap <= JACOBIAN_TOL else "FAIL"
        print(f"({pid})  max relative discrepancy {gap:.3e}  {flag}")
    return EXIT_OK if worst <= JACOBIAN_TOL else EXIT_FAILED


def cmd_list(args) -> int:
    for e in list_problems():
        print(f"({e.id})  n={e.problem.dim}  x0={bench.fmt_vector(e.paper_start, trim=True)}")
        print(f"     {e.problem.display}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadnewton",
                     description="Quadrature-based Newton iterations for nonlinear systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run one method on one benchmark problem")
    p.add_argument("--problem", required=True)
    p.add_argument("--method", required=True, type=str.lower,
                   choices=[m.value.lower() for m in MethodId])
    p.add_argument("--x0", help="comma-separated start point (default: published start)")
    p.add_argument("--eps", type=_positive, default=1e-14)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--norm", choices=["l2", "inf"], default="l2")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="regenerate the benchmark tables")
    p.add_argument("--problems", help="comma-separated ids (default: all)")
    p.add_argument("--methods", help="comma-separated methods (default: all)")
    p.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    p.add_argument("--out")
    p.add_argument("--eps", type=_positive, default=1e-14)
    p.add_argument("--compare", action="store_true",
                   help="append MATCH/MISMATCH/UNVERIFIED against the published rows")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check-jacobian", help="compare analytic and finite-difference Jacobians")
    p.add_argument("--problems")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_jacobian)

    p = sub.add_parser("list", help="print the problem catalogue")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownProblem, ValueError) as exc:
        print(f"quadnewton: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"quadnewton: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"quadnewton: error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
