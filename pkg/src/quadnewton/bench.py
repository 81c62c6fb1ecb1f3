"""Benchmark cells, comparison against published rows, and table rendering."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegenerateTrace, InsufficientTrace
from .linalg import norm
from .methods import estimate_coc, saturation_floor, solve
from .model import MethodId, SolveConfig, SolveReport, Termination, evaluate_residual
from .problems import BenchmarkEntry, get_problem, list_problems

METHOD_ORDER = (MethodId.CN, MethodId.TN, MethodId.MN, MethodId.HN, MethodId.MTN)
TABLE_GROUPS = (("Table 1", "abcde"), ("Table 2", "fgh"))
CSV_COLUMNS = ["problem", "x0", "method", "solution", "iterations", "error", "termination", "coc"]

SOLUTION_TOL = 1e-3
ITERATION_TOL = 2
CERTIFICATE_TOL = 1e-10
NO_CONVERGENCE = "No convergence"


@dataclass
class BenchCell:
    problem: str
    method: MethodId
    x0: tuple[float, ...]
    report: SolveReport
    residual_inf: Optional[float] = None
    verdict: Optional[str] = None

    @property
    def converged(self) -> bool:
        return self.report.converged

    def row(self) -> dict[str, str]:
        """Formatted values exactly as they are printed."""
        r = self.report
        return {
            "problem": self.problem,
            "x0": fmt_vector(self.x0, 8, trim=True),
            "method": self.method.value,
            "solution": fmt_vector(r.final_iterate) if self.converged else NO_CONVERGENCE,
            "iterations": str(r.iterations_used),
            "error": fmt_sci(r.error_estimate) if self.converged else "-",
            "termination": r.termination.value,
            "coc": f"{r.coc_estimate:.3f}" if self.converged and r.coc_estimate is not None else "-",
        }


def fmt_number(v: float, digits: int = 8, trim: bool = False) -> str:
    text = f"{round(float(v), digits) + 0.0:.{digits}f}"
    if trim:
        text = text.rstrip("0").rstrip(".") if "." in text else text
        if text in ("-0", ""):
            text = "0"
    return text


def fmt_vector(v: Iterable[float], digits: int = 8, trim: bool = False) -> str:
    return "(" + ", ".join(fmt_number(x, digits, trim) for x in v) + ")"


def fmt_sci(v: Optional[float]) -> str:
    return "-" if v is None else f"{v:.2e}"


def fmt_sci_pretty(text: str) -> str:
    """``9.99e-16`` -> ``9.99×10^-16`` for human-facing tables."""
    if "e" not in text:
        return text
    mant, exp = text.split("e")
    return f"{mant}×10^{int(exp)}"


def parse_vector(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.strip().strip("()").split(","))


def run_cell(entry: BenchmarkEntry, method: MethodId, epsilon: float = 1e-14,
             max_iterations: int = 500, norm_kind="l2") -> BenchCell:
    cfg = SolveConfig(method=method, epsilon=epsilon, max_iterations=max_iterations,
                      norm_kind=norm_kind)
    report = solve(entry.problem, entry.paper_start, cfg)
    cell = BenchCell(entry.id, method, entry.paper_start, report)
    if report.converged:
        cell.residual_inf = norm(evaluate_residual(entry.problem, report.final_iterate), "inf")
    return cell


def compare_cell(entry: BenchmarkEntry, cell: BenchCell) -> str:
    """MATCH / MISMATCH / UNVERIFIED against the published row.

    Published "No convergence" matches any non-converged termination.
    Otherwise the run must converge within +-2 iterations of the published
    count, at a point within 1e-3 per coordinate of the printed solution, or
    (for multi-root problems) with ``||F||_inf <= 1e-10``.
    """
    row = entry.paper_rows.get(cell.method)
    if row is None:
        return "UNVERIFIED"
    if not row.converged:
        return "MISMATCH" if cell.converged else "MATCH"
    if not cell.converged:
        return "MISMATCH"
    if abs(cell.report.iterations_used - row.iterations) > ITERATION_TOL:
        return "MISMATCH"
    if entry.multi_root:
        ok = cell.residual_inf is not None and cell.residual_inf <= CERTIFICATE_TOL
    else:
        gap = np.max(np.abs(cell.report.final_iterate - np.array(row.solution)))
        ok = gap <= SOLUTION_TOL
    return "MATCH" if ok else "MISMATCH"


def run_bench(problems: Optional[Sequence[str]] = None,
              methods: Optional[Sequence[MethodId | str]] = None,
              epsilon: float = 1e-14, compare: bool = False,
              max_iterations: int = 500, norm_kind="l2") -> list[BenchCell]:
    """Run every requested (problem, method) pair in table order."""
    entries = list_problems() if problems is None else sorted(
        {get_problem(p).id: get_problem(p) for p in problems}.values(), key=lambda e: e.id)
    wanted = set(METHOD_ORDER if methods is None else (
        m if isinstance(m, MethodId) else MethodId.parse(m) for m in methods))
    cells = []
    for entry in entries:
        for method in METHOD_ORDER:
            if method not in wanted:
                continue
            cell = run_cell(entry, method, epsilon, max_iterations, norm_kind)
            if compare:
                cell.verdict = compare_cell(entry, cell)
            cells.append(cell)
    return cells


def to_csv(cells: Sequence[BenchCell]) -> str:
    compare = any(c.verdict is not None for c in cells)
    columns = CSV_COLUMNS + (["compare"] if compare else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for c in cells:
        row = c.row()
        if compare:
            row["compare"] = c.verdict or ""
        writer.writerow(row)
    return buf.getvalue()


def to_markdown(cells: Sequence[BenchCell]) -> str:
    compare = any(c.verdict is not None for c in cells)
    header = ["F(x)", "x0", "Method", "Approximated solution", "Iteration",
              "Error estimation", "Termination", "COC"] + (["Published"] if compare else [])
    blocks = []
    for title, ids in TABLE_GROUPS:
        group = [c for c in cells if c.problem in ids]
        if not group:
            continue
        lines = [f"### {title}: problems ({ids[0]})-({ids[-1]})", "",
                 "| " + " | ".join(header) + " |",
                 "|" + "---|" * len(header)]
        last = None
        for c in group:
            row = c.row()
            first = c.problem != last
            last = c.problem
            vals = [f"({c.problem})" if first else "", row["x0"] if first else "",
                    row["method"], row["solution"], row["iterations"],
                    fmt_sci_pretty(row["error"]), row["termination"], row["coc"]]
            if compare:
                vals.append(c.verdict or "")
            lines.append("| " + " | ".join(vals) + " |")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


@dataclass
class OrderCheck:
    problem: str
    method: MethodId
    start: tuple[float, ...]
    coc: Optional[float]
    fell_back: bool


def usable_steps(report: SolveReport) -> int:
    floor = saturation_floor(report.trace)
    return sum(1 for r in report.trace if r.step_norm is not None and r.step_norm > floor)


def order_check(pid: str, method: MethodId | str, shift: float = 0.5) -> OrderCheck:
    """Estimate the order of ``method`` on a benchmark from its published start.

    When rounding saturation leaves fewer than three usable step norms, the
    run is repeated from the start shifted by ``shift`` in every coordinate.
    """
    entry = get_problem(pid)
    method = MethodId(method)
    start = entry.paper_start
    fell_back = False
    cfg = SolveConfig(method=method, trace_enabled=True)
    report = solve(entry.problem, start, cfg)
    if usable_steps(report) < 3:
        start = tuple(float(v) + shift for v in start)
        fell_back = True
        report = solve(entry.problem, start, cfg)
    try:
        coc = estimate_coc(report.trace, saturation_floor(report.trace))
    except (InsufficientTrace, DegenerateTrace):
        coc = None
    return OrderCheck(entry.id, method, start, coc, fell_back)
