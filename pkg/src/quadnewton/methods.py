"""Quadrature-derived Newton iterations for square nonlinear systems.

Every method first takes the ordinary Newton predictor
``y = x - F'(x)^{-1} F(x)`` and then corrects it with a different
quadrature of the integral form of ``F``:

    CN   x+ = y
    TN   x+ = x - 2 [F'(x) + F'(y)]^{-1} F(x)
    MN   x+ = x - F'((x + y)/2)^{-1} F(x)
    HN   x+ = x - 1/2 F'(x)^{-1} F'(y)^{-1} [F'(x) + F'(y)] F(x)
    MTN  x+ = x - 4 [F'(x) + 2 F'((x + y)/2) + F'(y)]^{-1} F(x)

MTN is the third-order method; the others are provided for comparison.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateTrace, DomainViolation, InsufficientTrace, SingularMatrix
from .linalg import lu_factor, lu_solve, norm
from .model import (
    IterationRecord,
    MethodId,
    ProblemSpec,
    SolveConfig,
    SolveReport,
    Termination,
    evaluate_jacobian,
    evaluate_residual,
)

# Step norms at or below this multiple of eps * max(1, ||x||) are rounding
# noise and are ignored by the order estimate of a live solve.
SATURATION_ULPS = 64.0
_EPS = float(np.finfo(np.float64).eps)


class _Point:
    """Lazily evaluated F and F' at one iterate, with the predictor."""

    def __init__(self, p: ProblemSpec, x: np.ndarray, fx: Optional[np.ndarray] = None):
        self.p = p
        self.x = x
        self.fx = evaluate_residual(p, x) if fx is None else fx
        self.jx = evaluate_jacobian(p, x)
        self.jx_lu = lu_factor(self.jx)
        self.y = x - lu_solve(self.jx_lu, self.fx)

    def jac(self, z: np.ndarray) -> np.ndarray:
        return evaluate_jacobian(self.p, z)

    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.x + self.y)


def _cn(pt: _Point) -> np.ndarray:
    return pt.y


def _tn(pt: _Point) -> np.ndarray:
    bracket = pt.jx + pt.jac(pt.y)
    return pt.x - lu_solve(lu_factor(bracket), 2.0 * pt.fx)


def _mn(pt: _Point) -> np.ndarray:
    jm = pt.jac(pt.midpoint())
    return pt.x - lu_solve(lu_factor(jm), pt.fx)


def _hn(pt: _Point) -> np.ndarray:
    jy = pt.jac(pt.y)
    inner = lu_solve(lu_factor(jy), (pt.jx + jy) @ pt.fx)
    return pt.x - 0.5 * lu_solve(pt.jx_lu, inner)


def _mtn(pt: _Point) -> np.ndarray:
    # midpoint before y so a domain failure is attributed to the midpoint first
    jm = pt.jac(pt.midpoint())
    jy = pt.jac(pt.y)
    bracket = pt.jx + 2.0 * jm + jy
    return pt.x - lu_solve(lu_factor(bracket), 4.0 * pt.fx)


_STEPS: dict[MethodId, Callable[[_Point], np.ndarray]] = {
    MethodId.CN: _cn,
    MethodId.TN: _tn,
    MethodId.MN: _mn,
    MethodId.HN: _hn,
    MethodId.MTN: _mtn,
}


def _as_point(p: ProblemSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (p.dim,):
        raise ValueError(f"problem {p.id} has dimension {p.dim}, got point of shape {x.shape}")
    return x


def predictor(p: ProblemSpec, x) -> np.ndarray:
    """Newton predictor ``x - F'(x)^{-1} F(x)``.

    Raises :class:`SingularMatrix` or :class:`DomainViolation`.
    """
    return _Point(p, _as_point(p, x)).y


def step(p: ProblemSpec, x, method: MethodId | str) -> np.ndarray:
    """Apply one update of ``method`` from ``x``."""
    return _STEPS[MethodId(method)](_Point(p, _as_point(p, x)))


def cn_step(p: ProblemSpec, x) -> np.ndarray:
    return step(p, x, MethodId.CN)


def tn_step(p: ProblemSpec, x) -> np.ndarray:
    return step(p, x, MethodId.TN)


def mn_step(p: ProblemSpec, x) -> np.ndarray:
    return step(p, x, MethodId.MN)


def hn_step(p: ProblemSpec, x) -> np.ndarray:
    return step(p, x, MethodId.HN)


def mtn_step(p: ProblemSpec, x) -> np.ndarray:
    return step(p, x, MethodId.MTN)


def estimate_coc(trace: Sequence[IterationRecord], floor: float = 0.0) -> float:
    """Computational order of convergence from consecutive step norms.

    Uses the last three positive step norms ``s0, s1, s2`` that exceed
    ``floor`` and returns ``ln(s2/s1) / ln(s1/s0)``. If that triple is
    degenerate (a unit ratio) the previous triple is tried.

    Raises
    ------
    InsufficientTrace
        Fewer than three usable step norms.
    DegenerateTrace
        No usable triple has well-defined log-ratios.
    """
    steps = [r.step_norm for r in trace
             if r.step_norm is not None and r.step_norm > floor and math.isfinite(r.step_norm)]
    if len(steps) < 3:
        raise InsufficientTrace(f"need 3 positive step norms, have {len(steps)}")
    for k in range(len(steps) - 1, 1, -1):
        s0, s1, s2 = steps[k - 2], steps[k - 1], steps[k]
        den = math.log(s1 / s0)
        num = math.log(s2 / s1)
        if den != 0.0 and num != 0.0:
            return num / den
    raise DegenerateTrace("every step-norm triple has a unit ratio")


def saturation_floor(trace: Sequence[IterationRecord]) -> float:
    scale = max((float(np.max(np.abs(r.x))) for r in trace), default=0.0)
    return SATURATION_ULPS * _EPS * max(1.0, scale)


def solve(p: ProblemSpec, x0, cfg: SolveConfig = SolveConfig()) -> SolveReport:
    """Iterate ``cfg.method`` from ``x0`` until the stopping sum is small.

    After each update ``x_{n+1}`` the run stops as converged when
    ``||x_{n+1} - x_n|| + ||F(x_n)|| <= cfg.epsilon``. ``iterations_used``
    counts applied updates, including the one that triggers convergence.
    Failures never raise; they come back as the report's ``termination``.
    """
    x = _as_point(p, x0).copy()
    nk = cfg.norm_kind
    step_fn = _STEPS[cfg.method]
    records: list[IterationRecord] = []
    last_sum: Optional[float] = None
    termination = Termination.MAX_ITERATIONS
    detail = ""
    n = 0

    try:
        fx = evaluate_residual(p, x)
    except DomainViolation as exc:
        return SolveReport(Termination.DOMAIN_VIOLATION, x, 0, None, [], None, str(exc))

    while True:
        if not (norm(x, "inf") <= cfg.divergence_bound and norm(fx, "inf") <= cfg.divergence_bound):
            termination = Termination.NUMERIC_OVERFLOW
            detail = f"iterate or residual exceeded {cfg.divergence_bound:g}"
            break
        if n >= cfg.max_iterations:
            termination = Termination.MAX_ITERATIONS
            break
        try:
            x_new = step_fn(_Point(p, x, fx))
        except SingularMatrix as exc:
            termination, detail = Termination.SINGULAR_JACOBIAN, str(exc)
            break
        except DomainViolation as exc:
            termination, detail = Termination.DOMAIN_VIOLATION, str(exc)
            break
        if not np.all(np.isfinite(x_new)):
            termination, detail = Termination.NUMERIC_OVERFLOW, "update produced a non-finite iterate"
            break
        step_norm = norm(x_new - x, nk)
        res_norm = norm(fx, nk)
        records.append(IterationRecord(n, x.copy(), res_norm, step_norm))
        last_sum = step_norm + res_norm
        n += 1
        x = x_new
        try:
            fx = evaluate_residual(p, x)
        except DomainViolation as exc:
            fx = None
            termination, detail = Termination.DOMAIN_VIOLATION, str(exc)
            if last_sum <= cfg.epsilon:
                termination, detail = Termination.CONVERGED, ""
            break
        if last_sum <= cfg.epsilon:
            termination = Termination.CONVERGED
            break

    if fx is not None:
        records.append(IterationRecord(n, x.copy(), norm(fx, nk), None))

    coc = None
    if n >= 4:
        try:
            coc = estimate_coc(records, saturation_floor(records))
        except (InsufficientTrace, DegenerateTrace):
            coc = None

    return SolveReport(
        termination=termination,
        final_iterate=x,
        iterations_used=n,
        error_estimate=last_sum,
        trace=records if cfg.trace_enabled else [],
        coc_estimate=coc,
        detail=detail,
    )


def solve_with(p: ProblemSpec, x0, method: MethodId | str, **kwargs) -> SolveReport:
    """Shorthand for ``solve(p, x0, SolveConfig(method=method, **kwargs))``."""
    return solve(p, x0, SolveConfig(method=MethodId(method), **kwargs))
