"""Forward-difference Jacobians and validation of analytic Jacobians."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import DomainViolation, SamplingExhausted
from .linalg import matrix_inf_norm
from .model import ProblemSpec, evaluate_jacobian, evaluate_residual

SQRT_EPS = float(np.sqrt(np.finfo(np.float64).eps))


def fd_jacobian(f: Callable[[np.ndarray], np.ndarray], x, direction: int = 1) -> np.ndarray:
    """One-sided difference approximation of the Jacobian of ``f`` at ``x``.

    Column ``j`` is ``(f(x + h_j e_j) - f(x)) / h_j`` with
    ``h_j = direction * sqrt(eps) * max(1, |x_j|)``; pass ``direction=-1``
    for a backward difference when the forward point leaves the domain.
    Domain errors from ``f`` propagate unchanged.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    x = np.asarray(x, dtype=np.float64)
    f0 = np.asarray(f(x), dtype=np.float64)
    jac = np.empty((f0.size, x.size))
    for j in range(x.size):
        h = direction * SQRT_EPS * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += h
        # use the representable step actually taken
        h = xp[j] - x[j]
        jac[:, j] = (np.asarray(f(xp), dtype=np.float64) - f0) / h
    return jac


def _fd_at(p: ProblemSpec, x: np.ndarray) -> np.ndarray:
    f = lambda z: evaluate_residual(p, z)
    try:
        return fd_jacobian(f, x, 1)
    except DomainViolation:
        return fd_jacobian(f, x, -1)


def sample_points(p: ProblemSpec, samples: int, seed: int, radius: float = 0.5) -> list[np.ndarray]:
    """Domain-valid points drawn uniformly around ``p.default_starts``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    starts = [np.asarray(s, dtype=np.float64) for s in p.default_starts] or [np.zeros(p.dim)]
    rng = np.random.default_rng(seed)
    points, rejected = [], 0
    while len(points) < samples:
        centre = starts[len(points) % len(starts)]
        x = centre + rng.uniform(-radius, radius, size=p.dim)
        try:
            evaluate_residual(p, x)
            evaluate_jacobian(p, x)
            _fd_at(p, x)
        except DomainViolation:
            rejected += 1
            if rejected >= 100 * samples:
                raise SamplingExhausted(
                    f"{rejected} rejected draws while sampling problem {p.id}"
                ) from None
            continue
        points.append(x)
    return points


def check_jacobian(p: ProblemSpec, samples: int = 20, seed: int = 0) -> float:
    """Largest relative gap between analytic and finite-difference Jacobians.

    Returns ``max ||J_analytic - J_fd||_inf / max(1, ||J_analytic||_inf)``
    over the sampled points.
    """
    worst = 0.0
    for x in sample_points(p, samples, seed):
        ja = evaluate_jacobian(p, x)
        jf = _fd_at(p, x)
        worst = max(worst, matrix_inf_norm(ja - jf) / max(1.0, matrix_inf_norm(ja)))
    return worst
