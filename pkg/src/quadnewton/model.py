"""Problem, configuration and report types shared by the solvers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainViolation
from .linalg import NormKind

Vector = np.ndarray
Residual = Callable[[np.ndarray], np.ndarray]
Guard = Callable[[np.ndarray], Optional[str]]


class MethodId(str, enum.Enum):
    CN = "CN"
    TN = "TN"
    MN = "MN"
    HN = "HN"
    MTN = "MTN"

    @classmethod
    def parse(cls, text: str) -> "MethodId":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(
                f"unknown method {text!r}; choose from {', '.join(m.value for m in cls)}"
            ) from None


class Termination(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    SINGULAR_JACOBIAN = "SingularJacobian"
    DOMAIN_VIOLATION = "DomainViolation"
    NUMERIC_OVERFLOW = "NumericOverflow"


class Provenance(str, enum.Enum):
    PAPER = "paper"  # digits as printed in the published tables
    DERIVED = "derived"  # recomputed to full double precision
    TRIVIAL = "trivial"  # exact by inspection


@dataclass(frozen=True)
class ReferenceRoot:
    point: tuple[float, ...]
    provenance: Provenance

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.point, dtype=np.float64)


def _always_ok(x: np.ndarray) -> Optional[str]:
    return None


@dataclass(frozen=True)
class ProblemSpec:
    """A square nonlinear system ``F(x) = 0`` with its analytic Jacobian.

    ``domain_guard`` returns ``None`` when ``x`` is inside the real domain of
    ``residual`` and a short description of the offending term otherwise.
    ``jacobian_guard`` does the same for the Jacobian expressions, which can
    be defined where the residual is not (e.g. ``d/dx ln cos x = -tan x``);
    it defaults to ``domain_guard``.
    """

    id: str
    dim: int
    residual: Residual
    jacobian: Callable[[np.ndarray], np.ndarray]
    domain_guard: Guard = _always_ok
    default_starts: tuple[tuple[float, ...], ...] = ()
    reference_roots: tuple[ReferenceRoot, ...] = ()
    display: str = ""
    jacobian_guard: Optional[Guard] = None


@dataclass(frozen=True)
class SolveConfig:
    method: MethodId = MethodId.MTN
    epsilon: float = 1e-14
    max_iterations: int = 500
    norm_kind: NormKind = NormKind.EUCLIDEAN
    divergence_bound: float = 1e12
    trace_enabled: bool = False

    def __post_init__(self):
        object.__setattr__(self, "method", MethodId(self.method))
        object.__setattr__(self, "norm_kind", NormKind(self.norm_kind))
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not self.divergence_bound > 1:
            raise ValueError(f"divergence_bound must exceed 1, got {self.divergence_bound}")


@dataclass(frozen=True)
class IterationRecord:
    """State at iterate ``x_n``; ``step_norm`` is ``||x_{n+1} - x_n||``."""

    n: int
    x: np.ndarray
    residual_norm: float
    step_norm: Optional[float] = None


@dataclass
class SolveReport:
    termination: Termination
    final_iterate: np.ndarray
    iterations_used: int
    error_estimate: Optional[float]
    trace: list[IterationRecord] = field(default_factory=list)
    coc_estimate: Optional[float] = None
    detail: str = ""

    @property
    def converged(self) -> bool:
        return self.termination is Termination.CONVERGED


def _check_point(p: ProblemSpec, x, guard: Guard) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (p.dim,):
        raise ValueError(f"problem {p.id} has dimension {p.dim}, got point of shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainViolation(f"non-finite point {x}")
    reason = guard(x)
    if reason is not None:
        raise DomainViolation(reason)
    return x


def evaluate_residual(p: ProblemSpec, x) -> np.ndarray:
    """Return ``F(x)``; raise :class:`DomainViolation` outside the domain."""
    x = _check_point(p, x, p.domain_guard)
    with np.errstate(all="ignore"):
        fx = np.asarray(p.residual(x), dtype=np.float64)
    if fx.shape != (p.dim,):
        raise ValueError(f"residual of {p.id} returned shape {fx.shape}")
    if not np.all(np.isfinite(fx)):
        raise DomainViolation(f"residual of {p.id} is non-finite at {x}")
    return fx


def evaluate_jacobian(p: ProblemSpec, x) -> np.ndarray:
    """Return the analytic Jacobian ``F'(x)`` as an ``n x n`` array."""
    x = _check_point(p, x, p.jacobian_guard or p.domain_guard)
    with np.errstate(all="ignore"):
        jx = np.asarray(p.jacobian(x), dtype=np.float64)
    if jx.shape != (p.dim, p.dim):
        raise ValueError(f"jacobian of {p.id} returned shape {jx.shape}")
    if not np.all(np.isfinite(jx)):
        raise DomainViolation(f"jacobian of {p.id} is non-finite at {x}")
    return jx
