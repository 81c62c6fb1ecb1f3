"""Quadrature-derived Newton iterations (CN, TN, MN, HN, MTN) for nonlinear systems."""

from .errors import (
    DegenerateTrace,
    DomainViolation,
    InsufficientTrace,
    SamplingExhausted,
    SingularMatrix,
    SolverError,
    UnknownProblem,
)
from .jacobian import check_jacobian, fd_jacobian
from .linalg import LuFactors, NormKind, lu_factor, lu_solve, norm
from .methods import (
    cn_step,
    estimate_coc,
    hn_step,
    mn_step,
    mtn_step,
    predictor,
    solve,
    solve_with,
    tn_step,
)
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
from .problems import get_problem, list_problems

__version__ = "0.1.0"
