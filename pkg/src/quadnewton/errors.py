"""Exception hierarchy shared across the package."""


class SolverError(Exception):
    """Base class for all errors raised by quadnewton."""


class SingularMatrix(SolverError):
    """A pivot fell at or below the singularity threshold."""


class DomainViolation(SolverError):
    """A point lies outside the real domain of a problem's residual."""


class UnknownProblem(SolverError, LookupError):
    """No benchmark problem is registered under the requested id."""


class SamplingExhausted(SolverError):
    """Rejection sampling could not find enough domain-valid points."""


class InsufficientTrace(SolverError):
    """Too few positive step norms to estimate a convergence order."""


class DegenerateTrace(SolverError):
    """Step norms give a zero or undefined log-ratio."""
