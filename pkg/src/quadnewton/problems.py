"""The eight benchmark systems (a)-(h) and their published results.

Each entry carries the analytic Jacobian, a domain guard, the published
starting point, reference roots and the per-method rows of the published
tables (``paper_rows``), which the bench harness compares against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import UnknownProblem
from .model import MethodId, ProblemSpec, Provenance, ReferenceRoot

SQRT2 = math.sqrt(2.0)
POLE_TOL = 1e-12

D, P, T = Provenance.DERIVED, Provenance.PAPER, Provenance.TRIVIAL


@dataclass(frozen=True)
class PublishedRow:
    """One published table row. ``solution is None`` means "No convergence"."""

    solution: Optional[tuple[float, ...]]
    iterations: Optional[int]
    error: Optional[float]
    note: str = ""

    @property
    def converged(self) -> bool:
        return self.solution is not None


@dataclass(frozen=True)
class BenchmarkEntry:
    problem: ProblemSpec
    paper_start: tuple[float, ...]
    paper_rows: dict = field(default_factory=dict)
    # Accept any root (residual certificate) instead of the printed one.
    multi_root: bool = False

    @property
    def id(self) -> str:
        return self.problem.id


def near_tan_pole(u: float) -> bool:
    r = math.fmod(u - math.pi / 2, math.pi)
    r = abs(r)
    return min(r, math.pi - r) <= POLE_TOL


# (a) ------------------------------------------------------------------------
# Published roots satisfy exp(x1)*exp(x2) + x1*cos(x2) = 0 (see README).

def _f_a(x):
    x1, x2 = x
    return np.array([np.exp(x1) * np.exp(x2) + x1 * np.cos(x2), x1 + x2 - 1.0])


def _j_a(x):
    x1, x2 = x
    e = np.exp(x1) * np.exp(x2)
    return np.array([[e + np.cos(x2), e - x1 * np.sin(x2)], [1.0, 1.0]])


# (b) ------------------------------------------------------------------------

def _f_b(x):
    x1, x2 = x
    return np.array([x1 * x1 + 3.0 * np.log(x1) - x2 * x2,
                     2.0 * x1 * x1 - x1 * x2 - 5.0 * x1 + 1.0])


def _j_b(x):
    x1, x2 = x
    return np.array([[2.0 * x1 + 3.0 / x1, -2.0 * x2],
                     [4.0 * x1 - x2 - 5.0, -x1]])


def _g_b(x):
    if x[0] <= 0.0:
        return f"ln(x1) undefined for x1 = {x[0]:.6g} <= 0"
    return None


def _jg_b(x):
    if x[0] == 0.0:
        return "3/x1 undefined at x1 = 0"
    return None


# (c) ------------------------------------------------------------------------

def _f_c(x):
    x1, x2 = x
    return np.array([x1 + 2.0 * x2 - 3.0, 2.0 * x1 * x1 + x2 * x2 - 5.0])


def _j_c(x):
    x1, x2 = x
    return np.array([[1.0, 2.0], [4.0 * x1, 2.0 * x2]])


# (d) ------------------------------------------------------------------------

def _f_d(x):
    x1, x2 = x
    return np.array([np.log(x1 * x1) - 2.0 * np.log(np.cos(x2)),
                     x1 * np.tan(x1 / SQRT2 + x2) - SQRT2])


def _j_d(x):
    x1, x2 = x
    u = x1 / SQRT2 + x2
    sec2 = 1.0 / np.cos(u) ** 2
    return np.array([[2.0 / x1, 2.0 * np.tan(x2)],
                     [np.tan(u) + x1 * sec2 / SQRT2, x1 * sec2]])


def _g_d(x):
    x1, x2 = x
    if x1 == 0.0:
        return "ln(x1^2) undefined at x1 = 0"
    if np.cos(x2) <= 0.0:
        return f"ln(cos(x2)) undefined: cos({x2:.6g}) <= 0"
    if near_tan_pole(x1 / SQRT2 + x2):
        return "tan(x1/sqrt(2) + x2) evaluated at a pole"
    return None


def _jg_d(x):
    x1, x2 = x
    if x1 == 0.0:
        return "2/x1 undefined at x1 = 0"
    if near_tan_pole(x2):
        return "tan(x2) evaluated at a pole"
    if near_tan_pole(x1 / SQRT2 + x2):
        return "tan(x1/sqrt(2) + x2) evaluated at a pole"
    return None


# (e) ------------------------------------------------------------------------

def _f_e(x):
    x1, x2 = x
    return np.array([x1 + np.exp(x2) - np.cos(x2), 3.0 * x1 - x2 - np.sin(x2)])


def _j_e(x):
    x1, x2 = x
    return np.array([[1.0, np.exp(x2) + np.sin(x2)], [3.0, -1.0 - np.cos(x2)]])


# (f) ------------------------------------------------------------------------

def _f_f(x):
    x1, x2, x3 = x
    return np.array([x1 * x1 + x2 * x2 + x3 * x3 - 9.0,
                     x1 * x2 * x3 - 1.0,
                     x1 + x2 - x3 * x3])


def _j_f(x):
    x1, x2, x3 = x
    return np.array([[2.0 * x1, 2.0 * x2, 2.0 * x3],
                     [x2 * x3, x1 * x3, x1 * x2],
                     [1.0, 1.0, -2.0 * x3]])


# (g) ------------------------------------------------------------------------

def _f_g(x):
    x1, x2, x3 = x
    return np.array([np.cos(x2) - np.sin(x1),
                     np.exp(x1 * np.log(x3)) - 1.0 / x2,
                     np.exp(x1) - x3 * x3])


def _j_g(x):
    x1, x2, x3 = x
    lnx3 = np.log(x3)
    pw = np.exp(x1 * lnx3)
    return np.array([[-np.cos(x1), -np.sin(x2), 0.0],
                     [pw * lnx3, 1.0 / (x2 * x2), x1 * pw / x3],
                     [np.exp(x1), 0.0, -2.0 * x3]])


def _g_g(x):
    x1, x2, x3 = x
    if x3 <= 0.0:
        return f"x3^x1 needs x3 > 0, got x3 = {x3:.6g}"
    if x2 == 0.0:
        return "1/x2 undefined at x2 = 0"
    return None


# (h) ------------------------------------------------------------------------

def _f_h(x):
    x1, x2, x3, x4 = x
    return np.array([x2 * x3 + x4 * (x2 + x3),
                     x1 * x3 + x4 * (x1 + x3),
                     x1 * x2 + x4 * (x1 + x2),
                     x1 * x2 + x1 * x3 + x2 * x3 - 1.0])


def _j_h(x):
    x1, x2, x3, x4 = x
    return np.array([[0.0, x3 + x4, x2 + x4, x2 + x3],
                     [x3 + x4, 0.0, x1 + x4, x1 + x3],
                     [x2 + x4, x1 + x4, 0.0, x1 + x2],
                     [x2 + x3, x1 + x3, x1 + x2, 0.0]])


_T = 1.0 / math.sqrt(3.0)
_C_X2 = (24.0 - math.sqrt(108.0)) / 18.0

NO = PublishedRow(None, None, None)


def _rows(cn, tn, mn, hn, mtn):
    return {MethodId.CN: cn, MethodId.TN: tn, MethodId.MN: mn,
            MethodId.HN: hn, MethodId.MTN: mtn}


def _build() -> dict[str, BenchmarkEntry]:
    reg = {}

    def add(pid, dim, f, j, guard, start, roots, display, rows, multi_root=False, jguard=None):
        spec = ProblemSpec(
            id=pid, dim=dim, residual=f, jacobian=j,
            domain_guard=guard or (lambda x: None),
            jacobian_guard=jguard,
            default_starts=(start,),
            reference_roots=tuple(ReferenceRoot(tuple(r), prov) for r, prov in roots),
            display=display,
        )
        reg[pid] = BenchmarkEntry(spec, start, rows, multi_root)

    add("a", 2, _f_a, _j_a, None, (1.0, 2.0),
        [((46.611444489855017742, -45.611444489855017742), D),
         ((-4.3816197547567355643, 5.3816197547567355643), D),
         ((-12.925277534851974015, 13.925277534851974015), D),
         ((-16.444818901245253361, 17.444818901245253361), D),
         ((46.61144449, -45.61144449), P)],
        "exp(x1)*exp(x2) + x1*cos(x2) = 0; x1 + x2 - 1 = 0",
        _rows(PublishedRow((46.61144449, -45.61144449), 9, 9.33e-15),
              PublishedRow((-4.38161975, 5.38161976), 5, 9.10e-14),
              PublishedRow((-12.92527753, 13.92527753), 6, 3.55e-15),
              None,  # left blank in the published table
              PublishedRow((-16.44481890, 17.44481890), 6, 1.64e-14, "printed without parentheses")),
        multi_root=True)
    b_root = (5.26375932, 5.71748439)
    add("b", 2, _f_b, _j_b, _g_b, (3.4, 2.2),
        [((5.2637529322012122494, 5.7174843859782494779), D), (b_root, P)],
        "x1^2 + 3*ln(x1) - x2^2 = 0; 2*x1^2 - x1*x2 - 5*x1 + 1 = 0",
        _rows(PublishedRow(b_root, 10, 7.99e-15), PublishedRow(b_root, 7, 6.21e-15),
              PublishedRow(b_root, 7, 4.44e-15), PublishedRow(b_root, 8, 4.44e-15),
              PublishedRow(b_root, 8, 8.88e-15)),
        jguard=_jg_b)
    c_root = (1.48803387, 0.7558306)
    add("c", 2, _f_c, _j_c, None, (1.5, 1.0),
        [((3.0 - 2.0 * _C_X2, _C_X2), D), (c_root, P)],
        "x1 + 2*x2 - 3 = 0; 2*x1^2 + x2^2 - 5 = 0",
        _rows(PublishedRow(c_root, 5, 9.99e-16), PublishedRow(c_root, 4, 9.99e-16),
              PublishedRow(c_root, 4, 9.99e-16), PublishedRow(c_root, 5, 9.99e-15),
              PublishedRow(c_root, 4, 9.99e-16)))
    add("d", 2, _f_d, _j_d, _g_d, (0.2, 0.2),
        [((0.95480414164162941903, 6.5849814844942481634), D),
         ((0.95480414, 6.58498148), P)],
        "ln(x1^2) - 2*ln(cos(x2)) = 0; x1*tan(x1/sqrt(2) + x2) - sqrt(2) = 0",
        _rows(NO, NO, NO, NO, PublishedRow((0.95480414, 6.58498148), 8, 1.33e-15)),
        jguard=_jg_d)
    add("e", 2, _f_e, _j_e, None, (-1.0, -3.0),
        [((0.0, 0.0), T)],
        "x1 + exp(x2) - cos(x2) = 0; 3*x1 - x2 - sin(x2) = 0",
        _rows(PublishedRow((2.1378e-16, 3.207e-16), 457, 6.22e-16),
              PublishedRow((4.817e-18, 7.221e-18), 28, 1.21e-27),
              PublishedRow((-2.471e-17, -3.707e-27), 8, 4.85e-2, "error inconsistent with stopping rule"),
              PublishedRow((6.715e-17, 9.107e-17), 53, 2.77e-22),
              PublishedRow((-1.364e-17, -2.046e-17), 49, 0.0, "second coordinate malformed in print")),
        multi_root=True)
    f_root = (-2.090295, 2.140258, -0.223525)
    add("f", 3, _f_f, _j_f, None, (2.0, 2.0, 0.5),
        [((-2.0902946422552349502, 2.1402581220051751388, -0.22352512107130193577), D),
         (f_root, P)],
        "x1^2 + x2^2 + x3^2 - 9 = 0; x1*x2*x3 - 1 = 0; x1 + x2 - x3^2 = 0",
        _rows(PublishedRow(f_root, 8, 8.88e-16), PublishedRow(f_root, 5, 8.88e-16),
              PublishedRow(f_root, 5, 9.02e-16), PublishedRow(f_root, 6, 1.78e-15),
              PublishedRow(f_root, 5, 9.02e-16)))
    g_root = (0.909569, 0.661227, 1.575834)
    add("g", 3, _f_g, _j_g, _g_g, (-2.5, 1.0, 1.0),
        [((0.90956949452004488381, 0.66122683227485173542, 1.5758341439069990361), D),
         (g_root, P)],
        "cos(x2) - sin(x1) = 0; x3^x1 - 1/x2 = 0; exp(x1) - x3^2 = 0",
        _rows(PublishedRow(g_root, 10, 6.82e-14), NO, PublishedRow(g_root, 5, 8.48e-14), NO, NO))
    h_root = (0.5773, 0.5773, 0.5773, -0.2886)
    add("h", 4, _f_h, _j_h, None, (0.5, 0.5, 0.5, 0.2),
        [((_T, _T, _T, -0.5 * _T), D), (h_root, P)],
        "x2*x3 + x4*(x2 + x3) = 0; x1*x3 + x4*(x1 + x3) = 0; "
        "x1*x2 + x4*(x1 + x2) = 0; x1*x2 + x1*x3 + x2*x3 - 1 = 0",
        _rows(PublishedRow(h_root, 5, 2.22e-16), PublishedRow(h_root, 4, 1.11e-16),
              PublishedRow(h_root, 4, 1.11e-16), PublishedRow(h_root, 6, 1.31e-13),
              PublishedRow(h_root, 4, 1.11e-16)))
    return reg


_REGISTRY = _build()
PROBLEM_IDS = tuple(sorted(_REGISTRY))


def get_problem(pid: str) -> BenchmarkEntry:
    try:
        return _REGISTRY[pid.strip().lower()]
    except (KeyError, AttributeError):
        raise UnknownProblem(
            f"unknown problem {pid!r}; choose from {', '.join(PROBLEM_IDS)}"
        ) from None


def list_problems() -> list[BenchmarkEntry]:
    return [_REGISTRY[k] for k in PROBLEM_IDS]


# Synthetic systems used by the test-suite and the affine-collapse check.

def affine_problem(a, b, pid: str = "affine") -> ProblemSpec:
    """``F(x) = A x - b``; Jacobian is ``A`` everywhere."""
    a = np.array(a, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    n = b.size
    return ProblemSpec(
        id=pid, dim=n,
        residual=lambda x: a @ x - b,
        jacobian=lambda x: a.copy(),
        default_starts=(tuple([0.0] * n),),
        display="A*x - b = 0",
    )


def shift_problem(c, pid: str = "shift") -> ProblemSpec:
    """``F(x) = x - c``, the identity Jacobian case."""
    c = np.array(c, dtype=np.float64)
    n = c.size
    return ProblemSpec(
        id=pid, dim=n,
        residual=lambda x: x - c,
        jacobian=lambda x: np.eye(n),
        default_starts=(tuple([0.0] * n),),
        reference_roots=(ReferenceRoot(tuple(c), T),),
        display="x - c = 0",
    )
