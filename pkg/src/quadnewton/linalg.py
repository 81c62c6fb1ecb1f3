"""Dense LU factorization with partial pivoting, triangular solves and norms.

Vectors and matrices are plain ``numpy.float64`` arrays. No inverse is ever
formed; every ``J^{-1} v`` in the solvers goes through :func:`lu_factor`
followed by :func:`lu_solve`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrix

SINGULAR_RTOL = 1e-12


class NormKind(str, enum.Enum):
    EUCLIDEAN = "l2"
    INFINITY = "inf"


@dataclass(frozen=True)
class LuFactors:
    """Packed factors of ``P A = L U``.

    Attributes
    ----------
    lu : ndarray
        Strictly lower part holds the multipliers of the unit lower factor,
        upper part (with diagonal) holds ``U``.
    perm : ndarray of int
        Row ``i`` of ``P A`` is row ``perm[i]`` of ``A``.
    sign : int
        Parity of the permutation, ``+1`` or ``-1``.
    """

    lu: np.ndarray
    perm: np.ndarray
    sign: int

    @property
    def dim(self) -> int:
        return self.lu.shape[0]

    def lower(self) -> np.ndarray:
        return np.tril(self.lu, -1) + np.eye(self.dim)

    def upper(self) -> np.ndarray:
        return np.triu(self.lu)

    def reconstruct(self) -> np.ndarray:
        """Return ``A`` rebuilt from the factors (undoing the permutation)."""
        pa = self.lower() @ self.upper()
        a = np.empty_like(pa)
        a[self.perm] = pa
        return a


def as_vector(values) -> np.ndarray:
    v = np.array(values, dtype=np.float64).reshape(-1)
    if v.size == 0:
        raise ValueError("vector must have at least one entry")
    return v


def matrix_inf_norm(a: np.ndarray) -> float:
    """Maximum absolute row sum."""
    return float(np.max(np.sum(np.abs(a), axis=1)))


def lu_factor(a) -> LuFactors:
    """Factor a square matrix with row partial pivoting.

    A pivot is rejected as singular when its magnitude is at most
    ``1e-12 * max(1, ||A||_inf)``.

    Raises
    ------
    ValueError
        If ``a`` is not square or holds non-finite entries.
    SingularMatrix
        If any pivot is at or below the threshold.
    """
    lu = np.array(a, dtype=np.float64)
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1] or lu.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {lu.shape}")
    if not np.all(np.isfinite(lu)):
        raise ValueError("matrix has non-finite entries")
    n = lu.shape[0]
    threshold = SINGULAR_RTOL * max(1.0, matrix_inf_norm(lu))
    perm = np.arange(n)
    sign = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= threshold:
            raise SingularMatrix(
                f"pivot {k} has magnitude {abs(lu[p, k]):.3e} <= {threshold:.3e}"
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LuFactors(lu=lu, perm=perm, sign=sign)


def lu_solve(factors: LuFactors, b) -> np.ndarray:
    """Solve ``A x = b`` given the factors of ``A``."""
    b = np.asarray(b, dtype=np.float64)
    n = factors.dim
    if b.shape != (n,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({n},)")
    lu = factors.lu
    x = b[factors.perm].copy()
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def solve(a, b) -> np.ndarray:
    """Convenience wrapper: factor ``a`` then solve against ``b``."""
    return lu_solve(lu_factor(a), b)


def norm(v, kind: NormKind | str = NormKind.EUCLIDEAN) -> float:
    v = np.asarray(v, dtype=np.float64)
    kind = NormKind(kind)
    if kind is NormKind.INFINITY:
        return float(np.max(np.abs(v))) if v.size else 0.0
    # hypot-style scaling keeps huge/tiny entries from over/underflowing
    scale = float(np.max(np.abs(v))) if v.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        return scale
    return scale * float(np.sqrt(np.sum((v / scale) ** 2)))
