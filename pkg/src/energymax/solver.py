"""Jacobi-preconditioned conjugate gradients for A u = f."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NonConvergenceError, NumericalBreakdownError
from .grid import Field
from .operator import SparseOperator

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    relative_residual: float
    converged: bool
    # |b - A u| / |b| recomputed at exit; it bottoms out near eps * cond(A)
    true_residual: float = 0.0


def solve(A: SparseOperator, f: Field, tol: float = DEFAULT_TOL, max_iter: int | None = None):
    """Return ``(u, report)`` for A u = f.

    Convergence is declared on the Jacobi-preconditioned recursive residual,
    |D^-1 r| <= tol |D^-1 f|. The initial guess is always zero, so repeated
    calls are bit-identical.
    """
    if not 0 < tol < 1:
        raise InvalidArgumentError(f"tol must lie in (0, 1), got {tol}")
    if max_iter is None:
        max_iter = 10 * A.n
    if max_iter < 1:
        raise InvalidArgumentError("max_iter must be >= 1")
    if f.values.shape != (A.n,):
        raise InvalidArgumentError("right-hand side does not match the operator")

    b = f.values
    u = np.zeros_like(b)
    if not np.any(b):
        return Field(f.domain, u), SolveReport(0, 0.0, True, 0.0)

    inv_diag = 1.0 / A.diagonal
    r = b.copy()
    z = inv_diag * r
    p = z.copy()
    rz = r @ z
    z0_norm = np.sqrt(z @ z)
    rel = 1.0
    for it in range(1, max_iter + 1):
        q = A.matvec(p)
        pq = p @ q
        if not np.isfinite(pq) or pq <= 0.0:
            raise NumericalBreakdownError(f"CG breakdown at iteration {it}: p.Ap = {pq}")
        alpha = rz / pq
        u += alpha * p
        r -= alpha * q
        z = inv_diag * r
        rel = np.sqrt(z @ z) / z0_norm
        if not np.isfinite(rel):
            raise NumericalBreakdownError(f"non-finite residual at iteration {it}")
        if rel <= tol:
            return Field(f.domain, u), SolveReport(it, float(rel), True, _true_residual(A, u, b))
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new

    report = SolveReport(max_iter, float(rel), False, _true_residual(A, u, b))
    raise NonConvergenceError(f"CG did not reach tol={tol} in {max_iter} iterations", report)


def _true_residual(A, u, b):
    r = b - A.matvec(u)
    return float(np.sqrt(r @ r) / np.sqrt(b @ b))
