"""Dense brute-force certificate for small grids.

Everything here is deliberately independent of the sparse path: the matrix is
rebuilt from the lattice directly and diagonalized by cyclic Jacobi rotations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NonConvergenceError
from .grid import Field, GridDomain

MAX_DENSE = 200
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    entries: np.ndarray
    # quadrature weight of the L2 structure the eigenvectors are normalized in
    weight: float = 1.0
    domain: GridDomain | None = None

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidArgumentError("dense matrix must be square")
        if a.shape[0] > MAX_DENSE:
            raise InvalidArgumentError(f"dense oracle limited to {MAX_DENSE} unknowns")
        if not np.array_equal(a, a.T):
            raise InvalidArgumentError("dense matrix must be exactly symmetric")
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def dense_assemble(domain: GridDomain) -> DenseMatrix:
    n = domain.n_interior
    if n > MAX_DENSE:
        raise InvalidArgumentError(f"{n} unknowns exceeds the dense guard of {MAX_DENSE}")
    cx, cy = 1.0 / domain.hx**2, 1.0 / domain.hy**2
    M = np.zeros((n, n))
    for row in range(n):
        i, j = domain.lattice_position(row)
        M[row, row] = 2.0 * cx + 2.0 * cy
        for di, dj, w in ((-1, 0, cx), (1, 0, cx), (0, -1, cy), (0, 1, cy)):
            col = domain.linear_index(i + di, j + dj)
            if col >= 0:
                M[row, col] = -w
    return DenseMatrix(M, domain.cell_weight, domain)


def jacobi_eigen(M: DenseMatrix, tol: float = 1e-14):
    """Full eigendecomposition by cyclic Jacobi with a threshold in early sweeps.

    Returns ascending eigenvalues and a matrix whose columns are the
    eigenvectors, scaled to unit norm in the weighted L2 inner product.
    """
    a = M.entries.copy()
    n = M.n
    V = np.eye(n)
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return _sorted(np.diag(a).copy(), V, M.weight)

    for sweep in range(MAX_SWEEPS):
        off = math.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= tol * scale:
            return _sorted(np.diag(a).copy(), V, M.weight)
        threshold = 0.2 * off / n**2 if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold or apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    raise NonConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def _sorted(evals, V, weight):
    order = np.argsort(evals, kind="stable")
    return evals[order], V[:, order] / math.sqrt(weight)


def brute_max(domain: GridDomain) -> tuple[float, Field]:
    """Exact discrete maximum of Phi over the sphere and its maximizer.

    Phi(f) = <f, A^{-1} f>, so the maximum is 1/lambda_min(A), attained at the
    corresponding eigenvector.
    """
    evals, V = jacobi_eigen(dense_assemble(domain))
    v = V[:, 0]
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0:
        v = -v
    return 1.0 / evals[0], Field(domain, v)
