"""Lowest Dirichlet eigenpairs by deflated inverse iteration."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NonConvergenceError
from .functional import phi
from .grid import Field, GridDomain, inner, norm, normalize
from .operator import SparseOperator, apply, energy
from .optimizer import random_unit_field, sign_normalize
from .solver import DEFAULT_TOL, solve

MAX_PAIRS = 8


@dataclass(frozen=True)
class EigenPair:
    eigenvalue: float
    vector: Field
    residual: float


def rectangle_eigenvalue(domain: GridDomain, m: int, n: int) -> float:
    """Closed-form eigenvalue of the five-point operator on a full rectangle, mode (m, n)."""
    lx = (domain.nx + 1) * domain.hx
    ly = (domain.ny + 1) * domain.hy
    return 4.0 / domain.hx**2 * math.sin(m * math.pi * domain.hx / (2 * lx)) ** 2 + (
        4.0 / domain.hy**2 * math.sin(n * math.pi * domain.hy / (2 * ly)) ** 2
    )


def _deflate(v: Field, basis: list[Field]) -> Field:
    # two passes of classical Gram-Schmidt keep orthogonality at rounding level
    for _ in range(2):
        for b in basis:
            v = v - inner(v, b) * b
    return v


def eigen_smallest(
    A: SparseOperator,
    k: int = 1,
    tol: float = 1e-10,
    max_iter: int = 5000,
    seed: int = 0,
    solver_tol: float = DEFAULT_TOL,
) -> list[EigenPair]:
    """First ``k`` eigenpairs, ascending.

    Pair j iterates v <- normalize(A^{-1} v) while projecting out pairs 1..j-1
    at every step, and stops when |A v - lambda v| <= tol * lambda.
    """
    if k < 1 or k > min(MAX_PAIRS, A.n):
        raise InvalidArgumentError(f"k must lie in [1, {min(MAX_PAIRS, A.n)}], got {k}")
    domain = A.domain
    pairs: list[EigenPair] = []
    basis: list[Field] = []
    for j in range(k):
        v = normalize(_deflate(random_unit_field(domain, seed + j), basis))
        for _ in range(max_iter):
            w, _ = solve(A, v, solver_tol)
            v = normalize(_deflate(w, basis))
            lam = energy(A, v)
            residual = norm(apply(A, v) - lam * v)
            if residual <= tol * lam:
                break
        else:
            raise NonConvergenceError(f"eigenpair {j + 1} did not converge in {max_iter} iterations")
        v = sign_normalize(v) * v
        basis.append(v)
        pairs.append(EigenPair(lam, v, residual))
    pairs.sort(key=lambda p: p.eigenvalue)
    return pairs


def verify_phi_reduction(A: SparseOperator, pairs: list[EigenPair]) -> list[float]:
    """|Phi(u_k) * lambda_k - 1| for each pair; zero for exact eigenpairs."""
    out = []
    for p in pairs:
        if not np.any(p.vector.values):
            raise InvalidArgumentError("eigenvector is zero")
        out.append(abs(phi(A, p.vector).value * p.eigenvalue - 1.0))
    return out
