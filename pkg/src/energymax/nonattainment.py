"""Phi has no minimizer on the unit sphere, only on the ball (at f = 0).

On a fixed grid weak convergence has no meaning, so the demonstration is
quantitative: the orthonormal diagonal modes sin(k pi x) sin(k pi y) lie on
the sphere and Phi along them decays like 1/(2 pi^2 k^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .functional import phi
from .grid import Field, GridDomain, from_function, normalize, zeros
from .operator import SparseOperator
from .optimizer import ball_probes
from .spectral import rectangle_eigenvalue


@dataclass(frozen=True)
class RemarkRow:
    k: int
    phi_k: float
    closed_form: float
    discrete_form: float


def _side_lengths(domain: GridDomain) -> tuple[float, float]:
    if domain.kind != "rect" or not domain.mask.all():
        raise InvalidArgumentError("oscillatory modes need a full rectangle")
    return (domain.nx + 1) * domain.hx, (domain.ny + 1) * domain.hy


def oscillatory_mode(domain: GridDomain, k: int) -> Field:
    lx, ly = _side_lengths(domain)
    if k < 1 or k > domain.nx / 2 or k > domain.ny / 2:
        raise InvalidArgumentError(f"mode {k} is not resolved on a {domain.nx}x{domain.ny} grid")
    return normalize(
        from_function(domain, lambda x, y: np.sin(k * math.pi * x / lx) * np.sin(k * math.pi * y / ly))
    )


def remark_table(domain: GridDomain, k_max: int | None = None, A: SparseOperator | None = None):
    from .operator import assemble

    lx, ly = _side_lengths(domain)
    if k_max is None:
        k_max = max(1, domain.nx // 4)
    if A is None:
        A = assemble(domain)
    rows = []
    for k in range(1, k_max + 1):
        f_k = oscillatory_mode(domain, k)
        continuum = 1.0 / (math.pi**2 * k**2 * (1.0 / lx**2 + 1.0 / ly**2))
        rows.append(
            RemarkRow(k, phi(A, f_k).value, continuum, 1.0 / rectangle_eigenvalue(domain, k, k))
        )
    return rows


def verify_zero_minimizer(A: SparseOperator, n_probes: int = 100, seed: int = 0) -> bool:
    """True iff Phi(0) == 0 and Phi > 0 at every nonzero random probe of the ball."""
    if phi(A, zeros(A.domain)).value != 0.0:
        return False
    for f in ball_probes(A.domain, n_probes, seed):
        if not np.any(f.values):
            continue
        if not phi(A, f).value > 0.0:
            return False
    return True
