"""The energy functional Phi(f) = |grad u_f|^2 integrated over D, and its gradient 2 u_f."""
from __future__ import annotations

from dataclasses import dataclass

from .grid import Field, inner
from .operator import SparseOperator, energy
from .solver import DEFAULT_TOL, solve

DEFAULT_FD_EPS = 1e-4


@dataclass(frozen=True)
class PhiValue:
    energy_form: float
    duality_form: float

    @property
    def discrepancy(self) -> float:
        return abs(self.energy_form - self.duality_form)

    @property
    def value(self) -> float:
        return self.duality_form

    def __float__(self):
        return self.duality_form


def phi(A: SparseOperator, f: Field, tol: float = DEFAULT_TOL) -> PhiValue:
    """Evaluate Phi both as the energy of u_f and as the pairing <f, u_f>.

    The two agree up to solver tolerance; their gap is a cheap solve health check.
    """
    u, _ = solve(A, f, tol)
    return PhiValue(energy(A, u), inner(f, u))


def phi_and_state(A: SparseOperator, f: Field, tol: float = DEFAULT_TOL) -> tuple[float, Field]:
    u, _ = solve(A, f, tol)
    return inner(f, u), u


def grad_phi(A: SparseOperator, f: Field, tol: float = DEFAULT_TOL) -> Field:
    """L2 gradient of Phi at f, i.e. 2 u_f."""
    u, _ = solve(A, f, tol)
    return 2.0 * u


def directional_derivative_check(
    A: SparseOperator, f: Field, h: Field, eps: float = DEFAULT_FD_EPS, tol: float = DEFAULT_TOL
) -> float:
    """|central difference of Phi along h - <grad Phi(f), h>|.

    Central differences are exact for a quadratic, so what remains is solver
    and rounding noise.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    plus = phi(A, f + eps * h, tol).value
    minus = phi(A, f - eps * h, tol).value
    fd = (plus - minus) / (2.0 * eps)
    return abs(fd - inner(grad_phi(A, f, tol), h))
