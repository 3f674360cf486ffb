"""Maximization of Phi over the L2 unit ball.

Two routes share one stopping rule:

* ``fixed-point``: f <- normalize(u_f). At a maximizer f is parallel to u_f,
  so iterating that alignment is inverse power iteration on A^{-1}.
* ``gradient-ascent``: f <- normalize(f + eta * 2 u_f), a projected gradient
  step on the sphere with a Rayleigh-scaled step eta = 0.4 / Phi(f).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NonConvergenceError
from .functional import phi_and_state
from .grid import Field, inner, norm, normalize
from .operator import SparseOperator
from .solver import DEFAULT_TOL

METHODS = ("fixed-point", "gradient-ascent")
STEP_FACTOR = 0.4
MAX_HALVINGS = 12


@dataclass(frozen=True)
class AscentConfig:
    method: str = "fixed-point"
    # None selects the adaptive step STEP_FACTOR / Phi(f_k)
    step: float | None = None
    tol: float = 1e-12
    max_iter: int = 50000
    seed: int = 0
    solver_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidArgumentError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.step is not None and not self.step > 0:
            raise InvalidArgumentError("step must be positive")
        if not 0 < self.tol < 1:
            raise InvalidArgumentError("tol must lie in (0, 1)")
        if self.max_iter < 1:
            raise InvalidArgumentError("max_iter must be >= 1")


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    phi: float
    movement: float


@dataclass
class MaximizerResult:
    f_hat: Field
    u_hat: Field
    phi_star: float
    trace: list[TraceRecord]
    extremality_residual: float
    method: str
    seed: int
    converged: bool = True

    @property
    def lambda_est(self) -> float:
        return 1.0 / self.phi_star

    @property
    def iterations(self) -> int:
        return len(self.trace)

    @property
    def alignment(self) -> float:
        """|<f_hat, u_hat/|u_hat|>|, equal to 1 exactly when f_hat is parallel to u_hat."""
        return abs(inner(self.f_hat, normalize(self.u_hat)))


def random_unit_field(domain, seed: int) -> Field:
    rng = np.random.default_rng(seed)
    while True:
        values = rng.uniform(-1.0, 1.0, domain.n_interior)
        if np.any(values):
            return normalize(Field(domain, values))


def sign_normalize(f: Field) -> float:
    """Sign that makes the largest-magnitude entry positive (first index wins ties)."""
    k = int(np.argmax(np.abs(f.values)))
    return -1.0 if f.values[k] < 0 else 1.0


def maximize(A: SparseOperator, config: AscentConfig = AscentConfig(), initial: Field | None = None):
    """Maximize Phi over the unit ball, returning a :class:`MaximizerResult`.

    Stops once the relative increase of Phi and the sign-aligned movement
    |f_{k+1} - s f_k| both drop to ``config.tol``.
    """
    domain = A.domain
    f = normalize(initial) if initial is not None else random_unit_field(domain, config.seed)
    phi_k, u = phi_and_state(A, f, config.solver_tol)
    trace: list[TraceRecord] = []
    scale = 1.0

    for k in range(1, config.max_iter + 1):
        if config.method == "fixed-point":
            f_new = normalize(u)
            phi_new, u_new = phi_and_state(A, f_new, config.solver_tol)
        else:
            for _ in range(MAX_HALVINGS + 1):
                eta = scale * (config.step if config.step is not None else STEP_FACTOR / phi_k)
                f_new = normalize(f + (2.0 * eta) * u)
                phi_new, u_new = phi_and_state(A, f_new, config.solver_tol)
                if phi_new >= phi_k:
                    break
                scale *= 0.5
            else:
                # no step raises Phi any more: only rounding is left, f is stationary
                trace.append(TraceRecord(k, phi_k, 0.0))
                return _finish(A, f, u, phi_k, trace, config)

        sigma = 1.0 if inner(f_new, f) >= 0 else -1.0
        movement = norm(f_new - sigma * f)
        rel_increase = (phi_new - phi_k) / phi_new
        trace.append(TraceRecord(k, phi_new, movement))
        f, u, phi_k = f_new, u_new, phi_new
        if rel_increase <= config.tol and movement <= config.tol:
            return _finish(A, f, u, phi_k, trace, config)

    partial = _finish(A, f, u, phi_k, trace, config, converged=False)
    raise NonConvergenceError(
        f"{config.method} did not converge in {config.max_iter} iterations", partial
    )


def _finish(A, f, u, phi_k, trace, config, converged=True) -> MaximizerResult:
    s = sign_normalize(f)
    f_hat, u_hat = s * f, s * u
    return MaximizerResult(
        f_hat=f_hat,
        u_hat=u_hat,
        phi_star=phi_k,
        trace=trace,
        extremality_residual=_residual_at(f_hat, u_hat, 100, config.seed),
        method=config.method,
        seed=config.seed,
        converged=converged,
    )


def ball_probes(domain, n_probes: int, seed: int) -> list[Field]:
    """Random members of the unit ball: uniform direction, radius uniform in [0, 1]."""
    rng = np.random.default_rng(seed)
    probes = []
    for _ in range(n_probes):
        direction = rng.standard_normal(domain.n_interior)
        radius = rng.uniform(0.0, 1.0)
        probes.append(radius * normalize(Field(domain, direction)))
    return probes


def _residual_at(f_hat: Field, u_hat: Field, n_probes: int, seed: int, probes=None) -> float:
    grad = 2.0 * u_hat
    base = inner(grad, f_hat)
    if probes is None:
        probes = ball_probes(f_hat.domain, n_probes, seed)
    return max(inner(grad, p) - base for p in probes)


def extremality_residual(
    A: SparseOperator,
    f_hat: Field,
    n_probes: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    probes: list[Field] | None = None,
) -> float:
    """max over random f in the ball of <Phi'(f_hat), f - f_hat>.

    Non-positive (up to solver noise) when f_hat satisfies the first-order
    optimality condition for the maximum over the ball. ``probes`` overrides
    the seeded draw.
    """
    if probes is not None and len(probes) == 0:
        raise InvalidArgumentError("probes must not be empty")
    if probes is None and n_probes < 1:
        raise InvalidArgumentError("n_probes must be >= 1")
    if not math.isclose(norm(f_hat), 1.0, rel_tol=0.0, abs_tol=1e-10):
        raise InvalidArgumentError("f_hat must lie on the unit sphere")
    _, u_hat = phi_and_state(A, f_hat, tol)
    return _residual_at(f_hat, u_hat, n_probes, seed, probes)
