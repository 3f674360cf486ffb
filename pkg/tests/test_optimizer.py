import math

import numpy as np
import pytest

from conftest import sampled_mode
from energymax.errors import InvalidArgumentError, NonConvergenceError
from energymax.functional import phi
from energymax.grid import inner, make_rectangle, norm, normalize
from energymax.operator import assemble
from energymax.optimizer import (
    METHODS,
    AscentConfig,
    ball_probes,
    extremality_residual,
    maximize,
    random_unit_field,
)

LAMBDA_3x3 = 128 * math.sin(math.pi / 8) ** 2


@pytest.mark.parametrize("method", METHODS)
def test_three_by_three(square3, method):
    d, A = square3
    res = maximize(A, AscentConfig(method=method, seed=1))
    assert res.phi_star == pytest.approx(1 / LAMBDA_3x3, rel=1e-12)
    assert res.phi_star == pytest.approx(0.0533470, abs=1e-7)
    assert abs(inner(res.f_hat, sampled_mode(d, 1, 1))) >= 1 - 1e-8


@pytest.mark.parametrize("method", METHODS)
def test_start_at_maximizer(square3, method):
    d, A = square3
    res = maximize(A, AscentConfig(method=method), initial=sampled_mode(d, 1, 1))
    assert res.iterations <= 2
    assert res.phi_star == pytest.approx(1 / LAMBDA_3x3, rel=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_mirrored_start(method):
    d = make_rectangle(9, 7, 1.0, 1.0)
    A = assemble(d)
    f0 = random_unit_field(d, 3)
    a = maximize(A, AscentConfig(method=method), initial=f0)
    b = maximize(A, AscentConfig(method=method), initial=-f0)
    assert a.phi_star == b.phi_star
    np.testing.assert_array_equal(a.f_hat.values, b.f_hat.values)


@pytest.fixture(scope="module")
def runs():
    d = make_rectangle(21, 17, 1.0, 0.8)
    A = assemble(d)
    return d, A, {m: maximize(A, AscentConfig(method=m, seed=5)) for m in METHODS}


def test_result_invariants(runs):
    d, A, res = runs
    for r in res.values():
        assert abs(norm(r.f_hat) - 1) <= 1e-12
        assert r.phi_star == pytest.approx(phi(A, r.f_hat).value, rel=1e-12)
        assert r.alignment >= 1 - 1e-10
        assert r.lambda_est == 1 / r.phi_star
        assert r.extremality_residual <= 1e-9
        # sign convention: largest-magnitude entry is positive
        assert r.f_hat.values[np.argmax(np.abs(r.f_hat.values))] > 0


def test_methods_agree(runs):
    _, _, res = runs
    a, b = res["fixed-point"], res["gradient-ascent"]
    assert a.phi_star == pytest.approx(b.phi_star, rel=1e-9)
    assert abs(inner(a.f_hat, b.f_hat)) >= 1 - 1e-8


def test_monotone_trace(runs):
    _, _, res = runs
    grad = [t.phi for t in res["gradient-ascent"].trace]
    assert all(b >= a for a, b in zip(grad, grad[1:]))
    # inverse iteration never lowers Phi in exact arithmetic; allow last-bit noise
    fixed = [t.phi for t in res["fixed-point"].trace]
    assert all(b >= a * (1 - 1e-14) for a, b in zip(fixed, fixed[1:]))


def test_fixed_step_mode():
    d = make_rectangle(11, 11, 1.0, 1.0)
    A = assemble(d)
    res = maximize(A, AscentConfig(method="gradient-ascent", step=2.0, seed=2))
    lam = 8 * 144 * math.sin(math.pi / 24) ** 2
    assert res.phi_star * lam == pytest.approx(1.0, abs=1e-9)


def test_deterministic_trace(runs):
    d, A, res = runs
    again = maximize(A, AscentConfig(method="gradient-ascent", seed=5))
    assert again.trace == res["gradient-ascent"].trace
    assert again.f_hat.values.tobytes() == res["gradient-ascent"].f_hat.values.tobytes()


def test_budget_exhaustion_keeps_partial_trace():
    d = make_rectangle(15, 15, 1.0, 1.0)
    A = assemble(d)
    with pytest.raises(NonConvergenceError) as exc:
        maximize(A, AscentConfig(max_iter=2, seed=1))
    partial = exc.value.report
    assert len(partial.trace) == 2 and not partial.converged


@pytest.mark.parametrize(
    "kw", [{"method": "newton"}, {"step": 0.0}, {"tol": 0.0}, {"tol": 1.0}, {"max_iter": 0}]
)
def test_config_validation(kw):
    with pytest.raises(InvalidArgumentError):
        AscentConfig(**kw)


def test_extremality_at_first_mode(square3):
    d, A = square3
    assert extremality_residual(A, sampled_mode(d, 1, 1), 100, seed=0) <= 1e-9


def test_extremality_needs_unit_input(square3):
    d, A = square3
    with pytest.raises(InvalidArgumentError):
        extremality_residual(A, 2.0 * sampled_mode(d, 1, 1))


def test_extremality_mirror_symmetry(square3):
    d, A = square3
    f_hat = sampled_mode(d, 1, 2)
    probes = ball_probes(d, 50, 9)
    u = (1 / (64 * (math.sin(math.pi / 8) ** 2 + 0.5))) * f_hat
    plain = [inner(2 * u, p - f_hat) for p in probes]
    mirrored = [inner(-2 * u, -p + f_hat) for p in probes]
    assert plain == mirrored
    assert extremality_residual(A, f_hat, probes=probes) == extremality_residual(
        A, -f_hat, probes=[-p for p in probes]
    )


def test_eigenvectors_satisfy_first_order_condition(square3):
    # For an eigenvector, <2u, f - f_hat> = (2/lambda)(<f_hat, f> - 1) <= 0 on the
    # whole ball, so the first-order test cannot tell the second mode from the first.
    d, A = square3
    v12 = sampled_mode(d, 1, 2)
    assert extremality_residual(A, v12, 100, seed=0) <= 1e-12
    lam12 = 64 * (math.sin(math.pi / 8) ** 2 + 0.5)
    v11 = sampled_mode(d, 1, 1)
    mixed = normalize(v12 + v11)
    expected = 2 / lam12 * (inner(v12, mixed) - 1)
    assert inner(2 * (1 / lam12) * v12, mixed - v12) == pytest.approx(expected, rel=1e-12)
    assert expected < 0


def test_second_mode_is_not_a_maximizer(square3):
    # the saddle shows up in Phi itself: moving toward v11 raises it
    d, A = square3
    v12 = sampled_mode(d, 1, 2)
    rise = max(
        phi(A, normalize(p) if norm(p) > 0 else p).value - phi(A, v12).value
        for p in ball_probes(d, 200, 0)
    )
    assert rise > 1e-3
