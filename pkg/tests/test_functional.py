import math

import numpy as np
import pytest

from conftest import random_field, sampled_mode
from energymax.functional import directional_derivative_check, grad_phi, phi
from energymax.grid import Field, make_rectangle, zeros
from energymax.operator import assemble

LAMBDA_3x3 = 128 * math.sin(math.pi / 8) ** 2


def test_zero(square3):
    d, A = square3
    v = phi(A, zeros(d))
    assert v.energy_form == 0.0 and v.duality_form == 0.0
    assert not np.any(grad_phi(A, zeros(d)).values)


def test_first_mode_value(square3):
    d, A = square3
    v = phi(A, sampled_mode(d, 1, 1))
    assert v.value == pytest.approx(1 / LAMBDA_3x3, rel=1e-12)
    assert v.energy_form == pytest.approx(0.0533470, abs=1e-7)


def test_single_node(single):
    d, A = single
    v = phi(A, Field(d, np.array([2.0])))
    assert v.value == pytest.approx(0.0625, rel=1e-15)
    assert v.energy_form == pytest.approx(0.0625, rel=1e-15)
    assert grad_phi(A, Field(d, np.array([1.0]))).values[0] == pytest.approx(0.125, rel=1e-15)


def test_gradient_of_first_mode(square3):
    d, A = square3
    v = sampled_mode(d, 1, 1)
    np.testing.assert_allclose(grad_phi(A, v).values, 2 / LAMBDA_3x3 * v.values, rtol=1e-12)


def test_directional_zero_direction(square3):
    d, A = square3
    assert directional_derivative_check(A, sampled_mode(d, 1, 1), zeros(d)) == 0.0


def test_directional_single_node(single):
    d, A = single
    one = Field(d, np.array([1.0]))
    # exact for a quadratic; what is left is rounding of Phi divided by 2 eps
    for eps in (1e-1, 1e-4, 0.7):
        assert directional_derivative_check(A, one, one, eps) <= 1e-12


def test_directional_random_15():
    d = make_rectangle(15, 15, 1.0, 1.0)
    A = assemble(d)
    rng = np.random.default_rng(2)
    for _ in range(5):
        f, h = random_field(d, rng), random_field(d, rng)
        assert directional_derivative_check(A, f, h, 1e-4) <= 1e-8


@pytest.fixture(scope="module")
def square33():
    d = make_rectangle(33, 33, 1.0, 1.0)
    return d, assemble(d)


def test_form_equivalence(square33):
    d, A = square33
    rng = np.random.default_rng(4)
    for _ in range(10):
        v = phi(A, random_field(d, rng))
        assert v.discrepancy <= 1e-9 * max(1.0, v.value)


def test_quadratic_scaling(square33):
    d, A = square33
    rng = np.random.default_rng(6)
    f = random_field(d, rng)
    base = phi(A, f).value
    for alpha in rng.uniform(-2, 2, 5):
        assert phi(A, alpha * f).value == pytest.approx(alpha**2 * base, rel=1e-12)


def test_strict_midpoint_convexity(square33):
    d, A = square33
    rng = np.random.default_rng(8)
    for _ in range(10):
        f, g = random_field(d, rng), random_field(d, rng)
        mid = phi(A, 0.5 * (f + g)).value
        avg = 0.5 * (phi(A, f).value + phi(A, g).value)
        assert avg - mid > 1e-12 * avg
