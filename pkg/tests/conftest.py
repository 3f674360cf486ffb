import math

import numpy as np
import pytest

from energymax.grid import Field, make_rectangle
from energymax.operator import assemble


def closed_form_eigenvalue(nx, ny, lx, ly, m, n):
    """Five-point eigenvalue on a full rectangle, written out independently of the package."""
    hx, hy = lx / (nx + 1), ly / (ny + 1)
    return (4 / hx**2) * math.sin(m * math.pi * hx / (2 * lx)) ** 2 + (4 / hy**2) * math.sin(
        n * math.pi * hy / (2 * ly)
    ) ** 2


def sampled_mode(domain, m, n, normalized=True):
    """sin(m pi x / Lx) sin(n pi y / Ly) at the interior nodes, built by explicit loops."""
    lx = (domain.nx + 1) * domain.hx
    ly = (domain.ny + 1) * domain.hy
    vals = np.empty(domain.n_interior)
    for k in range(domain.n_interior):
        i, j = domain.lattice_position(k)
        x = domain.hx * (i + 1)
        y = domain.hy * (j + 1)
        vals[k] = math.sin(m * math.pi * x / lx) * math.sin(n * math.pi * y / ly)
    if normalized:
        vals /= math.sqrt(domain.hx * domain.hy * np.sum(vals**2))
    return Field(domain, vals)


def random_field(domain, rng, unit=True):
    v = rng.uniform(-1, 1, domain.n_interior)
    if unit:
        v /= math.sqrt(domain.hx * domain.hy * np.sum(v**2))
    return Field(domain, v)


@pytest.fixture
def square3():
    d = make_rectangle(3, 3, 1.0, 1.0)
    return d, assemble(d)


@pytest.fixture
def single():
    d = make_rectangle(1, 1, 1.0, 1.0)
    return d, assemble(d)


# acceptance bookkeeping: one line per criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
