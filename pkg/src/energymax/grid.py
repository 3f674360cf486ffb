"""Lattice domains, grid functions and the discrete L2 structure.

Lattice arrays are stored with shape ``(ny, nx)`` and indexed ``[j, i]`` so
that C-order flattening runs with x varying fastest. Boundary nodes are never
stored: the homogeneous Dirichlet condition is structural.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError


@dataclass(frozen=True, eq=False)
class GridDomain:
    nx: int
    ny: int
    hx: float
    hy: float
    origin_x: float
    origin_y: float
    mask: np.ndarray
    kind: str = "rect"

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if self.nx < 1 or self.ny < 1:
            raise InvalidArgumentError(f"lattice extents must be >= 1, got {self.nx}x{self.ny}")
        if not (self.hx > 0 and self.hy > 0):
            raise InvalidArgumentError("grid spacing must be positive")
        if mask.shape != (self.ny, self.nx):
            raise InvalidArgumentError(f"mask shape {mask.shape} != ({self.ny}, {self.nx})")
        if not mask.any():
            raise InvalidArgumentError("mask selects no interior nodes")
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

        lin = np.full(mask.shape, -1, dtype=np.int64)
        lin[mask] = np.arange(int(mask.sum()))
        lin.setflags(write=False)
        jj, ii = np.nonzero(mask)
        pos = np.stack([ii, jj], axis=1)
        pos.setflags(write=False)
        object.__setattr__(self, "_lin", lin)
        object.__setattr__(self, "_pos", pos)

    @property
    def n_interior(self) -> int:
        return len(self._pos)

    @property
    def cell_weight(self) -> float:
        """Quadrature weight hx*hy carried by every interior node."""
        return self.hx * self.hy

    def linear_index(self, i: int, j: int) -> int:
        """Linear index of lattice node (i, j), or -1 if it is masked out."""
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            return -1
        return int(self._lin[j, i])

    def lattice_position(self, k: int) -> tuple[int, int]:
        i, j = self._pos[k]
        return int(i), int(j)

    @property
    def index_grid(self) -> np.ndarray:
        """(ny, nx) array of linear indices, -1 where masked out."""
        return self._lin

    @property
    def positions(self) -> np.ndarray:
        """(n_interior, 2) array of lattice (i, j) per linear index."""
        return self._pos

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical (x, y) of each interior node, in linear-index order."""
        x = self.origin_x + self.hx * self._pos[:, 0]
        y = self.origin_y + self.hy * self._pos[:, 1]
        return x, y

    def same_as(self, other: "GridDomain") -> bool:
        return self is other or (
            self.nx == other.nx
            and self.ny == other.ny
            and self.hx == other.hx
            and self.hy == other.hy
            and self.origin_x == other.origin_x
            and self.origin_y == other.origin_y
            and np.array_equal(self.mask, other.mask)
        )


@dataclass(frozen=True, eq=False)
class Field:
    """Grid function on the interior nodes of ``domain``."""

    domain: GridDomain
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (self.domain.n_interior,):
            raise InvalidArgumentError(
                f"field has shape {values.shape}, domain needs ({self.domain.n_interior},)"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("field values must be finite")
        object.__setattr__(self, "values", values)

    def __neg__(self):
        return Field(self.domain, -self.values)

    def __add__(self, other):
        _check_same(self, other)
        return Field(self.domain, self.values + other.values)

    def __sub__(self, other):
        _check_same(self, other)
        return Field(self.domain, self.values - other.values)

    def __mul__(self, scalar):
        return Field(self.domain, float(scalar) * self.values)

    __rmul__ = __mul__

    def to_lattice(self, fill: float = 0.0) -> np.ndarray:
        """Scatter onto the full (ny, nx) lattice, masked nodes set to ``fill``."""
        out = np.full((self.domain.ny, self.domain.nx), fill, dtype=np.float64)
        out[self.domain.mask] = self.values
        return out


def zeros(domain: GridDomain) -> Field:
    return Field(domain, np.zeros(domain.n_interior))


def from_function(domain: GridDomain, func) -> Field:
    """Sample ``func(x, y)`` (vectorized) at the interior nodes."""
    x, y = domain.coordinates()
    return Field(domain, np.asarray(func(x, y), dtype=np.float64) * np.ones_like(x))


def make_rectangle(nx: int, ny: int, lx: float, ly: float) -> GridDomain:
    if nx < 1 or ny < 1:
        raise InvalidArgumentError(f"nx, ny must be >= 1, got {nx}, {ny}")
    if not (lx > 0 and ly > 0):
        raise InvalidArgumentError(f"side lengths must be positive, got {lx}, {ly}")
    hx = lx / (nx + 1)
    hy = ly / (ny + 1)
    return GridDomain(nx, ny, hx, hy, hx, hy, np.ones((ny, nx), dtype=bool), kind="rect")


def make_disk(n: int, radius: float) -> GridDomain:
    """Staircase disk of radius ``radius`` centred at the origin on an n x n lattice.

    Nodes with x^2 + y^2 >= R^2 are excluded and act as Dirichlet zeros.
    """
    if n < 3:
        raise InvalidArgumentError(f"disk lattice needs n >= 3, got {n}")
    if not radius > 0:
        raise InvalidArgumentError(f"radius must be positive, got {radius}")
    h = 2.0 * radius / (n + 1)
    c = -radius + h * np.arange(1, n + 1)
    X, Y = np.meshgrid(c, c)
    mask = X**2 + Y**2 < radius**2
    if not mask.any():
        raise InvalidArgumentError("disk mask is empty")
    return GridDomain(n, n, h, h, float(c[0]), float(c[0]), mask, kind="disk")


def _check_same(f: Field, g: Field) -> None:
    if not f.domain.same_as(g.domain):
        raise InvalidArgumentError("fields live on different domains")


def inner(f: Field, g: Field) -> float:
    """Discrete L2 pairing hx*hy*sum(f_i g_i)."""
    _check_same(f, g)
    return f.domain.cell_weight * float(np.dot(f.values, g.values))


def norm(f: Field) -> float:
    return float(np.sqrt(inner(f, f)))


def normalize(f: Field) -> Field:
    nrm = norm(f)
    if nrm == 0.0:
        raise DegenerateInputError("cannot normalize the zero field")
    return Field(f.domain, f.values / nrm)


def in_ball(f: Field, slack: float = 1e-12) -> bool:
    return norm(f) <= 1.0 + slack


def on_sphere(f: Field, slack: float = 1e-12) -> bool:
    return abs(norm(f) - 1.0) <= slack
