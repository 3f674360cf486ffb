"""Five-point discrete -Laplacian with Dirichlet elimination, stored as CSR."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgumentError
from .grid import Field, GridDomain, inner


@dataclass(frozen=True, eq=False)
class SparseOperator:
    domain: GridDomain
    row_offsets: np.ndarray
    col_indices: np.ndarray
    entries: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        for a in (self.row_offsets, self.col_indices, self.entries):
            a.setflags(write=False)
        # scipy's csr matvec sums each row in stored (sorted) column order
        mat = sp.csr_matrix(
            (self.entries, self.col_indices, self.row_offsets), shape=(self.n, self.n), copy=False
        )
        object.__setattr__(self, "_csr", mat)

    @property
    def n(self) -> int:
        return len(self.row_offsets) - 1

    @property
    def diagonal(self) -> np.ndarray:
        return self._csr.diagonal()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Raw array product, used inside the iterative solvers."""
        return self._csr @ x

    def to_dense(self) -> np.ndarray:
        return self._csr.toarray()

    def is_symmetric(self) -> bool:
        """Exact structural and value symmetry."""
        diff = self._csr - self._csr.T
        return diff.nnz == 0 or not np.any(diff.data)


def assemble(domain: GridDomain) -> SparseOperator:
    cx = 1.0 / domain.hx**2
    cy = 1.0 / domain.hy**2
    diag = 2.0 * cx + 2.0 * cy
    lin = domain.index_grid

    offsets = [0]
    cols: list[int] = []
    vals: list[float] = []
    for k, (i, j) in enumerate(domain.positions):
        row = [(k, diag)]
        for di, dj, w in ((-1, 0, cx), (1, 0, cx), (0, -1, cy), (0, 1, cy)):
            ii, jj = i + di, j + dj
            if 0 <= ii < domain.nx and 0 <= jj < domain.ny and lin[jj, ii] >= 0:
                row.append((int(lin[jj, ii]), -w))
        row.sort()
        cols.extend(c for c, _ in row)
        vals.extend(v for _, v in row)
        offsets.append(len(cols))

    return SparseOperator(
        domain,
        np.asarray(offsets, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(vals, dtype=np.float64),
    )


def _check(A: SparseOperator, u: Field) -> None:
    if u.values.shape != (A.n,) or not u.domain.same_as(A.domain):
        raise InvalidArgumentError("operator and field dimensions disagree")


def apply(A: SparseOperator, u: Field) -> Field:
    _check(A, u)
    return Field(u.domain, A.matvec(u.values))


def energy(A: SparseOperator, u: Field) -> float:
    """Discrete Dirichlet energy, the quadrature of |grad u|^2."""
    _check(A, u)
    return inner(apply(A, u), u)
