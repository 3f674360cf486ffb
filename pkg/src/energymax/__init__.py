"""Finite-difference laboratory for maximizing the Dirichlet energy of Poisson solutions.

For a domain D and right-hand side f, let u_f solve -Lap u = f with u = 0 on
the boundary. Over ||f||_2 <= 1 the energy of u_f is largest at f = +-u_1,
the first Dirichlet eigenfunction, where it equals 1/lambda_1.
"""
from .errors import (
    DegenerateInputError,
    FieldFormatError,
    InvalidArgumentError,
    NonConvergenceError,
    NumericalBreakdownError,
)
from .functional import PhiValue, directional_derivative_check, grad_phi, phi
from .grid import Field, GridDomain, inner, make_disk, make_rectangle, norm, normalize
from .nonattainment import RemarkRow, oscillatory_mode, remark_table, verify_zero_minimizer
from .operator import SparseOperator, apply, assemble, energy
from .optimizer import AscentConfig, MaximizerResult, extremality_residual, maximize
from .oracle import DenseMatrix, brute_max, dense_assemble, jacobi_eigen
from .solver import SolveReport, solve
from .spectral import EigenPair, eigen_smallest, rectangle_eigenvalue, verify_phi_reduction

__version__ = "0.1.0"
