"""Exact polynomial-exponential algebra: invariant subspaces under the shift
and derivative operators, and solvers for constant-coefficient linear
recurrences and ODEs."""
from .errors import InvspaceError, ParseError
from .linalg import Matrix
from .parser import format_polyexp, parse_equation, parse_expression
from .poly import Poly
from .polyexp import OperatorBase, OperatorSpec, PolyExp
from .scalar import GaussianRational
from .solver import general_solution, particular_solution, solve_ivp, verify_residual
from .structure import Subspace, closure, decompose, is_invariant, make_subspace

SHIFT = OperatorBase.SHIFT
DERIVATIVE = OperatorBase.DERIVATIVE

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "Poly",
    "Matrix",
    "PolyExp",
    "OperatorBase",
    "OperatorSpec",
    "SHIFT",
    "DERIVATIVE",
    "Subspace",
    "make_subspace",
    "closure",
    "is_invariant",
    "decompose",
    "particular_solution",
    "general_solution",
    "solve_ivp",
    "verify_residual",
    "parse_expression",
    "parse_equation",
    "format_polyexp",
    "InvspaceError",
    "ParseError",
]
