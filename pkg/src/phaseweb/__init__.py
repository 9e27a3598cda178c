"""Discrete Clifford algebra over Z3, boundary/coboundary machinery, event-buffer
co-exclusion discovery, the Bit Bang replay and Combinatorial Hierarchy counts."""

from .algebra import (
    Algebra,
    Multivector,
    Signature,
    Z3,
    apply_action,
    basis,
    geometric_product,
    gp,
    grade_project,
    inner_outer,
    mv_add,
    reverse,
)
from .chain import boundary, boundary_matrix, coboundary, coex_identity_check, ladder_report
from .errors import PhaseWebError
from .parsing import parse_expression

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Multivector",
    "PhaseWebError",
    "Signature",
    "Z3",
    "apply_action",
    "basis",
    "boundary",
    "boundary_matrix",
    "coboundary",
    "coex_identity_check",
    "geometric_product",
    "gp",
    "grade_project",
    "inner_outer",
    "ladder_report",
    "mv_add",
    "parse_expression",
    "reverse",
]
