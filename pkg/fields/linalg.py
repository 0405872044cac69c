"""
Linear systems over finite fields, via galois row reduction.
"""

import logging
from typing import Optional

import galois
import numpy as np

from errors import ShapeError
from fields.field import require_same_field

logger = logging.getLogger(__name__)


def solve_linear_system(
    A: galois.FieldArray,
    homogeneous: bool = True,
    b: Optional[galois.FieldArray] = None,
):
    """
    Solve A v = 0 or A v = b over the field of A.

    Elimination pivots on the first nonzero entry in column order, so bases
    are reproducible.

    Args:
        A: Coefficient matrix (rows = equations)
        homogeneous: True for A v = 0
        b: Right-hand side when ``homogeneous`` is False

    Returns:
        Homogeneous: null-space basis as rows, shape (r, unknowns); r may be 0.
        Otherwise: one particular solution, or None if the system is inconsistent.
    """
    if not isinstance(A, galois.FieldArray) or A.ndim != 2:
        raise ShapeError("coefficient matrix must be a 2-D field array")
    rows, unknowns = A.shape

    if homogeneous:
        if rows == 0:
            return type(A).Identity(unknowns)
        basis = A.null_space()
        logger.debug("null space of %dx%d system has dimension %d", rows, unknowns, basis.shape[0])
        return basis.reshape(-1, unknowns)

    if b is None or b.ndim != 1 or b.size != rows:
        raise ShapeError("right-hand side must be a vector with one entry per equation")
    require_same_field(A, b)
    augmented = np.concatenate((A, b.reshape(-1, 1)), axis=1)
    reduced = augmented.row_reduce()

    solution = type(A).Zeros(unknowns)
    for row in reduced:
        pivots = np.flatnonzero(row[:unknowns] != 0)
        if pivots.size == 0:
            if row[unknowns] != 0:
                return None
            continue
        solution[pivots[0]] = row[unknowns]
    return solution
