"""
Bivariate Root Extraction - Coding Lab
Finds every p(x) of degree < k with Q(x, p(x)) = 0, i.e. every factor
y - p(x) of Q.

Two strategies:
  - recursive: coefficient-by-coefficient descent on Q(x, x*y + gamma)
  - exhaustive: test all q^k candidates (guarded, used as the oracle)
"""

import logging
from itertools import product
from typing import List

import galois
import numpy as np

from errors import EnumerationLimitError, ParameterError
from fields.polynomials import BivariatePoly, poly_coeffs

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 100_000


def bivariate_y_roots(Q: BivariatePoly, k: int, method: str = "recursive") -> List[galois.Poly]:
    """
    All polynomials p with deg p <= k - 1 and Q(x, p(x)) identically zero.

    Args:
        Q: Nonzero bivariate polynomial
        k: Message length; candidates have at most k coefficients
        method: "recursive" or "exhaustive"

    Returns:
        Distinct roots, sorted by low-to-high coefficient vector.
    """
    if Q.is_zero():
        raise ParameterError("bivariate_y_roots needs a nonzero polynomial")
    if k < 1:
        raise ParameterError("k must be positive")

    if method == "recursive":
        found = _recursive_roots(Q, k)
    elif method == "exhaustive":
        found = _exhaustive_roots(Q, k)
    else:
        raise ParameterError(f"unknown root-finding method {method!r}")

    gf = type(Q.coeffs)
    unique = {}
    for coeffs in found:
        p = galois.Poly(gf(list(coeffs)), field=gf, order="asc")
        # Every root is re-verified by substitution.
        if Q.substitute_y(p) == 0:
            unique[tuple(coeffs)] = p
    roots = [unique[key] for key in sorted(unique)]
    logger.debug("found %d y-roots of degree < %d", len(roots), k)
    return roots


def _univariate_roots(coeffs: galois.FieldArray) -> List[int]:
    gf = type(coeffs)
    poly = galois.Poly(coeffs, field=gf, order="asc")
    if poly.degree < 1:
        return []
    return sorted(int(r) for r in poly.roots())


def _recursive_roots(Q: BivariatePoly, k: int) -> List[tuple]:
    out: List[tuple] = []

    def descend(current: BivariatePoly, prefix: tuple):
        current = current.divide_out_x()
        if len(prefix) == k:
            out.append(prefix)
            return
        for gamma in _univariate_roots(current.coeffs[0]):
            descend(current.shift_substitute(gamma), prefix + (gamma,))

    descend(Q, ())
    return out


def _exhaustive_roots(Q: BivariatePoly, k: int) -> List[tuple]:
    q = type(Q.coeffs).order
    if q ** k > EXHAUSTIVE_LIMIT:
        raise EnumerationLimitError(f"{q}^{k} candidates exceed {EXHAUSTIVE_LIMIT}")
    gf = type(Q.coeffs)
    out = []
    for coeffs in product(range(q), repeat=k):
        p = galois.Poly(gf(list(coeffs)), field=gf, order="asc")
        if Q.substitute_y(p) == 0:
            out.append(coeffs)
    return out


def root_coefficients(roots: List[galois.Poly], k: int) -> np.ndarray:
    """Stack roots as an integer matrix of low-to-high coefficient rows."""
    if not roots:
        return np.zeros((0, k), dtype=np.int64)
    return np.array([poly_coeffs(p, k).view(np.ndarray) for p in roots], dtype=np.int64)
