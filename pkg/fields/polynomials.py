"""
Polynomial Algebra - Coding Lab
Univariate helpers on top of ``galois.Poly``, plus the bivariate and
multivariate polynomial types used by list decoding and polynomial codes.

Coefficient vectors are always low-to-high degree in this module.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from errors import FieldMismatchError, InterpolationError, ParameterError, ShapeError
from fields.field import Field, field_of, require_same_field

logger = logging.getLogger(__name__)

# Dense representation ceiling for any single polynomial.
MAX_DENSE_DEGREE = 4096

UniPoly = galois.Poly


# ========================================
# UNIVARIATE
# ========================================

def poly_from_coeffs(field: Field, coeffs: Sequence) -> galois.Poly:
    """Build p(x) = c_0 + c_1 x + ... from low-to-high coefficients."""
    coeffs = field(coeffs) if not field.contains(coeffs) else coeffs
    if coeffs.size == 0:
        return galois.Poly.Zero(field=field.gf)
    if coeffs.size - 1 > MAX_DENSE_DEGREE:
        raise ParameterError(f"degree {coeffs.size - 1} exceeds dense limit {MAX_DENSE_DEGREE}")
    return galois.Poly(coeffs, field=field.gf, order="asc")


def poly_coeffs(p: galois.Poly, size: int) -> galois.FieldArray:
    """Low-to-high coefficients of p padded to ``size`` entries."""
    if p.degree >= size and p != 0:
        raise ShapeError(f"degree {p.degree} does not fit in {size} coefficients")
    return p.coefficients(size, order="asc")


def poly_eval(p: galois.Poly, x: galois.FieldArray) -> galois.FieldArray:
    """Horner evaluation of p at x (scalar or array)."""
    require_same_field(p.coeffs, x)
    return p(x)


def poly_interpolate(points: Iterable[Tuple], field: Optional[Field] = None) -> galois.Poly:
    """
    Unique polynomial of degree < len(points) through the given points.

    Args:
        points: (x, y) pairs of field elements, or a pair of arrays (xs, ys)
        field: Needed only when the pairs hold plain integers

    Raises:
        InterpolationError: no points, or a repeated x-coordinate
    """
    xs, ys = _split_points(points, field)
    require_same_field(xs, ys)
    if xs.size == 0:
        raise InterpolationError("interpolation needs at least one point")
    if np.unique(xs.view(np.ndarray)).size != xs.size:
        raise InterpolationError("interpolation points share an x-coordinate")
    if xs.size == 1:
        return galois.Poly(ys, field=type(ys))
    return galois.lagrange_poly(xs, ys)


def _split_points(points, field: Optional[Field]) -> Tuple[galois.FieldArray, galois.FieldArray]:
    if isinstance(points, tuple) and len(points) == 2 and isinstance(points[0], galois.FieldArray) \
            and points[0].ndim == 1:
        return points[0], points[1]
    points = list(points)
    if not points:
        raise InterpolationError("interpolation needs at least one point")
    gf = field.gf if field is not None else type(points[0][0])
    if not isinstance(gf, type) or not issubclass(gf, galois.FieldArray):
        raise InterpolationError("integer points need an explicit field")
    xs = gf([int(x) for x, _ in points])
    ys = gf([int(y) for _, y in points])
    return xs, ys


def lagrange_basis_matrix(nodes: galois.FieldArray, targets: galois.FieldArray) -> galois.FieldArray:
    """
    Matrix L with L[s, a] = ell_a(targets[s]) for the Lagrange basis on ``nodes``.

    Applying L to values on the nodes gives the interpolant's values on the
    targets.
    """
    gf = type(nodes)
    size = nodes.size
    matrix = gf.Zeros((targets.size, size))
    for a in range(size):
        unit = gf.Zeros(size)
        unit[a] = 1
        matrix[:, a] = poly_interpolate((nodes, unit))(targets)
    return matrix


# ========================================
# BIVARIATE
# ========================================

@dataclass(frozen=True)
class BivariatePoly:
    """
    Q(x, y) = sum c[i, j] x^i y^j with a declared monomial bound.

    Attributes:
        coeffs: Field matrix indexed by (x-degree i, y-degree j)
        d_x: Exclusive bound on the x-degree (i < d_x)
        d_y: Exclusive bound on the y-degree (j < d_y)
        weighted: Optional (k, w); then every stored monomial has i + k*j < w
    """

    coeffs: galois.FieldArray
    d_x: int
    d_y: int
    weighted: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.coeffs.ndim != 2:
            raise ShapeError("bivariate coefficients must be a matrix")
        nonzero = np.argwhere(self.coeffs != 0)
        for i, j in nonzero:
            if i >= self.d_x or j >= self.d_y:
                raise ParameterError(f"monomial x^{i} y^{j} exceeds bounds ({self.d_x}, {self.d_y})")
            if self.weighted is not None:
                k, w = self.weighted
                if i + k * j >= w:
                    raise ParameterError(f"monomial x^{i} y^{j} exceeds weighted bound {w}")

    @classmethod
    def from_matrix(cls, coeffs: galois.FieldArray) -> "BivariatePoly":
        """Wrap a coefficient matrix with the tightest rectangular bound."""
        rows, cols = coeffs.shape
        return cls(coeffs, d_x=rows, d_y=cols)

    @classmethod
    def from_y_factors(cls, field: Field, factors: Sequence[galois.Poly]) -> "BivariatePoly":
        """Expand prod_l (y - p_l(x)) into coefficient form."""
        product = cls.from_matrix(field.gf([[1]]))
        for p in factors:
            column = poly_coeffs(-p, max(p.degree + 1, 1))
            linear = field.zeros((column.size, 2))
            linear[:, 0] = column
            linear[0, 1] = 1
            product = product * cls.from_matrix(linear)
        return product

    @property
    def field(self) -> Field:
        return field_of(self.coeffs)

    @property
    def y_degree(self) -> int:
        cols = np.flatnonzero(np.any(self.coeffs != 0, axis=0))
        return int(cols[-1]) if cols.size else -1

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def y_coefficient(self, j: int) -> galois.Poly:
        """The polynomial in x multiplying y^j."""
        gf = type(self.coeffs)
        if j >= self.coeffs.shape[1]:
            return galois.Poly.Zero(field=gf)
        return galois.Poly(self.coeffs[:, j], field=gf, order="asc")

    def evaluate(self, x, y) -> galois.FieldArray:
        require_same_field(self.coeffs, x, y)
        rows, cols = self.coeffs.shape
        x_powers = x ** np.arange(rows)
        y_powers = y ** np.arange(cols)
        return x_powers @ self.coeffs @ y_powers

    def substitute_y(self, p: galois.Poly) -> galois.Poly:
        """Q(x, p(x)) as a univariate polynomial."""
        gf = type(self.coeffs)
        result = galois.Poly.Zero(field=gf)
        power = galois.Poly.One(field=gf)
        for j in range(self.coeffs.shape[1]):
            result = result + self.y_coefficient(j) * power
            power = power * p
        return result

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        require_same_field(self.coeffs, other.coeffs)
        gf = type(self.coeffs)
        rows = self.coeffs.shape[0] + other.coeffs.shape[0] - 1
        cols = self.coeffs.shape[1] + other.coeffs.shape[1] - 1
        out = gf.Zeros((rows, cols))
        for a in range(self.coeffs.shape[1]):
            for b in range(other.coeffs.shape[1]):
                column = self.y_coefficient(a) * other.y_coefficient(b)
                if column == 0:
                    continue
                values = poly_coeffs(column, column.degree + 1)
                out[: values.size, a + b] = out[: values.size, a + b] + values
        return BivariatePoly.from_matrix(out)

    def shift_substitute(self, gamma) -> "BivariatePoly":
        """
        Q(x, x*y + gamma), the step used by recursive root extraction.

        (x y + gamma)^j expands with binomials reduced into the prime subfield.
        """
        gf = type(self.coeffs)
        rows, cols = self.coeffs.shape
        p = gf.characteristic
        out = gf.Zeros((rows + cols - 1, cols))
        gamma = gf(int(gamma))
        for j in range(cols):
            column = self.coeffs[:, j]
            if not np.any(column != 0):
                continue
            for l in range(j + 1):
                binom = comb(j, l) % p
                if binom == 0:
                    continue
                factor = gf(binom) * gamma ** (j - l)
                out[l: l + rows, l] = out[l: l + rows, l] + column * factor
        return BivariatePoly.from_matrix(out)

    def divide_out_x(self) -> "BivariatePoly":
        """Remove the largest power of x dividing Q."""
        rows = np.flatnonzero(np.any(self.coeffs != 0, axis=1))
        if rows.size == 0 or rows[0] == 0:
            return self
        return BivariatePoly.from_matrix(self.coeffs[rows[0]:])


# ========================================
# MULTIVARIATE
# ========================================

@dataclass(frozen=True)
class MultiPoly:
    """
    Sparse multivariate polynomial: exponent vector -> coefficient.

    Attributes:
        field: Coefficient field
        m: Number of variables
        terms: Mapping from length-m exponent tuples to nonzero coefficients
        t: Total-degree bound; every monomial has degree <= t
    """

    field: Field
    m: int
    terms: Dict[Tuple[int, ...], int] = dataclass_field(default_factory=dict)
    t: Optional[int] = None

    def __post_init__(self):
        clean = {}
        for exponent, coeff in self.terms.items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != self.m or min(exponent, default=0) < 0:
                raise ShapeError(f"exponent {exponent} does not match {self.m} variables")
            value = self._coefficient(coeff)
            if value:
                clean[exponent] = value
        object.__setattr__(self, "terms", clean)
        bound = self.total_degree if self.t is None else self.t
        if self.total_degree > bound:
            raise ParameterError(f"total degree {self.total_degree} exceeds bound {bound}")
        object.__setattr__(self, "t", bound)

    def _coefficient(self, coeff) -> int:
        """Integer representation of a coefficient; field arrays must come from ``self.field``."""
        if isinstance(coeff, galois.FieldArray):
            require_same_field(self.field.gf(0), coeff)
            return int(coeff)
        value = int(coeff)
        if self.field.kind == "prime":
            return value % self.field.order
        if not 0 <= value < self.field.order:
            raise FieldMismatchError(f"coefficient {value} is not an element of GF({self.field.order})")
        return value

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, points: galois.FieldArray) -> galois.FieldArray:
        """
        Evaluate at one point (shape (m,)) or many (shape (N, m)).
        """
        gf = self.field.gf
        points = points if points.ndim == 2 else points.reshape(1, -1)
        if points.shape[1] != self.m:
            raise ShapeError(f"points have {points.shape[1]} coordinates, expected {self.m}")
        total = gf.Zeros(points.shape[0])
        for exponent, coeff in self.terms.items():
            term = gf.Ones(points.shape[0]) * gf(coeff)
            for v, e in enumerate(exponent):
                if e:
                    term = term * points[:, v] ** e
            total = total + term
        return total

    @classmethod
    def random(cls, field: Field, m: int, t: int, rng: np.random.Generator) -> "MultiPoly":
        """Uniformly random polynomial of total degree <= t."""
        terms = {exp: int(rng.integers(0, field.order)) for exp in monomials(m, t)}
        return cls(field, m, terms, t)


def monomials(m: int, t: int) -> List[Tuple[int, ...]]:
    """
    Exponent vectors of total degree <= t: graded, then by descending
    exponent of the earlier variables.

    There are C(m + t, m) of them.
    """
    out: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...], remaining_vars: int, budget: int):
        if remaining_vars == 0:
            if budget == 0:
                out.append(prefix)
            return
        for e in range(budget, -1, -1):
            extend(prefix + (e,), remaining_vars - 1, budget - e)

    for degree in range(t + 1):
        extend((), m, degree)
    return out


def grid_points(elements: galois.FieldArray, m: int) -> galois.FieldArray:
    """
    All points of S^m, row-major (first coordinate varies slowest).

    Point index is sum_j pos(v_j) * |S|^(m-1-j) where pos is the position in S.
    """
    gf = type(elements)
    size = elements.size
    idx = np.indices((size,) * m).reshape(m, -1).T
    return gf(np.asarray(elements.view(np.ndarray))[idx])
