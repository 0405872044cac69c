import math

import galois
import numpy as np
import pytest

from errors import FieldDivisionByZero, FieldMismatchError, InterpolationError, ParameterError
from fields.bivariate_roots import bivariate_y_roots, root_coefficients
from fields.field import Field, field_arith, field_of, get_field
from fields.linalg import solve_linear_system
from fields.polynomials import (
    BivariatePoly,
    MultiPoly,
    grid_points,
    lagrange_basis_matrix,
    monomials,
    poly_coeffs,
    poly_eval,
    poly_from_coeffs,
    poly_interpolate,
)


# ========================================
# FIELD ARITHMETIC
# ========================================

def test_prime_field_product(gf7):
    assert int(field_arith(gf7(3), gf7(5), "mul")) == 1


def test_binary_extension_reduces_by_modulus():
    gf8 = get_field(8)
    assert gf8.modulus == 0xB
    # x * x^2 = x^3 = x + 1
    assert int(field_arith(gf8(2), gf8(4), "mul")) == 3


@pytest.mark.parametrize("order", [2, 4, 7, 9, 16, 31, 32])
def test_multiplicative_identity(order):
    field = get_field(order)
    elements = field.elements()
    assert np.array_equal(field_arith(elements, field.gf.Ones(order), "mul"), elements)


@pytest.mark.parametrize("order", [5, 8, 9, 16])
def test_field_axioms_exhaustive(order):
    field = get_field(order)
    a = field.elements()[:, None, None]
    b = field.elements()[None, :, None]
    c = field.elements()[None, None, :]
    assert np.all((a * b) * c == a * (b * c))
    assert np.all((a + b) + c == a + (b + c))
    assert np.all(a * (b + c) == a * b + a * c)
    nonzero = field.nonzero_elements()
    assert np.all(nonzero * field_arith(nonzero, None, "inv") == 1)


def test_field_axioms_random_large_field(rng):
    field = get_field(2 ** 12)
    a, b, c = (field.random(500, rng) for _ in range(3))
    assert np.all(a * (b + c) == a * b + a * c)
    nonzero = field.random_nonzero(500, rng)
    assert np.all(field_arith(a * nonzero, nonzero, "div") == a)


def test_division_by_zero_raises(gf7):
    with pytest.raises(FieldDivisionByZero):
        field_arith(gf7(3), gf7(0), "div")
    with pytest.raises(ZeroDivisionError):
        field_arith(gf7(0), None, "inv")


def test_mixed_fields_raise(gf7, gf11):
    with pytest.raises(FieldMismatchError):
        field_arith(gf7(1), gf11(1), "add")


def test_non_prime_power_order_rejected():
    with pytest.raises(ParameterError):
        Field(6)


def test_field_of_recovers_descriptor(gf16):
    assert field_of(gf16(np.arange(4))) == gf16


# ========================================
# UNIVARIATE POLYNOMIALS
# ========================================

def test_poly_eval_examples(gf7):
    p = poly_from_coeffs(gf7, [1, 2])
    assert int(poly_eval(p, gf7(3))) == 0
    constant = poly_from_coeffs(gf7, [4])
    assert np.all(poly_eval(constant, gf7.elements()) == 4)
    zero = poly_from_coeffs(gf7, [0, 0])
    assert np.all(poly_eval(zero, gf7.elements()) == 0)


def test_poly_eval_field_mismatch(gf7, gf11):
    with pytest.raises(FieldMismatchError):
        poly_eval(poly_from_coeffs(gf7, [1, 1]), gf11(2))


def test_interpolate_by_hand(gf7):
    p = poly_interpolate([(0, 1), (1, 3)], field=gf7)
    assert poly_coeffs(p, 2).tolist() == [1, 2]


def test_interpolate_single_point_is_constant(gf7):
    p = poly_interpolate([(gf7(4), gf7(5))])
    assert p.degree == 0
    assert int(p(gf7(0))) == 5


def test_interpolate_duplicate_x_raises(gf7):
    with pytest.raises(InterpolationError):
        poly_interpolate([(1, 2), (1, 3)], field=gf7)


def test_eval_then_interpolate_is_identity(gf16, rng):
    for _ in range(20):
        k = int(rng.integers(1, 10))
        p = poly_from_coeffs(gf16, gf16.random(k, rng))
        xs = gf16(rng.choice(16, size=k, replace=False))
        q = poly_interpolate((xs, p(xs)))
        assert np.array_equal(poly_coeffs(q, k), poly_coeffs(p, k))


def test_lagrange_basis_matrix_maps_values_to_interpolant(gf11):
    nodes = gf11([1, 2, 3])
    values = gf11([4, 0, 7])
    targets = gf11.elements()
    p = poly_interpolate((nodes, values))
    assert np.array_equal(lagrange_basis_matrix(nodes, targets) @ values, p(targets))


# ========================================
# LINEAR SYSTEMS
# ========================================

def test_identity_has_empty_null_space(gf7):
    assert solve_linear_system(gf7.gf.Identity(4)).shape == (0, 4)


def test_single_equation_over_gf2(gf2):
    basis = solve_linear_system(gf2([[1, 1]]))
    assert basis.tolist() == [[1, 1]]


def test_random_underdetermined_system_verifies(gf7, rng):
    A = gf7.random((5, 8), rng)
    basis = solve_linear_system(A)
    assert basis.shape[0] >= 3
    assert np.all(A @ basis.T == 0)


def test_particular_solution_and_inconsistency(gf7):
    A = gf7([[1, 1], [0, 1]])
    assert solve_linear_system(A, homogeneous=False, b=gf7([3, 1])).tolist() == [2, 1]
    singular = gf7([[1, 1], [1, 1]])
    assert solve_linear_system(singular, homogeneous=False, b=gf7([1, 2])) is None


# ========================================
# BIVARIATE AND MULTIVARIATE
# ========================================

def test_roots_of_product_of_linear_factors(gf7):
    p1 = poly_from_coeffs(gf7, [1, 2])
    p2 = poly_from_coeffs(gf7, [3, 1])
    Q = BivariatePoly.from_y_factors(gf7, [p2, p1])
    roots = bivariate_y_roots(Q, 2)
    assert root_coefficients(roots, 2).tolist() == [[1, 2], [3, 1]]
    assert all(Q.substitute_y(p) == 0 for p in roots)


def test_root_of_y_is_zero_polynomial(gf7):
    Q = BivariatePoly.from_matrix(gf7([[0, 1]]))
    assert root_coefficients(bivariate_y_roots(Q, 2), 2).tolist() == [[0, 0]]


def test_recursive_roots_match_exhaustive_oracle(rng):
    gf5 = get_field(5)
    for trial in range(25):
        extra = BivariatePoly.from_matrix(gf5.random((3, 2), rng))
        if extra.is_zero():
            continue
        factors = [poly_from_coeffs(gf5, gf5.random(2, rng)) for _ in range(trial % 3)]
        Q = extra * BivariatePoly.from_y_factors(gf5, factors) if factors else extra
        recursive = root_coefficients(bivariate_y_roots(Q, 2), 2)
        exhaustive = root_coefficients(bivariate_y_roots(Q, 2, method="exhaustive"), 2)
        assert np.array_equal(recursive, exhaustive)
        for p in factors:
            assert poly_coeffs(p, 2).view(np.ndarray).tolist() in recursive.tolist()


def test_zero_bivariate_polynomial_rejected(gf7):
    with pytest.raises(ParameterError):
        bivariate_y_roots(BivariatePoly.from_matrix(gf7.zeros((2, 2))), 2)


def test_weighted_bound_enforced(gf7):
    coeffs = gf7.zeros((4, 2))
    coeffs[3, 1] = 1
    with pytest.raises(ParameterError):
        BivariatePoly(coeffs, d_x=4, d_y=2, weighted=(2, 4))


def test_monomial_count_and_degree_bound(gf7):
    assert len(monomials(3, 4)) == math.comb(7, 3)
    with pytest.raises(ParameterError):
        MultiPoly(gf7, 2, {(2, 1): 1}, t=2)


def test_multipoly_coefficients_must_be_field_elements(gf7, gf16):
    with pytest.raises(FieldMismatchError):
        MultiPoly(gf16, 2, {(1, 0): 16})
    with pytest.raises(FieldMismatchError):
        MultiPoly(gf16, 2, {(1, 0): gf7(3)})
    assert MultiPoly(gf7, 2, {(1, 0): -1}).terms == {(1, 0): 6}
    assert MultiPoly(gf16, 2, {(0, 1): gf16(9)}).terms == {(0, 1): 9}


def test_grid_points_row_major(gf4):
    points = grid_points(gf4.elements(), 2)
    assert points.shape == (16, 2)
    assert points[1].tolist() == [0, 1]
    assert points[4].tolist() == [1, 0]


def test_galois_is_the_array_type(gf16):
    assert isinstance(gf16(3), galois.FieldArray)
