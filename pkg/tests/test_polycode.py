import math

import numpy as np
import pytest

from codes.channel import child_rng
from codes.core import min_distance_exhaustive
from codes.polycode import (
    FieldOracle,
    Line,
    PolyCodeConfig,
    ReedMullerCode,
    SystematicPolyCode,
    exhaustive_zero_fraction,
    indicator_point,
    line_query_marginals,
    multilinear_config,
    multilinear_encode,
    noisy_line_decode,
    noisy_line_zs,
    point_index,
    rm_encode,
    schwartz_zippel_check,
    smooth_decoder_spec,
    smooth_line_decode,
    subset_index,
    systematic_encode,
)
from codes.reed_solomon import RSCode, rs_encode
from errors import ParameterError, ShapeError
from fields.field import get_field
from fields.polynomials import MultiPoly, grid_points, poly_coeffs, poly_interpolate


@pytest.fixture
def gf13():
    return get_field(13)


def _oracle_for(poly: MultiPoly) -> FieldOracle:
    table = poly.evaluate(grid_points(poly.field.elements(), poly.m))
    return FieldOracle(poly.field, poly.m, table)


# ========================================
# CONFIGURATION
# ========================================

def test_degree_must_be_below_grid_size(gf7):
    with pytest.raises(ParameterError):
        PolyCodeConfig.full_field(gf7, 2, 7)


def test_interpolation_grid_must_fit_degree(gf7):
    with pytest.raises(ParameterError):
        PolyCodeConfig.full_field(gf7, 2, 2, a_size=3)
    with pytest.raises(ParameterError):
        PolyCodeConfig(gf7, gf7([0, 1, 2, 3]), 1, 2, A=gf7([5]))


def test_point_index_row_major(gf7):
    assert point_index(gf7([2, 3]), 7) == 17
    assert grid_points(gf7.elements(), 2)[17].tolist() == [2, 3]


# ========================================
# REED-MULLER
# ========================================

def test_zero_coefficients_give_zero_word(gf7):
    cfg = PolyCodeConfig.full_field(gf7, 2, 3)
    assert not rm_encode(cfg, np.zeros(10, dtype=np.int64)).any()


def test_univariate_case_is_reed_solomon(gf7, rng):
    cfg = PolyCodeConfig.full_field(gf7, 1, 2)
    rs = RSCode(gf7, 3, n=7)
    for _ in range(20):
        coefficients = gf7.random(3, rng)
        assert np.array_equal(rm_encode(cfg, coefficients), rs_encode(rs, coefficients))


def test_bivariate_length_and_dimension(gf16):
    t = 8
    code = ReedMullerCode(PolyCodeConfig.full_field(gf16, 2, t))
    assert code.params.n == 4 * t * t
    assert code.params.k == math.comb(t + 2, 2)


def test_coefficient_count_checked(gf7):
    cfg = PolyCodeConfig.full_field(gf7, 2, 2)
    with pytest.raises(ShapeError):
        rm_encode(cfg, [1, 2, 3])


@pytest.mark.parametrize("order,t", [(3, 1), (4, 2)])
def test_reed_muller_distance_exhaustive(order, t):
    field = get_field(order)
    code = ReedMullerCode(PolyCodeConfig.full_field(field, 2, t))
    assert code.params.d == (order - t) * order
    assert min_distance_exhaustive(code.encode, code.params, field) == code.params.d


# ========================================
# SYSTEMATIC
# ========================================

def test_message_is_read_back_from_codeword(gf7, rng):
    code = SystematicPolyCode(PolyCodeConfig.full_field(gf7, 2, 2, a_size=2))
    for _ in range(20):
        values = gf7.random(4, rng)
        assert np.array_equal(code.encode(values)[code.message_positions()], values)


def test_constant_message_gives_constant_word(gf11):
    cfg = PolyCodeConfig.full_field(gf11, 3, 3, a_size=2)
    assert np.all(systematic_encode(cfg, [6] * 8) == 6)


def test_univariate_systematic_matches_reed_solomon(gf7, rng):
    cfg = PolyCodeConfig.full_field(gf7, 1, 2, a_size=3)
    values = gf7.random(3, rng)
    interpolant = poly_interpolate((cfg.A, values))
    expected = rs_encode(RSCode(gf7, 3, n=7), poly_coeffs(interpolant, 3))
    assert np.array_equal(systematic_encode(cfg, values), expected)


def test_systematic_distance_at_least_bound(gf7):
    code = SystematicPolyCode(PolyCodeConfig.full_field(gf7, 2, 2, a_size=2))
    assert code.params.d == 35
    assert min_distance_exhaustive(code.encode, code.params, gf7) >= code.params.d


def test_systematic_needs_interpolation_grid(gf7):
    with pytest.raises(ParameterError):
        SystematicPolyCode(PolyCodeConfig.full_field(gf7, 2, 2))


def test_systematic_value_count_checked(gf7):
    cfg = PolyCodeConfig.full_field(gf7, 2, 2, a_size=2)
    with pytest.raises(ShapeError):
        systematic_encode(cfg, [1, 2, 3])


# ========================================
# LINE DECODING
# ========================================

def test_line_parameterization(gf7):
    line = Line(gf7([1, 2]), gf7([3, 0]))
    assert line.at(gf7([0, 2])).tolist() == [[1, 2], [0, 2]]


def test_smooth_decode_constant(gf13, rng):
    oracle = _oracle_for(MultiPoly(gf13, 2, {(0, 0): 9}, 4))
    cfg = PolyCodeConfig.full_field(gf13, 2, 4)
    assert int(smooth_line_decode(oracle, [3, 5], cfg, rng).value) == 9


def test_smooth_decode_random_polynomials(gf13, rng):
    cfg = PolyCodeConfig.full_field(gf13, 2, 4)
    poly = MultiPoly.random(gf13, 2, 4, rng)
    oracle = _oracle_for(poly)
    for _ in range(1000):
        a = gf13.random(2, rng)
        result = smooth_line_decode(oracle, a, cfg, rng)
        assert result.success and result.queries == 5
        assert result.value == poly.evaluate(a)[0]
    assert oracle.queries == 5000


def test_smooth_decode_query_marginals_uniform(gf13):
    counts = line_query_marginals(gf13, 2, [4, 11], 4)
    assert counts.shape == (5, 169)
    assert np.all(counts == 1)


def test_smooth_decode_needs_enough_field_elements(gf7, rng):
    cfg = PolyCodeConfig.full_field(gf7, 1, 6)
    oracle = FieldOracle(gf7, 1, gf7.zeros(7))
    with pytest.raises(ParameterError):
        smooth_line_decode(oracle, [0], cfg, rng)


def test_smooth_decoder_spec(gf13):
    spec = smooth_decoder_spec(PolyCodeConfig.full_field(gf13, 2, 4), 0.05)
    assert spec.query_complexity == 5
    assert spec.success_probability == pytest.approx(0.75)


def test_noisy_line_parameters_distinct(gf16, rng):
    zs = noisy_line_zs(gf16, 5, rng)
    assert np.unique(zs.view(np.ndarray)).size == 15
    assert np.all(zs != 0)
    with pytest.raises(ParameterError):
        noisy_line_zs(gf16, 6, rng)


def test_noisy_decode_exact_oracle(gf16, rng):
    cfg = PolyCodeConfig.full_field(gf16, 2, 4)
    poly = MultiPoly.random(gf16, 2, 4, rng)
    oracle = _oracle_for(poly)
    for _ in range(50):
        a = gf16.random(2, rng)
        result = noisy_line_decode(oracle, a, cfg, rng)
        assert result.success and result.queries == 12
        assert result.value == poly.evaluate(a)[0]


@pytest.mark.slow
def test_noisy_decode_success_rate():
    gf64 = get_field(64)
    rng = child_rng(64, 0)
    cfg = PolyCodeConfig.full_field(gf64, 2, 6)
    poly = MultiPoly.random(gf64, 2, 6, rng)
    table = poly.evaluate(grid_points(gf64.elements(), 2))
    flips = rng.choice(table.size, size=int(0.05 * table.size), replace=False)
    table[flips] += gf64.random_nonzero(flips.size, rng)
    oracle = FieldOracle(gf64, 2, table)
    wins = 0
    for _ in range(500):
        a = gf64.random(2, rng)
        result = noisy_line_decode(oracle, a, cfg, rng)
        wins += result.success and result.value == poly.evaluate(a)[0]
    assert wins >= 375


def test_noisy_decode_refuses_t_corrupted_samples(gf16):
    t = 4
    cfg = PolyCodeConfig.full_field(gf16, 2, t)
    poly = MultiPoly(gf16, 2, {(1, 1): 3, (0, 2): 1, (0, 0): 7}, t)
    a = gf16([5, 9])

    # Replay the decoder's draws to find the sampled line.
    for seed in range(10):
        replay = child_rng(11, seed)
        direction = gf16.random(2, replay)
        if direction.any():
            break
    zs = noisy_line_zs(gf16, t, replay)
    oracle = _oracle_for(poly)
    table = oracle.truth_table()
    table[oracle.indices(Line(a, direction).at(zs[:t]))] += gf16(1)

    result = noisy_line_decode(FieldOracle(gf16, 2, table), a, cfg, child_rng(11, seed))
    assert not result.success
    assert result.error


def test_noisy_decode_needs_positive_degree(gf16, rng):
    cfg = PolyCodeConfig.full_field(gf16, 2, 0)
    with pytest.raises(ParameterError):
        noisy_line_decode(FieldOracle(gf16, 2, gf16.zeros(256)), [0, 0], cfg, rng)


# ========================================
# MULTILINEAR
# ========================================

def test_zero_message_gives_zero_word(gf4):
    assert not multilinear_encode(4, 2, [0] * 6, gf4).any()


def test_degree_one_reads_coordinates(gf2):
    x = [1, 0, 1]
    word = multilinear_encode(3, 1, x, gf2)
    for j, S in enumerate(subset_index(3, 1)):
        assert int(word[point_index(indicator_point(gf2, 3, S), 2)]) == x[j]


def test_entries_sit_at_indicator_points(gf4, rng):
    m, d = 6, 2
    x = gf4.random(math.comb(m, d), rng)
    word = multilinear_encode(m, d, x, gf4)
    for j, S in enumerate(subset_index(m, d)):
        assert word[point_index(indicator_point(gf4, m, S), 4)] == x[j]


def test_line_decoder_recovers_message_entries(gf4, rng):
    m, d = 4, 2
    x = gf4.random(math.comb(m, d), rng)
    oracle = FieldOracle(gf4, m, multilinear_encode(m, d, x, gf4))
    cfg = multilinear_config(gf4, m, d)
    for j, S in enumerate(subset_index(m, d)):
        result = smooth_line_decode(oracle, indicator_point(gf4, m, S), cfg, rng)
        assert result.queries == d + 1
        assert result.value == x[j]


def test_multilinear_field_size_guard(gf4, gf7):
    with pytest.raises(ParameterError):
        multilinear_encode(3, 1, [1, 0, 1], gf4)
    with pytest.raises(ParameterError):
        multilinear_encode(3, 4, [1], gf7)


def test_multilinear_message_too_long(gf4):
    with pytest.raises(ShapeError):
        multilinear_encode(3, 2, [1, 2, 3, 0], gf4)


# ========================================
# SCHWARTZ-ZIPPEL
# ========================================

def test_single_variable_zero_fraction():
    gf5 = get_field(5)
    p = MultiPoly(gf5, 2, {(1, 0): 1})
    assert exhaustive_zero_fraction(p, gf5.elements()) == pytest.approx(1 / 5)


def test_bound_is_tight_for_split_univariate(gf7):
    # (z - 1)(z - 2)(z - 3) = z^3 + z^2 + 4z + 1 over GF(7)
    p = MultiPoly(gf7, 1, {(3,): 1, (2,): 1, (1,): 4, (0,): 1})
    assert exhaustive_zero_fraction(p, gf7.elements()) == pytest.approx(3 / 7)


def test_random_polynomials_respect_bound(rng):
    gf8 = get_field(8)
    S = gf8.elements()
    for _ in range(10):
        p = MultiPoly.random(gf8, 3, 4, rng)
        if p.is_zero():
            continue
        assert exhaustive_zero_fraction(p, S) <= 0.5
        trials = 2000
        sigma = math.sqrt(0.25 / trials)
        assert schwartz_zippel_check(p, S, trials, rng) <= 0.5 + 3 * sigma


def test_zero_polynomial_rejected(gf7, rng):
    with pytest.raises(ParameterError):
        schwartz_zippel_check(MultiPoly(gf7, 2, {}), gf7.elements(), 10, rng)
