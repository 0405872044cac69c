from fractions import Fraction

import numpy as np
import pytest

from codes.channel import child_rng
from errors import ParameterError, ShapeError
from fourier.spectrum import (
    BooleanFunction,
    agreement_from_coefficient,
    fourier_transform,
    km_approximate,
    km_learn_heavy,
    synthesize_boolean,
)


def majority_of_characters(k: int, a: int, b: int, c: int) -> BooleanFunction:
    votes = sum(BooleanFunction.linear(k, v).table.astype(np.int64) for v in (a, b, c))
    return BooleanFunction((votes >= 2).astype(np.uint8))


def _random_characters(k: int, rng) -> tuple:
    return tuple(int(v) for v in rng.choice(np.arange(1, 1 << k), size=3, replace=False))


# ========================================
# TRANSFORM
# ========================================

def test_character_has_single_coefficient():
    spectrum = fourier_transform(BooleanFunction.linear(6, 13))
    expected = np.zeros(64)
    expected[13] = 1.0
    assert np.array_equal(spectrum.coefficients, expected)


def test_constant_zero_is_all_in_coefficient_zero():
    spectrum = fourier_transform(BooleanFunction(np.zeros(16)))
    assert spectrum[0] == 1.0
    assert spectrum.support() == [0]


def test_parseval(rng):
    for k in (10, 14):
        spectrum = fourier_transform(BooleanFunction.random(k, rng))
        assert abs(spectrum.parseval_sum() - 1.0) <= 1e-9
    assert fourier_transform(BooleanFunction.random(10, rng)).parseval_exact() == 1


@pytest.mark.slow
def test_parseval_many_random_functions():
    for trial in range(1000):
        spectrum = fourier_transform(BooleanFunction.random(12, child_rng(12, trial)))
        assert abs(spectrum.parseval_sum() - 1.0) <= 1e-9


def test_synthesis_reproduces_function(rng):
    f = BooleanFunction.random(9, rng)
    assert np.array_equal(synthesize_boolean(fourier_transform(f)).table, f.table)


def test_majority_spectrum_is_four_halves():
    spectrum = fourier_transform(majority_of_characters(5, 1, 2, 4))
    heavy = dict(spectrum.heavy(0.25))
    assert heavy == {1: 0.5, 2: 0.5, 4: 0.5, 7: -0.5}


def test_truth_table_validation():
    with pytest.raises(ShapeError):
        BooleanFunction(np.zeros(6))
    with pytest.raises(ShapeError):
        BooleanFunction(np.array([0, 1, 2, 1]))


def test_csv_export():
    text = fourier_transform(BooleanFunction.linear(3, 5)).to_csv()
    lines = text.splitlines()
    assert lines[0] == "a,coefficient"
    assert lines[1] == "000,0.000000000"
    assert lines[6] == "101,1.000000000"


# ========================================
# AGREEMENT IDENTITY
# ========================================

def test_agreement_of_character_and_complement():
    f = BooleanFunction.linear(5, 9)
    assert agreement_from_coefficient(f, 9) == 1
    assert agreement_from_coefficient(f.complement(), 9) == 0


def test_agreement_identity_exhaustive(rng):
    f = BooleanFunction.random(8, rng)
    for a in range(256):
        value = agreement_from_coefficient(f, a)
        assert isinstance(value, Fraction)
        assert 0 <= value <= 1


# ========================================
# HEAVY COEFFICIENTS
# ========================================

def test_learns_single_character(rng):
    f = BooleanFunction.linear(8, 77)
    heavy = km_learn_heavy(f.oracle(), 0.5, rng)
    assert heavy.indices == [77]
    assert heavy.coefficients[0][1] == pytest.approx(1.0)
    assert heavy.exact_estimates


def test_learns_majority_heavy_set_small():
    hits = 0
    for run in range(20):
        rng = child_rng(6, run)
        a, b, c = _random_characters(6, rng)
        f = majority_of_characters(6, a, b, c)
        expected = sorted(a for a, _ in fourier_transform(f).heavy(0.25))
        learned = km_learn_heavy(f.oracle(), 0.25, rng)
        assert len(learned.coefficients) <= 1 / 0.25 ** 2
        hits += learned.indices == expected
    assert hits >= 15


@pytest.mark.slow
def test_learns_majority_heavy_set():
    hits = 0
    for run in range(100):
        rng = child_rng(10, run)
        f = majority_of_characters(10, *_random_characters(10, rng))
        expected = sorted(a for a, _ in fourier_transform(f).heavy(0.25))
        hits += km_learn_heavy(f.oracle(), 0.25, rng).indices == expected
    assert hits >= 75


def test_theta_validation(rng):
    oracle = BooleanFunction.linear(4, 3).oracle()
    with pytest.raises(ParameterError):
        km_learn_heavy(oracle, 0.0, rng)
    with pytest.raises(ParameterError):
        km_learn_heavy(oracle, 1.0, rng)


# ========================================
# APPROXIMATION
# ========================================

def test_one_sparse_approximation_is_exact(rng):
    approx = km_approximate(BooleanFunction.linear(8, 200).oracle(), 0.3, rng)
    assert approx.disagreement == 0.0


def test_concentrated_function_approximated(rng):
    table = BooleanFunction.linear(8, 45).table.copy()
    table[17] ^= 1
    f = BooleanFunction(table)
    approx = km_approximate(f.oracle(), 0.3, rng)
    counted = np.count_nonzero(approx.function.table != f.table) / 256
    assert approx.disagreement == counted
    assert approx.disagreement <= 0.05


def test_random_function_reports_honestly(rng):
    f = BooleanFunction.random(8, rng)
    approx = km_approximate(f.oracle(), 0.3, rng)
    assert approx.disagreement == np.count_nonzero(approx.function.table != f.table) / 256
