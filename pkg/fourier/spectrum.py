"""
Boolean Fourier Analysis - Coding Lab
Spectra of boolean functions and learning of their heavy coefficients.

The {0,1} and +-1 views are converted explicitly: 0 -> +1, 1 -> -1.
chi_a(x) = (-1)^(a . x), with the bit convention of codes.hadamard.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from codes.goldreich_levin import GLConfig, gl_list_decode
from codes.hadamard import BitOracle, parity, walsh_hadamard_transform
from errors import ContractViolation, ParameterError, ShapeError

logger = logging.getLogger(__name__)

MAX_K = 20
ESTIMATE_CONFIDENCE = 0.05


# ========================================
# FUNCTIONS AND SPECTRA
# ========================================

@dataclass(frozen=True)
class BooleanFunction:
    """Truth table of f: {0,1}^k -> {0,1}."""

    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table).view(np.ndarray).astype(np.uint8)
        size = table.size
        if size == 0 or size & (size - 1):
            raise ShapeError("truth table length must be a power of two")
        if size > 1 << MAX_K:
            raise ParameterError(f"k must be at most {MAX_K}")
        if np.any(table > 1):
            raise ShapeError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @property
    def n(self) -> int:
        return self.table.size

    @property
    def k(self) -> int:
        return self.n.bit_length() - 1

    def signs(self) -> np.ndarray:
        """The +-1 view."""
        return 1 - 2 * self.table.astype(np.int64)

    @classmethod
    def from_signs(cls, values) -> "BooleanFunction":
        return cls((np.asarray(values) < 0).astype(np.uint8))

    @classmethod
    def linear(cls, k: int, a: int) -> "BooleanFunction":
        """L_a(x) = a . x mod 2."""
        return cls(parity(np.arange(1 << k, dtype=np.uint64) & np.uint64(a)))

    @classmethod
    def random(cls, k: int, rng: np.random.Generator) -> "BooleanFunction":
        return cls(rng.integers(0, 2, size=1 << k))

    def complement(self) -> "BooleanFunction":
        return BooleanFunction(self.table ^ 1)

    def oracle(self) -> BitOracle:
        return BitOracle(self.table)


@dataclass(frozen=True)
class FourierSpectrum:
    """
    f_hat_a = 2^-k sum_x f(x) chi_a(x) (+-1 view), kept both as floats and
    as exact integer correlations 2^k f_hat_a.
    """

    k: int
    correlations: np.ndarray

    @property
    def coefficients(self) -> np.ndarray:
        return self.correlations / float(1 << self.k)

    def __getitem__(self, a: int) -> float:
        return float(self.coefficients[a])

    def exact(self, a: int) -> Fraction:
        return Fraction(int(self.correlations[a]), 1 << self.k)

    def parseval_sum(self) -> float:
        return float(np.sum(self.coefficients ** 2))

    def parseval_exact(self) -> Fraction:
        squares = sum(int(c) * int(c) for c in self.correlations)
        return Fraction(squares, 1 << (2 * self.k))

    def support(self, tolerance: float = 0.0) -> List[int]:
        return np.flatnonzero(np.abs(self.coefficients) > tolerance).tolist()

    def heavy(self, theta: float) -> List[Tuple[int, float]]:
        """(a, f_hat_a) for every |f_hat_a| >= theta."""
        coefficients = self.coefficients
        return [(int(a), float(coefficients[a])) for a in np.flatnonzero(np.abs(coefficients) >= theta)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "a": [format(a, f"0{self.k}b") for a in range(1 << self.k)],
            "coefficient": self.coefficients,
        })

    def to_csv(self, path: Optional[str] = None) -> str:
        """Index a as a k-bit string, coefficient in fixed 9-decimal notation."""
        text = self.to_frame().to_csv(index=False, float_format="%.9f", lineterminator="\n")
        if path is not None:
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(text)
        return text


def fourier_transform(f: BooleanFunction) -> FourierSpectrum:
    return FourierSpectrum(k=f.k, correlations=walsh_hadamard_transform(f.signs()))


def synthesize(spectrum: FourierSpectrum) -> np.ndarray:
    """sum_a f_hat_a chi_a(x) for every x, as a real vector."""
    return walsh_hadamard_transform(spectrum.correlations) / float(1 << spectrum.k)


def synthesize_boolean(spectrum: FourierSpectrum) -> BooleanFunction:
    """Inverse transform of the spectrum of a boolean function."""
    values = synthesize(spectrum)
    if not np.allclose(np.abs(values), 1.0):
        raise ContractViolation("spectrum does not synthesize a boolean function")
    return BooleanFunction.from_signs(values)


def agreement_from_coefficient(f: BooleanFunction, a: int) -> Fraction:
    """
    Pr_x[f(x) = L_a(x)] = 1/2 + f_hat_a / 2, checked against a direct count.
    """
    predicted = Fraction(1, 2) + fourier_transform(f).exact(a) / 2
    linear = BooleanFunction.linear(f.k, a).table
    counted = Fraction(int(np.count_nonzero(f.table == linear)), f.n)
    if counted != predicted:
        raise ContractViolation(f"agreement {counted} != 1/2 + f_hat/2 = {predicted} at a={a}")
    return predicted


# ========================================
# HEAVY COEFFICIENTS
# ========================================

@dataclass
class HeavyCoefficients:
    """
    Attributes:
        coefficients: (a, estimated f_hat_a), sorted by a
        candidates: Distinct candidates proposed by list decoding
        queries: Oracle queries spent (list decoding plus estimation)
        exact_estimates: True when estimates used every position
    """

    coefficients: List[Tuple[int, float]] = dataclass_field(default_factory=list)
    candidates: int = 0
    queries: int = 0
    exact_estimates: bool = False

    @property
    def indices(self) -> List[int]:
        return [a for a, _ in self.coefficients]


def estimate_sample_size(tolerance: float, list_length: int) -> int:
    """Hoeffding: every estimate within tolerance with probability >= 1 - ESTIMATE_CONFIDENCE."""
    return math.ceil(2 * math.log(2 * max(list_length, 1) / ESTIMATE_CONFIDENCE) / tolerance ** 2)


def estimate_coefficients(f: BitOracle, candidates: List[int], tolerance: float, rng: np.random.Generator) -> Tuple[np.ndarray, bool]:
    """Sampled (or exact, when the sample would cover the domain) f_hat_a for each candidate."""
    samples = estimate_sample_size(tolerance, len(candidates))
    exact = samples >= f.n
    positions = np.arange(f.n, dtype=np.int64) if exact else rng.integers(0, f.n, size=samples, dtype=np.int64)
    values = 1 - 2 * f.query_many(positions).astype(np.int64)
    cands = np.asarray(candidates, dtype=np.uint64)
    chars = 1 - 2 * parity(cands[:, np.newaxis] & positions.astype(np.uint64)[np.newaxis, :]).astype(np.int64)
    return (chars * values[np.newaxis, :]).mean(axis=1), exact


def km_learn_heavy(
    f: BitOracle,
    theta: float,
    rng: np.random.Generator,
    cfg: Optional[GLConfig] = None,
) -> HeavyCoefficients:
    """
    Find the large Fourier coefficients of f.

    List-decodes f and its complement with eps = theta / 2, so every a with
    |f_hat_a| > theta is proposed with probability >= 3/4, then keeps the
    candidates whose estimated |f_hat_a| is at least theta - theta / 4.
    """
    if theta <= 0:
        raise ParameterError("theta must be positive")
    eps = theta / 2
    if eps >= 0.5:
        raise ParameterError(f"theta must be below 1, got {theta}")
    before = f.queries
    complement = _ComplementOracle(f)

    found = set(gl_list_decode(f, eps, cfg, rng).candidates)
    found |= set(gl_list_decode(complement, eps, cfg, rng).candidates)
    f.queries += complement.queries
    candidates = sorted(found)

    result = HeavyCoefficients(candidates=len(candidates))
    if candidates:
        tolerance = theta / 4
        estimates, exact = estimate_coefficients(f, candidates, tolerance, rng)
        result.exact_estimates = exact
        result.coefficients = [
            (a, float(est)) for a, est in zip(candidates, estimates) if abs(est) >= theta - tolerance
        ]
    result.queries = f.queries - before
    logger.debug("km: theta=%.3f candidates=%d kept=%d", theta, len(candidates), len(result.coefficients))
    return result


class _ComplementOracle(BitOracle):
    """1 - f, answering through its own counter."""

    def __init__(self, inner: BitOracle):
        super().__init__(inner.truth_table() ^ 1)


# ========================================
# APPROXIMATION
# ========================================

@dataclass
class Approximation:
    """
    Attributes:
        function: Sign of sum over L of f_hat'_a chi_a (zero sums map to 0)
        coefficients: The learned (a, f_hat'_a)
        disagreement: Exact fraction of positions where the approximation differs from f
    """

    function: BooleanFunction
    coefficients: List[Tuple[int, float]]
    disagreement: float


def km_approximate(f: BitOracle, eps: float, rng: np.random.Generator, cfg: Optional[GLConfig] = None) -> Approximation:
    """
    g = sum_{a in L} f_hat'_a chi_a over the learned heavy set, thresholded
    to a boolean function. Disagreement is counted against f's full table.
    """
    heavy = km_learn_heavy(f, eps, rng, cfg)
    correlations = np.zeros(f.n, dtype=np.float64)
    for a, estimate in heavy.coefficients:
        correlations[a] = estimate
    values = walsh_hadamard_transform(correlations)
    approx = BooleanFunction((values < 0).astype(np.uint8))
    disagreement = float(np.count_nonzero(approx.table != f.truth_table())) / f.n
    return Approximation(approx, heavy.coefficients, disagreement)
