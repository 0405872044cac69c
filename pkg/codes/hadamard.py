"""
Hadamard Code - Coding Lab
Encoding, two-query local decoding, amplified full decoding and linearity
testing for the binary Hadamard code.

Conventions:
    A k-bit vector (v_1, ..., v_k) is the integer with v_1 as the most
    significant bit, so e_i (0-indexed) is 1 << (k - 1 - i). Position a of
    H(x) holds a . x mod 2 = parity(a & x).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from codes.core import CodeParams, LocalDecoderSpec, LTCSpec
from errors import ParameterError, ShapeError
from fields.field import Field, get_field

logger = logging.getLogger(__name__)

MAX_K = 24

# Repetitions for full decoding: r = ceil(C * eps^-2 * ln(4k)). Hoeffding gives
# a per-bit failure of (4k)^(-8C); C = 1/2 leaves the union bound far below 1/4.
FULL_DECODE_CONSTANT = 0.5


# ========================================
# BIT HELPERS
# ========================================

def parity(values) -> np.ndarray:
    """Parity of each nonnegative integer, by xor-folding."""
    v = np.array(values, dtype=np.uint64, copy=True)
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return (v & np.uint64(1)).astype(np.uint8)


def bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | (int(b) & 1)
    return value


def int_to_bits(value: int, k: int) -> np.ndarray:
    return ((int(value) >> np.arange(k - 1, -1, -1)) & 1).astype(np.uint8)


def unit_vector(k: int, i: int) -> int:
    if not 0 <= i < k:
        raise ParameterError(f"index {i} out of range for k={k}")
    return 1 << (k - 1 - i)


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ParameterError(f"Hadamard message length must be in [1, {MAX_K}], got {k}")


# ========================================
# ENCODING
# ========================================

def had_encode(x: Sequence[int]) -> np.ndarray:
    """H(x): all 2^k inner products a . x mod 2."""
    k = len(x)
    _check_k(k)
    return parity(np.arange(1 << k, dtype=np.uint64) & np.uint64(bits_to_int(x)))


class HadamardCode:
    """The [2^k, k, 2^(k-1)]_2 Hadamard code."""

    def __init__(self, k: int):
        _check_k(k)
        self.k = k
        self.n = 1 << k
        self._params = CodeParams(n=self.n, k=k, d=self.n // 2, q=2)

    @property
    def params(self) -> CodeParams:
        return self._params

    @property
    def field(self) -> Field:
        return get_field(2)

    def encode(self, message) -> np.ndarray:
        bits = np.asarray(message).view(np.ndarray).astype(np.int64)
        if bits.size != self.k:
            raise ShapeError(f"message length {bits.size} != k={self.k}")
        return had_encode(bits)

    def local_decoder_spec(self, delta: float) -> LocalDecoderSpec:
        return LocalDecoderSpec(query_complexity=2, delta=delta, success_probability=1 - 2 * delta, smoothness=1)

    def tester_spec(self, delta: float) -> LTCSpec:
        # A delta-far word is rejected with probability at least delta.
        return LTCSpec(query_complexity=3, delta=delta, soundness=delta)


# ========================================
# ORACLES
# ========================================

class BitOracle:
    """
    Query access to a 2^k-bit word, counting every query on this handle.

    ``fork`` returns a handle on the same word with its own counter.
    """

    def __init__(self, table: np.ndarray):
        table = np.asarray(table).view(np.ndarray).astype(np.uint8)
        size = table.size
        if size == 0 or size & (size - 1):
            raise ShapeError("oracle table length must be a power of two")
        self._table = table
        self.k = size.bit_length() - 1
        self.queries = 0

    @classmethod
    def from_function(cls, k: int, fn: Callable[[np.ndarray], np.ndarray]) -> "BitOracle":
        """Tabulate fn over all positions 0 .. 2^k - 1."""
        _check_k(k)
        return cls(np.asarray(fn(np.arange(1 << k, dtype=np.uint64))) & 1)

    @property
    def n(self) -> int:
        return self._table.size

    def query(self, position: int) -> int:
        self.queries += 1
        return int(self._table[int(position)])

    def query_many(self, positions) -> np.ndarray:
        positions = np.asarray(positions, dtype=np.int64)
        self.queries += positions.size
        return self._table[positions]

    def fork(self) -> "BitOracle":
        return BitOracle(self._table)

    def truth_table(self) -> np.ndarray:
        """Uncounted view for test oracles."""
        return self._table.copy()


def corrupt_table(table: np.ndarray, delta: float, rng: np.random.Generator) -> np.ndarray:
    """Flip exactly round(delta * len) uniformly chosen bits."""
    table = np.asarray(table).astype(np.uint8).copy()
    flips = rng.choice(table.size, size=int(round(delta * table.size)), replace=False)
    table[flips] ^= 1
    return table


# ========================================
# LOCAL DECODING
# ========================================

def blr_queries(k: int, i: int, a: int) -> tuple:
    """The two positions read to recover bit i when the random shift is a."""
    return a, a ^ unit_vector(k, i)


def blr_local_decode(y: BitOracle, i: int, rng: np.random.Generator) -> int:
    """x_i = H(x)_a xor H(x)_{a xor e_i} for a uniformly random a."""
    a = int(rng.integers(0, y.n))
    first, second = blr_queries(y.k, i, a)
    return y.query(first) ^ y.query(second)


def full_decode_repetitions(delta: float, k: int) -> int:
    """r = ceil(C eps^-2 ln(4k)) with eps = 1/4 - delta."""
    eps = 0.25 - delta
    if eps <= 0:
        raise ParameterError(f"full decoding needs delta < 1/4, got {delta}")
    return math.ceil(FULL_DECODE_CONSTANT * eps ** -2 * math.log(4 * k))


def full_decode_plan(k: int, repetitions: int, rng: np.random.Generator) -> np.ndarray:
    """Query positions, shape (k, r, 2): pairs (a, a xor e_i) per bit and repetition."""
    shifts = rng.integers(0, 1 << k, size=(k, repetitions), dtype=np.int64)
    units = np.array([unit_vector(k, i) for i in range(k)], dtype=np.int64)[:, np.newaxis]
    return np.stack((shifts, shifts ^ units), axis=-1)


def full_decode_finish(answers: np.ndarray) -> np.ndarray:
    """
    Majority per bit from answers shaped like the plan (k, r, 2) plus any
    leading batch axes. Ties resolve to 0.
    """
    votes = (answers[..., 0] ^ answers[..., 1]).sum(axis=-1, dtype=np.int64)
    repetitions = answers.shape[-2]
    return (2 * votes > repetitions).astype(np.uint8)


def had_full_decode(
    y: BitOracle,
    delta: float,
    rng: np.random.Generator,
    repetitions: Optional[int] = None,
) -> np.ndarray:
    """
    Recover all k bits by majority over r independent local decodes each.

    Uses exactly 2 r k queries.
    """
    r = repetitions or full_decode_repetitions(delta, y.k)
    plan = full_decode_plan(y.k, r, rng)
    answers = y.query_many(plan.ravel()).reshape(plan.shape)
    return full_decode_finish(answers)


# ========================================
# LINEARITY TESTING
# ========================================

@dataclass
class LinearityTestResult:
    accepted: bool
    repetitions: int
    rejections: int
    queries: int


def blr_linearity_test(f: BitOracle, repetitions: int, rng: np.random.Generator) -> LinearityTestResult:
    """Accept iff f(a) xor f(b) = f(a xor b) on every sampled pair."""
    if repetitions < 1:
        raise ParameterError("repetitions must be positive")
    before = f.queries
    a = rng.integers(0, f.n, size=repetitions, dtype=np.int64)
    b = rng.integers(0, f.n, size=repetitions, dtype=np.int64)
    plan = np.stack((a, b, a ^ b), axis=-1)
    answers = f.query_many(plan.ravel()).reshape(plan.shape)
    rejections = int(np.count_nonzero(answers[:, 0] ^ answers[:, 1] ^ answers[:, 2]))
    return LinearityTestResult(rejections == 0, repetitions, rejections, f.queries - before)


def linearity_rejection_probability(table: np.ndarray) -> float:
    """Exact single-repetition rejection probability over all (a, b) pairs."""
    table = np.asarray(table).astype(np.uint8)
    n = table.size
    positions = np.arange(n)
    xor = positions[:, np.newaxis] ^ positions[np.newaxis, :]
    rejects = table[:, np.newaxis] ^ table[np.newaxis, :] ^ table[xor]
    return float(rejects.sum(dtype=np.int64)) / (n * n)


def distance_to_linear(table: np.ndarray) -> float:
    """Relative distance from f to the closest linear function."""
    correlations = walsh_hadamard_transform(1 - 2 * np.asarray(table, dtype=np.int64))
    n = correlations.shape[-1]
    return float((n - correlations.max(axis=-1)) / (2 * n))


# ========================================
# SPECTRAL TOOLS
# ========================================

def walsh_hadamard_transform(values) -> np.ndarray:
    """
    Unnormalized transform along the last axis:
    out[..., a] = sum_x (-1)^(a . x) values[..., x].
    """
    out = np.array(values, copy=True)
    n = out.shape[-1]
    if n & (n - 1):
        raise ShapeError("transform length must be a power of two")
    lead = out.shape[:-1]
    h = 1
    while h < n:
        out = out.reshape(*lead, n // (2 * h), 2, h)
        low = out[..., 0, :]
        high = out[..., 1, :]
        out = np.stack((low + high, low - high), axis=-2)
        h *= 2
    return out.reshape(*lead, n)


def linear_agreement_count(tables: np.ndarray, eps: float) -> np.ndarray:
    """
    For each boolean function (rows of ``tables``), the number of linear L_a
    with agreement >= 1/2 + eps.
    """
    tables = np.atleast_2d(np.asarray(tables, dtype=np.int64))
    correlations = walsh_hadamard_transform(1 - 2 * tables)
    n = tables.shape[-1]
    # agreement(a) = 1/2 + corr/(2n) >= 1/2 + eps  <=>  corr >= 2 eps n
    return np.count_nonzero(correlations >= 2 * eps * n - 1e-9, axis=-1)


def list_size_bound(eps: float) -> float:
    """At most 1 / (4 eps^2) linear functions agree with any f on 1/2 + eps."""
    return 1.0 / (4 * eps * eps)


def pairwise_majority_bound_check(t: int, eps: float) -> float:
    """
    Chebyshev lower bound on the probability that the majority of t pairwise
    independent bits, each correct with probability >= 1/2 + eps, is correct:
    max(0, 1 - 1/(4 eps^2 t)).
    """
    if t < 1:
        raise ParameterError("t must be at least 1")
    return max(0.0, 1.0 - 1.0 / (4 * eps * eps * t))


def simulate_pairwise_majority(
    l: int,
    k: int,
    good_fraction: float,
    trials: int,
    rng: np.random.Generator,
) -> float:
    """
    Empirical failure rate of a majority over 2^l - 1 pairwise independent
    bits: bit S is whether z xor x_S lands in a fixed set of density
    ``good_fraction`` of {0,1}^k.
    """
    from codes.goldreich_levin import subset_sums

    n = 1 << k
    good = np.zeros(n, dtype=bool)
    good[: int(round(good_fraction * n))] = True
    failures = 0
    for _ in range(trials):
        xs = rng.integers(0, n, size=l, dtype=np.int64)
        z = int(rng.integers(0, n))
        hits = good[z ^ subset_sums(xs)]
        if 2 * int(hits.sum()) <= hits.size:
            failures += 1
    return failures / trials
