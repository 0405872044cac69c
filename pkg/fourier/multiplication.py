"""
Multiplication Codes - Coding Lab
Codes over Z_N whose j-th bit is B(x j mod N) for a predicate B, t-segment
predicates, and exact list decoding.

List decoding counts agreement directly for every x in Z_N (O(N^2) work under
an N <= 2^16 guard). The DFT over Z_N is used only to rank spectral
candidates; it never decides list membership.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from errors import ParameterError, ShapeError

logger = logging.getLogger(__name__)

MAX_MODULUS = 1 << 16
BALANCE_BOUND = 2
CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class ModPredicate:
    """B: Z_N -> {0,1} as a table."""

    N: int
    table: np.ndarray

    def __post_init__(self):
        if self.N < 2:
            raise ParameterError("modulus N must be at least 2")
        table = np.asarray(self.table).astype(np.uint8)
        if table.shape != (self.N,) or np.any(table > 1):
            raise ShapeError(f"predicate table must be N={self.N} bits")
        object.__setattr__(self, "table", table)

    def __call__(self, x) -> np.ndarray:
        return self.table[np.asarray(x, dtype=np.int64) % self.N]

    def compose_multiplication(self, c: int) -> "ModPredicate":
        """x -> B(c x mod N)."""
        return ModPredicate(self.N, self.table[(c * np.arange(self.N, dtype=np.int64)) % self.N])


def msb(N: int) -> ModPredicate:
    """1 iff x >= ceil(N / 2)."""
    return ModPredicate(N, (np.arange(N) >= (N + 1) // 2).astype(np.uint8))


def lsb(N: int) -> ModPredicate:
    return ModPredicate(N, (np.arange(N) & 1).astype(np.uint8))


def segment_count(B: ModPredicate) -> int:
    """Value changes along B(0), ..., B(N-1), B(0)."""
    return int(np.count_nonzero(B.table != np.roll(B.table, -1)))


def is_balanced(B: ModPredicate, bound: int = BALANCE_BOUND) -> bool:
    ones = int(B.table.sum())
    return abs((B.N - ones) - ones) <= bound


def mult_code_encode(B: ModPredicate, x: int) -> np.ndarray:
    return B((int(x) * np.arange(B.N, dtype=np.int64)) % B.N)


def agreement_counts(g, B: ModPredicate) -> np.ndarray:
    """counts[x] = #{j : g_j = B(x j mod N)} for every x in Z_N."""
    g = np.asarray(g).astype(np.uint8)
    N = B.N
    if g.shape != (N,):
        raise ShapeError(f"received word must have N={N} bits")
    if N > MAX_MODULUS:
        raise ParameterError(f"N={N} exceeds {MAX_MODULUS}")
    js = np.arange(N, dtype=np.int64)
    counts = np.empty(N, dtype=np.int64)
    step = max(1, CHUNK_CELLS // N)
    for start in range(0, N, step):
        xs = np.arange(start, min(N, start + step), dtype=np.int64)
        words = B.table[(xs[:, np.newaxis] * js[np.newaxis, :]) % N]
        counts[start:start + xs.size] = np.count_nonzero(words == g[np.newaxis, :], axis=1)
    return counts


def mult_code_list_decode_bf(g, B: ModPredicate, eps: float, balance_bound: int = BALANCE_BOUND) -> List[int]:
    """
    Every x whose codeword agrees with g on at least (1/2 + eps) N positions.

    Raises:
        ParameterError: B not balanced within ``balance_bound``, or N too large
    """
    if not is_balanced(B, balance_bound):
        logger.warning("predicate with %d ones of %d is not balanced", int(B.table.sum()), B.N)
        raise ParameterError(f"predicate is not balanced within {balance_bound}")
    counts = agreement_counts(g, B)
    threshold = (0.5 + eps) * B.N
    found = np.flatnonzero(counts >= threshold - 1e-9).tolist()
    logger.debug("mult code list decode: N=%d t=%d eps=%.3f -> %d", B.N, segment_count(B), eps, len(found))
    return found


def spectral_candidates(g, B: ModPredicate, top: int = 4) -> List[int]:
    """
    x = alpha / beta for the ``top`` heaviest nonzero frequencies alpha of g
    and beta of B (+-1 views, DFT over Z_N), skipping non-invertible beta.

    C(x) has its spectrum at alpha = x beta, so heavy frequencies of a word
    close to C(x) point back to x.
    """
    N = B.N
    g_hat = np.abs(np.fft.fft(1.0 - 2.0 * np.asarray(g, dtype=np.float64)))
    b_hat = np.abs(np.fft.fft(1.0 - 2.0 * B.table.astype(np.float64)))
    g_hat[0] = b_hat[0] = -1.0
    alphas = np.argsort(-g_hat, kind="stable")[:top]
    betas = np.argsort(-b_hat, kind="stable")[:top]
    found = set()
    for beta in betas:
        try:
            inverse = pow(int(beta), -1, N)
        except ValueError:
            continue
        for alpha in alphas:
            found.add((int(alpha) * inverse) % N)
    return sorted(found)
