"""
Random Linear Codes - Coding Lab
Gilbert-Varshamov sampling of binary linear codes with exhaustive distance
verification, plus brute-force nearest-codeword decoding for any small code.
"""

import logging
import math
from typing import Optional

import galois
import numpy as np
from scipy.stats import binom

from codes.core import LINEAR_ENUMERATION_LIMIT, LinearCode, all_messages, as_symbols, require_length
from errors import EnumerationLimitError, ParameterError, SamplingExhausted
from fields.field import get_field

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 0.1


def binary_entropy(x: float) -> float:
    """H_2(x) = x log2(1/x) + (1 - x) log2(1/(1 - x)), with H_2(0) = H_2(1) = 0."""
    if not 0 <= x <= 1:
        raise ParameterError(f"binary entropy is defined on [0, 1], got {x}")
    if x in (0, 1):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


# ========================================
# SAMPLING
# ========================================

class RandomLinearCode(LinearCode):
    """
    Binary code C(x) = x A for a sampled k x n matrix A, verified to have
    minimum distance >= d.
    """

    def __init__(self, generator: galois.FieldArray, d: int, seed: Optional[int], attempts: int):
        super().__init__(get_field(2), generator, d=d, name="gv-random")
        self.seed = seed
        self.attempts = attempts


def gv_rate_bound(n: int, d: int, slack: float = DEFAULT_SLACK) -> float:
    """Largest rate the sampler accepts: 1 - H_2(d/n) - slack."""
    return 1 - binary_entropy(d / n) - slack


def minimum_weight(generator: np.ndarray) -> int:
    """Minimum weight over all nonzero codewords of a binary generator matrix."""
    A = as_symbols(generator)
    k = A.shape[0]
    if 2 ** k > LINEAR_ENUMERATION_LIMIT:
        raise EnumerationLimitError(f"2^{k} messages exceed {LINEAR_ENUMERATION_LIMIT}")
    messages = ((np.arange(1, 2 ** k)[:, np.newaxis] >> np.arange(k - 1, -1, -1)) & 1)
    codewords = (messages @ A) % 2
    return int(codewords.sum(axis=1).min())


def gv_sample(
    n: int,
    k: int,
    d: int,
    max_attempts: int,
    seed: Optional[int] = None,
    slack: float = DEFAULT_SLACK,
    rng: Optional[np.random.Generator] = None,
) -> RandomLinearCode:
    """
    Sample uniform k x n binary matrices until one generates a code of
    minimum distance >= d.

    Raises:
        ParameterError: k/n above 1 - H_2(d/n) - slack
        SamplingExhausted: no sample passed within max_attempts
    """
    if not 1 <= k <= n or not 1 <= d <= n:
        raise ParameterError(f"invalid parameters n={n}, k={k}, d={d}")
    bound = gv_rate_bound(n, d, slack)
    if k / n > bound:
        logger.warning("rate %.4f above GV target %.4f", k / n, bound)
        raise ParameterError(f"rate {k}/{n} exceeds 1 - H2({d}/{n}) - {slack} = {bound:.4f}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    gf2 = get_field(2)

    for attempt in range(1, max_attempts + 1):
        A = rng.integers(0, 2, size=(k, n))
        if minimum_weight(A) >= d:
            logger.debug("gv sample accepted after %d attempts", attempt)
            return RandomLinearCode(gf2(A), d=d, seed=seed, attempts=attempt)
    raise SamplingExhausted(f"no [{n}, {k}, >={d}] code in {max_attempts} attempts", attempts=max_attempts)


def gv_failure_bound(n: int, k: int, d: int) -> float:
    """Union bound on one attempt failing: (2^k - 1) Pr[Bin(n, 1/2) < d]."""
    return min(1.0, (2 ** k - 1) * float(binom.cdf(d - 1, n, 0.5)))


def gv_entropy_bound(n: int, k: int, d: int) -> float:
    """The looser closed form 2^k 2^-n 2^(n H_2(d/n)), for d <= n/2."""
    return min(1.0, 2.0 ** (k - n + n * binary_entropy(d / n)))


def gv_single_row_success(n: int, d: int) -> float:
    """k = 1: the single row must have weight >= d."""
    return float(binom.sf(d - 1, n, 0.5))


# ========================================
# BRUTE-FORCE DECODING
# ========================================

def codebook(code) -> tuple:
    """(messages, codewords) of a small code, messages in lexicographic order."""
    messages = all_messages(code.field, code.params.k)
    generator = getattr(code, "generator", None)
    if generator is not None:
        codewords = as_symbols(messages @ generator)
    else:
        codewords = np.stack([as_symbols(code.encode(m)) for m in messages])
    return messages, codewords


def brute_force_decode(code, y) -> galois.FieldArray:
    """
    Nearest codeword's message; ties go to the lexicographically first message.
    """
    symbols = as_symbols(getattr(y, "symbols", y))
    require_length(symbols, code.params.n)
    messages, codewords = codebook(code)
    distances = np.count_nonzero(codewords != symbols[np.newaxis, :], axis=1)
    return messages[int(np.argmin(distances))]
