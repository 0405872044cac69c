"""
Goldreich-Levin Local List Decoder - Coding Lab
Lists every a whose linear function L_a agrees with an oracle g on more than
1/2 + eps of the positions.

Structure of one call:
  1. draw seeds x_1..x_l and form x_S for every nonempty S
  2. for every guess b of (L_a(x_1), ..., L_a(x_l)), decode the corrected
     oracle g'(z) = majority_S [b_S xor g(z xor x_S)] with the amplified
     Hadamard decoder
  3. optionally keep only candidates whose estimated agreement beats 1/2 + eps/2

All guesses share one decoding plan, so the g-queries of step 2 are made
once and every guess is scored with a single matrix product.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, computed_field

from codes.hadamard import (
    BitOracle,
    full_decode_finish,
    full_decode_plan,
    full_decode_repetitions,
    int_to_bits,
    parity,
)
from errors import ParameterError

logger = logging.getLogger(__name__)

FILTER_SAMPLE_CONSTANT = 48


class GLConfig(BaseModel):
    """
    Parameters of one Goldreich-Levin run.

    Attributes:
        eps: Agreement slack, in (0, 1/2)
        c_l: Additive constant in l = ceil(2 log2(1/eps)) + c_l
        inner_delta: Error fraction the amplified decoder is sized for
        filter_candidates: Drop candidates whose agreement estimate is low
        estimate_agreement: Report agreement estimates for the survivors
    """

    model_config = ConfigDict(frozen=True)

    eps: float = ModelField(gt=0, lt=0.5)
    c_l: int = ModelField(default=2, ge=0)
    inner_delta: float = ModelField(default=0.125, gt=0, lt=0.25)
    filter_candidates: bool = True
    estimate_agreement: bool = True

    @computed_field
    @property
    def l(self) -> int:
        return math.ceil(2 * math.log2(1 / self.eps)) + self.c_l

    @computed_field
    @property
    def t_est(self) -> int:
        """Majority width: one vote per nonempty subset of the l seeds."""
        return (1 << self.l) - 1

    def filter_sample_size(self, list_length: int) -> int:
        return math.ceil(FILTER_SAMPLE_CONSTANT / self.eps ** 2 * math.log(8 * max(list_length, 1)))


@dataclass
class GLResult:
    """
    Output of gl_list_decode.

    Attributes:
        candidates: Distinct k-bit candidates as integers (bit convention of the Hadamard module)
        agreements: Estimated (or exact) agreement per candidate, if computed
        guesses: Number of seed-label guesses tried (2^l)
        queries: Oracle queries spent
        exact_filter: True when agreements are exact counts over every position
    """

    candidates: List[int] = dataclass_field(default_factory=list)
    agreements: List[float] = dataclass_field(default_factory=list)
    guesses: int = 0
    queries: int = 0
    exact_filter: bool = False

    def as_bits(self, k: int) -> List[np.ndarray]:
        return [int_to_bits(c, k) for c in self.candidates]

    def __contains__(self, item) -> bool:
        return int(item) in self.candidates

    def __len__(self) -> int:
        return len(self.candidates)


def subset_sums(xs: np.ndarray) -> np.ndarray:
    """
    x_S = xor of x_j over j in S, for every nonempty S subset of {0..l-1}.

    Entry S - 1 holds x_S, where bit j of S selects x_j.
    """
    xs = np.asarray(xs, dtype=np.int64)
    l = xs.size
    sums = np.zeros(1 << l, dtype=np.int64)
    for S in range(1, 1 << l):
        low = S & -S
        sums[S] = sums[S ^ low] ^ xs[low.bit_length() - 1]
    return sums[1:]


def _guess_labels(l: int) -> np.ndarray:
    """P[b, S-1] = b_S = parity(b & S), for every guess b and nonempty S."""
    guesses = np.arange(1 << l, dtype=np.uint64)
    subsets = np.arange(1, 1 << l, dtype=np.uint64)
    return parity(guesses[:, np.newaxis] & subsets[np.newaxis, :])


def gl_list_decode(
    g: BitOracle,
    eps: float,
    cfg: Optional[GLConfig] = None,
    rng: Optional[np.random.Generator] = None,
) -> GLResult:
    """
    List-decode the Hadamard code from oracle g.

    Args:
        g: Oracle on 2^k positions
        eps: Agreement slack in (0, 1/2); overrides cfg.eps
        cfg: Run parameters (defaults derived from eps)
        rng: Randomness source

    Returns:
        GLResult; with probability >= 3/4 it contains each a whose agreement
        with g exceeds 1/2 + eps, and it never has more than 2^l entries
    """
    if not 0 < eps < 0.5:
        raise ParameterError(f"eps must lie in (0, 1/2), got {eps}")
    cfg = cfg.model_copy(update={"eps": eps}) if cfg is not None else GLConfig(eps=eps)
    rng = rng if rng is not None else np.random.default_rng()
    before = g.queries
    k, l = g.k, cfg.l

    seeds = rng.integers(0, g.n, size=l, dtype=np.int64)
    shifts = subset_sums(seeds)                                   # (T,)
    labels = _guess_labels(l).astype(np.float64)                  # (G, T)

    repetitions = full_decode_repetitions(cfg.inner_delta, k)
    plan = full_decode_plan(k, repetitions, rng)                  # (k, r, 2)
    positions = plan.reshape(-1)

    # M[z, S] = g(z xor x_S)
    answers = g.query_many((positions[:, np.newaxis] ^ shifts[np.newaxis, :]).ravel())
    M = answers.reshape(positions.size, shifts.size).astype(np.float64)

    # votes[z, b] = #{S : b_S xor g(z xor x_S) = 1}
    votes = M.sum(axis=1)[:, np.newaxis] + labels.sum(axis=1)[np.newaxis, :] - 2.0 * (M @ labels.T)
    corrected = (2 * votes > shifts.size).astype(np.uint8)        # (Z, G); ties -> 0

    per_guess = corrected.T.reshape(labels.shape[0], *plan.shape)
    decoded_bits = full_decode_finish(per_guess)                  # (G, k)
    weights = (1 << np.arange(k - 1, -1, -1)).astype(np.int64)
    candidates = sorted(set((decoded_bits.astype(np.int64) @ weights).tolist()))

    result = GLResult(candidates=candidates, guesses=labels.shape[0])
    if cfg.filter_candidates or cfg.estimate_agreement:
        _score(result, g, cfg, rng)
    result.queries = g.queries - before
    logger.debug("gl: k=%d l=%d guesses=%d kept=%d queries=%d",
                 k, l, result.guesses, len(result.candidates), result.queries)
    return result


def _score(result: GLResult, g: BitOracle, cfg: GLConfig, rng: np.random.Generator) -> None:
    """Estimate agreement with g for each candidate and optionally filter."""
    if not result.candidates:
        return
    samples = cfg.filter_sample_size(len(result.candidates))
    if samples >= g.n:
        positions = np.arange(g.n, dtype=np.int64)
        result.exact_filter = True
    else:
        positions = rng.integers(0, g.n, size=samples, dtype=np.int64)
    values = g.query_many(positions)

    cands = np.array(result.candidates, dtype=np.uint64)
    predicted = parity(cands[:, np.newaxis] & positions.astype(np.uint64)[np.newaxis, :])
    agreements = (predicted == values[np.newaxis, :]).mean(axis=1)

    if cfg.filter_candidates:
        keep = agreements > 0.5 + cfg.eps / 2
        result.candidates = [c for c, kept in zip(result.candidates, keep) if kept]
        agreements = agreements[keep]
    result.agreements = agreements.tolist() if cfg.estimate_agreement else []
