"""
Channel Models - Coding Lab
Binary-symmetric-style and adversarial noise on codewords, with the ground
truth of every corruption recorded for test assertions.
"""

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple, Union

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField

from codes.core import as_symbols
from errors import ParameterError

logger = logging.getLogger(__name__)


class BSC(BaseModel):
    """Each symbol is replaced independently with probability ``crossover``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["bsc"] = "bsc"
    crossover: float = ModelField(ge=0, lt=1)


class Adversarial(BaseModel):
    """
    Exactly min(errors, n) symbols are replaced.

    Strategies:
        random: uniformly random distinct positions
        positions: the caller's ``positions``, in order
        all: the leading positions; with errors >= n that is every position
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["adversarial"] = "adversarial"
    errors: int = ModelField(ge=0)
    strategy: Literal["random", "positions", "all"] = "random"
    positions: Optional[Tuple[int, ...]] = None


Channel = Union[BSC, Adversarial]


@dataclass(frozen=True)
class ReceivedWord:
    """
    A channel output.

    ``error_positions`` is ground truth for tests; decoders never read it.
    """

    symbols: np.ndarray
    error_positions: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return int(np.asarray(self.symbols).shape[-1])


def child_rng(master_seed: int, index: int) -> np.random.Generator:
    """Generator for trial ``index`` of a run seeded with ``master_seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(index)]))


def as_rng(seed_or_rng: Union[int, np.random.Generator, None]) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def corrupt_positions(symbols: np.ndarray, positions: np.ndarray, q: int, rng: np.random.Generator) -> np.ndarray:
    """Replace each listed symbol by a uniformly random different symbol."""
    out = symbols.copy()
    if len(positions):
        shift = rng.integers(1, q, size=len(positions))
        out[positions] = (out[positions] + shift) % q
    return out


def transmit(channel: Channel, codeword, q: int, rng) -> ReceivedWord:
    """
    Send ``codeword`` (alphabet size q) through the channel.

    Args:
        channel: BSC or Adversarial configuration
        codeword: Field array or integer symbol vector
        q: Alphabet size
        rng: Generator or integer seed; output is a pure function of it

    Returns:
        ReceivedWord in the same representation as the input
    """
    rng = as_rng(rng)
    symbols = as_symbols(codeword).copy()
    n = symbols.shape[-1]

    if isinstance(channel, BSC):
        hits = rng.random(n) < channel.crossover
        positions = np.flatnonzero(hits)
    else:
        count = min(channel.errors, n)
        if channel.strategy == "random":
            positions = np.sort(rng.choice(n, size=count, replace=False))
        elif channel.strategy == "all":
            positions = np.arange(count)
        else:
            supplied = list(channel.positions or ())
            if len(supplied) < count or len(set(supplied)) != len(supplied):
                raise ParameterError("positions strategy needs at least e distinct positions")
            if any(p < 0 or p >= n for p in supplied):
                raise ParameterError("corruption position out of range")
            positions = np.array(supplied[:count], dtype=np.int64)

    received = corrupt_positions(symbols, positions, q, rng)
    if isinstance(codeword, galois.FieldArray):
        received = type(codeword)(received)
    logger.debug("%s corrupted %d of %d symbols", channel.kind, len(positions), n)
    return ReceivedWord(received, tuple(int(p) for p in positions))
