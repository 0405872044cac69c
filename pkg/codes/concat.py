"""
Concatenated Codes - Coding Lab
Outer code over GF(q^k) composed with an inner [n, k, d]_q code.

Symbol embedding: an element of GF(q^k) maps to the coefficient vector of its
polynomial representation over GF(q), highest power first (galois
``FieldArray.vector`` order). The inner field must be prime.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Callable, List, Optional, Sequence

import galois
import numpy as np

from codes.core import CodeParams, as_symbols, hamming_distance, require_length
from codes.gv import brute_force_decode, codebook
from codes.reed_solomon import bw_decode
from errors import EnumerationLimitError, ParameterError, ShapeError
from fields.field import Field

logger = logging.getLogger(__name__)

CROSS_PRODUCT_LIMIT = 100_000

InnerDecoder = Callable[[np.ndarray], Optional[galois.FieldArray]]
OuterDecoder = Callable[[galois.FieldArray], Optional[galois.FieldArray]]
InnerListDecoder = Callable[[np.ndarray], List[galois.FieldArray]]
OuterListDecoder = Callable[[galois.FieldArray], List[galois.FieldArray]]


class ConcatCode:
    """
    C_o composed with C_i: an [nN, kK, dD]_q code when C_o is [N, K, D]_Q,
    C_i is [n, k, d]_q and Q = q^k.
    """

    def __init__(self, outer, inner):
        Q, q, k = outer.params.q, inner.params.q, inner.params.k
        if Q != q ** k:
            raise ParameterError(f"outer alphabet {Q} must equal q^k = {q}^{k}")
        if inner.field.kind != "prime":
            raise ParameterError("inner code must be over a prime field")
        self.outer = outer
        self.inner = inner
        o, i = outer.params, inner.params
        self._params = CodeParams(n=i.n * o.n, k=i.k * o.k, d=i.d * o.d, q=q)

    @property
    def params(self) -> CodeParams:
        return self._params

    @property
    def field(self) -> Field:
        return self.inner.field

    @property
    def blocks(self) -> int:
        return self.outer.params.n

    def symbols_to_vectors(self, symbols: galois.FieldArray) -> galois.FieldArray:
        """Outer symbols -> rows of k inner-field symbols."""
        symbols = symbols if self.outer.field.contains(symbols) else self.outer.field(symbols)
        return self.inner.field(as_symbols(symbols.vector()).reshape(-1, self.inner.params.k))

    def vectors_to_symbols(self, vectors) -> galois.FieldArray:
        """Rows of k inner-field symbols -> outer symbols."""
        rows = as_symbols(vectors).reshape(-1, self.inner.params.k)
        return self.outer.field.gf.Vector(self.inner.field.gf(rows))

    def encode(self, message) -> galois.FieldArray:
        return concat_encode(self, message)


def concat_encode(cc: ConcatCode, message) -> galois.FieldArray:
    """Outer-encode, then inner-encode each outer symbol; block i = C_i(C_o(X)_i)."""
    k, K = cc.inner.params.k, cc.outer.params.k
    if as_symbols(message).size != k * K:
        raise ShapeError(f"message must have kK = {k * K} symbols")
    outer_message = cc.vectors_to_symbols(message)
    outer_word = cc.outer.encode(outer_message)
    blocks = [as_symbols(cc.inner.encode(row)) for row in cc.symbols_to_vectors(outer_word)]
    return cc.inner.field(np.concatenate(blocks))


def _blocks(cc: ConcatCode, y) -> np.ndarray:
    symbols = as_symbols(getattr(y, "symbols", y))
    require_length(symbols, cc.params.n)
    return symbols.reshape(cc.blocks, cc.inner.params.n)


@dataclass
class ConcatDecodeResult:
    success: bool
    message: Optional[galois.FieldArray] = None
    failed_blocks: List[int] = dataclass_field(default_factory=list)
    error: Optional[str] = None


def concat_decode_naive(
    cc: ConcatCode,
    y,
    inner_decoder: InnerDecoder,
    outer_decoder: OuterDecoder,
) -> ConcatDecodeResult:
    """
    Decode every block with the inner decoder, then the outer word.

    A failed inner decode contributes the zero symbol.
    """
    blocks = _blocks(cc, y)
    k = cc.inner.params.k
    rows, failed = [], []
    for index, block in enumerate(blocks):
        decoded = inner_decoder(block)
        if decoded is None:
            failed.append(index)
            decoded = np.zeros(k, dtype=np.int64)
        rows.append(as_symbols(decoded))
    outer_word = cc.vectors_to_symbols(np.stack(rows))
    outer_message = outer_decoder(outer_word)
    if outer_message is None:
        return ConcatDecodeResult(success=False, failed_blocks=failed, error="outer decoder failed")
    message = cc.inner.field(as_symbols(cc.symbols_to_vectors(outer_message)).ravel())
    return ConcatDecodeResult(success=True, message=message, failed_blocks=failed)


# ========================================
# LIST DECODING
# ========================================

def brute_force_list_decode(code, y, min_agreement: int) -> List[galois.FieldArray]:
    """Every message whose codeword agrees with y on >= min_agreement positions."""
    symbols = as_symbols(getattr(y, "symbols", y))
    require_length(symbols, code.params.n)
    messages, codewords = codebook(code)
    hits = np.count_nonzero(codewords == symbols[np.newaxis, :], axis=1)
    return [messages[i] for i in np.flatnonzero(hits >= min_agreement)]


@dataclass
class ConcatListResult:
    """
    Attributes:
        messages: Distinct kK-symbol messages, sorted
        inner_lists: Outer-symbol candidates per block
        words_tried: Outer words handed to the outer list decoder
        variant: "randomized" or "exhaustive"
    """

    messages: List[tuple] = dataclass_field(default_factory=list)
    inner_lists: List[List[int]] = dataclass_field(default_factory=list)
    words_tried: int = 0
    variant: str = "randomized"

    def __contains__(self, message) -> bool:
        return tuple(int(s) for s in as_symbols(message)) in self.messages


def inner_symbol_lists(cc: ConcatCode, y, inner_list_decoder: InnerListDecoder) -> List[List[int]]:
    """Per block, the outer symbols whose inner codewords the inner list decoder returns."""
    lists = []
    for block in _blocks(cc, y):
        found = inner_list_decoder(block)
        symbols = sorted({int(s) for s in as_symbols(cc.vectors_to_symbols(np.stack(found)))}) if found else []
        lists.append(symbols)
    return lists


def concat_list_decode(
    cc: ConcatCode,
    y,
    inner_list_decoder: InnerListDecoder,
    outer_list_decoder: OuterListDecoder,
    repetitions: int,
    rng: Optional[np.random.Generator] = None,
    variant: str = "randomized",
) -> ConcatListResult:
    """
    Combine inner and outer list decoders.

    randomized: ``repetitions`` times, pick one symbol per block uniformly
    from its inner list and list-decode the resulting outer word.
    exhaustive: list-decode every outer word in the cross product of the
    inner lists (at most 10^5 words).

    Blocks with an empty inner list contribute the zero symbol in both variants.
    """
    lists = inner_symbol_lists(cc, y, inner_list_decoder)
    choices = [symbols or [0] for symbols in lists]

    if variant == "exhaustive":
        total = int(np.prod([len(c) for c in choices], dtype=np.float64))
        if total > CROSS_PRODUCT_LIMIT:
            raise EnumerationLimitError(f"cross product of {total} outer words exceeds {CROSS_PRODUCT_LIMIT}")
        words = product(*choices)
    elif variant == "randomized":
        if rng is None:
            raise ParameterError("randomized combining needs a generator")
        words = ([c[int(rng.integers(0, len(c)))] for c in choices] for _ in range(repetitions))
    else:
        raise ParameterError(f"unknown variant {variant!r}")

    found = set()
    tried = 0
    for word in words:
        tried += 1
        for outer_message in outer_list_decoder(cc.outer.field(list(word))):
            message = as_symbols(cc.symbols_to_vectors(outer_message)).ravel()
            found.add(tuple(int(s) for s in message))
    logger.debug("concat list decode (%s): %d outer words, %d messages", variant, tried, len(found))
    return ConcatListResult(sorted(found), lists, tried, variant)


# ========================================
# COMPONENT DECODER ADAPTERS
# ========================================

def bounded_decoder(code, radius: int) -> InnerDecoder:
    """Nearest-codeword decoding that gives up beyond ``radius`` errors."""

    def decode(block) -> Optional[galois.FieldArray]:
        message = brute_force_decode(code, block)
        if hamming_distance(code.encode(message), block) > radius:
            return None
        return message

    return decode


def bw_decoder(code, e: int) -> OuterDecoder:
    """Berlekamp-Welch on an RS outer code; failure becomes None."""

    def decode(word) -> Optional[galois.FieldArray]:
        result = bw_decode(code, word, e)
        return result.message if result.success else None

    return decode


def agreement_list_decoder(code, min_agreement: int) -> InnerListDecoder:
    """Exhaustive list decoding: every message with >= min_agreement agreeing positions."""
    return lambda word: brute_force_list_decode(code, word, min_agreement)


def expected_sampled_agreement(lists: Sequence[Sequence[int]], outer_codeword) -> float:
    """Expected agreement of a uniformly sampled outer word with the given outer codeword."""
    truth = as_symbols(outer_codeword)
    total = 0.0
    for symbols, correct in zip(lists, truth):
        if int(correct) in symbols:
            total += 1.0 / len(symbols)
    return total
