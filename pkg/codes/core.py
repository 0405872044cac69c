"""
Code Core - Coding Lab
Code parameters, Hamming metrics, bound validators and generic linear codes
shared by every code family.
"""

import logging
import math
from itertools import product
from typing import Callable, NamedTuple, Optional, Protocol, Union, runtime_checkable

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, model_validator

from errors import EnumerationLimitError, ShapeError
from experiments.settings import ENUMERATION_LIMIT
from fields.field import Field, get_field

logger = logging.getLogger(__name__)

LINEAR_ENUMERATION_LIMIT = ENUMERATION_LIMIT
# Pairwise comparison: (q^k)^2 codeword pairs stay within the same budget.
NONLINEAR_ENUMERATION_LIMIT = math.isqrt(ENUMERATION_LIMIT)
PLOTKIN_TOLERANCE = 1e-12


# ========================================
# PARAMETERS AND SPECS
# ========================================

class RawParams(NamedTuple):
    """Unvalidated [n, k, d]_q tuple, for asking whether a bound holds."""

    n: int
    k: int
    d: int
    q: int


def check_singleton(params: Union["CodeParams", RawParams]) -> bool:
    """k <= n - d + 1."""
    return params.k <= params.n - params.d + 1


def check_plotkin(params: Union["CodeParams", RawParams]) -> bool:
    """k <= n - (q / (q - 1)) d + log_q n."""
    bound = params.n - params.q / (params.q - 1) * params.d + math.log(params.n, params.q)
    return params.k <= bound + PLOTKIN_TOLERANCE


class CodeParams(BaseModel):
    """
    The [n, k, d]_q tuple every code exposes.

    ``d`` is a lower bound on the minimum distance (exact for the algebraic
    families).
    """

    model_config = ConfigDict(frozen=True)

    n: int = ModelField(ge=1)
    k: int = ModelField(ge=1)
    d: int = ModelField(ge=1)
    q: int = ModelField(ge=2)

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.k > self.n:
            raise ValueError(f"k={self.k} exceeds n={self.n}")
        if self.d > self.n:
            raise ValueError(f"d={self.d} exceeds n={self.n}")
        if not check_singleton(self):
            raise ValueError(f"[{self.n}, {self.k}, {self.d}]_{self.q} violates the Singleton bound")
        return self

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def relative_distance(self) -> float:
        return self.d / self.n

    def __str__(self) -> str:
        return f"[{self.n}, {self.k}, {self.d}]_{self.q}"


class LocalDecoderSpec(BaseModel):
    """
    (query complexity, tolerated error fraction, success probability) of a
    local decoder, with an optional smoothness constant c: each query hits any
    fixed position with probability at most c / n.
    """

    model_config = ConfigDict(frozen=True)

    query_complexity: int = ModelField(ge=1)
    delta: float = ModelField(gt=0, lt=1)
    success_probability: float = ModelField(gt=0, le=1)
    smoothness: Optional[float] = ModelField(default=None, ge=1)

    @property
    def is_meaningful(self) -> bool:
        return self.success_probability > 0.5

    @property
    def perfectly_smooth(self) -> bool:
        return self.smoothness == 1


class LTCSpec(BaseModel):
    """Local tester: accepts codewords, rejects delta-far words with probability >= soundness."""

    model_config = ConfigDict(frozen=True)

    query_complexity: int = ModelField(ge=1)
    delta: float = ModelField(gt=0, lt=1)
    soundness: float = ModelField(gt=0, le=1)


@runtime_checkable
class Code(Protocol):
    """Anything with parameters, a field and an encoder."""

    @property
    def params(self) -> CodeParams: ...

    @property
    def field(self) -> Field: ...

    def encode(self, message) -> np.ndarray: ...


# ========================================
# HAMMING METRICS
# ========================================

def as_symbols(word) -> np.ndarray:
    """Integer view of a word (field array, bit array or list)."""
    array = np.asarray(word)
    if isinstance(array, galois.FieldArray):
        array = array.view(np.ndarray)
    return array.astype(np.int64, copy=False)


def hamming_distance(a, b) -> int:
    """Number of positions where a and b differ."""
    a, b = as_symbols(a), as_symbols(b)
    if a.shape != b.shape:
        raise ShapeError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def weight(a) -> int:
    """Number of nonzero positions."""
    return int(np.count_nonzero(as_symbols(a)))


def agreement(a, b) -> int:
    """Number of positions where a and b agree."""
    return as_symbols(a).size - hamming_distance(a, b)


# ========================================
# EXHAUSTIVE ENUMERATION
# ========================================

def all_messages(field: Field, k: int, limit: int = LINEAR_ENUMERATION_LIMIT) -> galois.FieldArray:
    """Every length-k message over the field, in lexicographic order."""
    count = field.order ** k
    if count > limit:
        raise EnumerationLimitError(f"{field.order}^{k} messages exceed limit {limit}")
    grid = np.array(list(product(range(field.order), repeat=k)), dtype=np.int64).reshape(count, k)
    return field(grid)


def min_distance_exhaustive(
    encode: Callable,
    params: CodeParams,
    field: Optional[Field] = None,
    linear: bool = True,
) -> int:
    """
    Exact minimum distance by enumerating messages.

    Linear codes use the minimum nonzero-codeword weight (q^k within the
    enumeration limit, 10^6 by default); nonlinear codes compare all pairs
    (q^k within its square root).
    """
    field = field or get_field(params.q)
    limit = LINEAR_ENUMERATION_LIMIT if linear else NONLINEAR_ENUMERATION_LIMIT
    messages = all_messages(field, params.k, limit=limit)
    codewords = np.stack([as_symbols(encode(msg)) for msg in messages])

    if linear:
        weights = np.count_nonzero(codewords[1:], axis=1)
        return int(weights.min()) if weights.size else params.n

    best = params.n
    for i in range(len(codewords) - 1):
        distances = np.count_nonzero(codewords[i + 1:] != codewords[i], axis=1)
        best = min(best, int(distances.min()))
    return best


# ========================================
# GENERIC LINEAR CODES
# ========================================

class LinearCode:
    """
    Code given by a k x n generator matrix: C(x) = x G.

    If ``d`` is not supplied it is computed exhaustively.
    """

    def __init__(self, field: Field, generator: galois.FieldArray, d: Optional[int] = None, name: str = "linear"):
        if generator.ndim != 2:
            raise ShapeError("generator must be a k x n matrix")
        self._field = field
        self.generator = generator if field.contains(generator) else field(generator)
        self.name = name
        k, n = self.generator.shape
        if d is None:
            provisional = CodeParams.model_construct(n=n, k=k, d=1, q=field.order)
            d = min_distance_exhaustive(self.encode, provisional, field)
        self._params = CodeParams(n=n, k=k, d=d, q=field.order)

    @property
    def params(self) -> CodeParams:
        return self._params

    @property
    def field(self) -> Field:
        return self._field

    def encode(self, message) -> galois.FieldArray:
        message = message if self._field.contains(message) else self._field(message)
        if message.shape[-1] != self.generator.shape[0]:
            raise ShapeError(f"message length {message.shape[-1]} != k={self.generator.shape[0]}")
        return message @ self.generator

    def encode_many(self, messages) -> galois.FieldArray:
        return self.encode(messages)

    @classmethod
    def generalized_hadamard(cls, field: Field, k: int) -> "LinearCode":
        """All inner products <x, a> for a in F^k: an [q^k, k, (q-1) q^(k-1)]_q code."""
        points = all_messages(field, k)
        d = (field.order - 1) * field.order ** (k - 1)
        return cls(field, points.T, d=d, name=f"hadamard-gf{field.order}")

    def __repr__(self) -> str:
        return f"LinearCode({self.name}, {self._params})"


class RepetitionCode(LinearCode):
    """The [n, 1, n]_q repetition code."""

    def __init__(self, field: Field, n: int):
        super().__init__(field, field.gf.Ones((1, n)), d=n, name="repetition")


def require_length(word, n: int) -> None:
    if as_symbols(word).shape[-1] != n:
        raise ShapeError(f"word length {as_symbols(word).shape[-1]} != n={n}")
