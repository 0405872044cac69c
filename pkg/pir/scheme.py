"""
Private Information Retrieval - Coding Lab
One-round multi-server PIR built mechanically from a perfectly smooth local
decoder: the user draws the decoder's randomness, sends query j to server j,
each server answers with one codeword symbol, and the user finishes decoding.

Servers are deterministic in-process functions. Each retrieval returns a
Transcript recording exactly what every server saw and answered.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Protocol, Sequence, runtime_checkable

import numpy as np
from pydantic import BaseModel, ConfigDict

from codes.core import as_symbols
from codes.hadamard import had_encode, unit_vector
from codes.polycode import indicator_point, multilinear_encode, subset_index
from errors import EnumerationLimitError, NotSmoothError, ParameterError
from fields.field import Field
from fields.polynomials import grid_points, lagrange_basis_matrix

logger = logging.getLogger(__name__)

RANDOMNESS_LIMIT = 1_000_000
DEFAULT_AUDIT_SAMPLES = 20_000
AUDIT_CONFIDENCE = 0.95


# ========================================
# SMOOTH DECODERS
# ========================================

@runtime_checkable
class SmoothDecoder(Protocol):
    """
    Non-adaptive local decoder whose random string is an integer in
    [0, randomness_size).

    query_table(i, rs) gives the (len(rs), servers) positions queried for
    message index i; recover_many turns the matching answers back into x_i.
    """

    name: str
    k: int
    n: int
    servers: int
    answer_bits: int
    perfectly_smooth: bool

    def randomness_size(self) -> int: ...

    def encode(self, x) -> np.ndarray: ...

    def query_table(self, i: int, rs: np.ndarray) -> np.ndarray: ...

    def recover_many(self, i: int, rs: np.ndarray, answers: np.ndarray) -> np.ndarray: ...


class HadamardSmoothDecoder:
    """Two queries a and a xor e_i into H(x); x_i is the xor of the answers."""

    perfectly_smooth = True
    servers = 2
    answer_bits = 1

    def __init__(self, k: int):
        self.k = k
        self.n = 1 << k
        self.name = f"hadamard-k{k}"

    def randomness_size(self) -> int:
        return self.n

    def encode(self, x) -> np.ndarray:
        return had_encode(as_symbols(x))

    def query_table(self, i: int, rs: np.ndarray) -> np.ndarray:
        a = np.asarray(rs, dtype=np.int64)
        return np.stack([a, a ^ unit_vector(self.k, i)], axis=1)

    def recover_many(self, i: int, rs: np.ndarray, answers: np.ndarray) -> np.ndarray:
        answers = np.asarray(answers, dtype=np.int64)
        return answers[:, 0] ^ answers[:, 1]


class MultilinearSmoothDecoder:
    """
    Line decoder for the degree-d multilinear code over F^m.

    Random string r picks direction b (grid point r); server j receives
    e_S + z_j b for z_j the j-th nonzero element, j = 1..d+1. Answers are
    interpolated at z = 0, which is p(e_S) = x_S.
    """

    perfectly_smooth = True

    def __init__(self, field: Field, m: int, d: int):
        if field.order < d + 2:
            raise ParameterError(f"need d + 1 = {d + 1} distinct nonzero line parameters")
        self.field = field
        self.m = m
        self.d = d
        self.subsets = subset_index(m, d)
        self.k = len(self.subsets)
        self.n = field.order ** m
        self.servers = d + 1
        self.answer_bits = field.bits_per_symbol
        self.name = f"multilinear-gf{field.order}-m{m}-d{d}"
        self._zs = field(np.arange(1, d + 2))
        self._weights = lagrange_basis_matrix(self._zs, field([0]))[0]
        self._place = field.order ** np.arange(m - 1, -1, -1, dtype=np.int64)
        self._directions = grid_points(field.elements(), m)

    def randomness_size(self) -> int:
        return self.n

    def encode(self, x) -> np.ndarray:
        return as_symbols(multilinear_encode(self.m, self.d, x, self.field))

    def query_table(self, i: int, rs: np.ndarray) -> np.ndarray:
        base = indicator_point(self.field, self.m, self.subsets[i])
        b = self._directions[np.asarray(rs, dtype=np.int64)]                      # (R, m)
        columns = []
        for z in self._zs:
            points = base[np.newaxis, :] + z * b
            columns.append(as_symbols(points) @ self._place)
        return np.stack(columns, axis=1)

    def recover_many(self, i: int, rs: np.ndarray, answers: np.ndarray) -> np.ndarray:
        values = self.field(np.asarray(answers, dtype=np.int64)) @ self._weights
        return as_symbols(values)


class BrokenDecoder(HadamardSmoothDecoder):
    """
    Hadamard decoder that reads x_i straight from position e_i on server 0.

    Still recovers correctly and still claims to be smooth, but server 0
    learns i. Used to show that the privacy audit catches such a scheme.
    """

    def __init__(self, k: int):
        super().__init__(k)
        self.name = f"broken-hadamard-k{k}"

    def query_table(self, i: int, rs: np.ndarray) -> np.ndarray:
        a = np.asarray(rs, dtype=np.int64)
        return np.stack([np.full_like(a, unit_vector(self.k, i)), a], axis=1)

    def recover_many(self, i: int, rs: np.ndarray, answers: np.ndarray) -> np.ndarray:
        return np.asarray(answers, dtype=np.int64)[:, 0]


# ========================================
# SCHEME
# ========================================

@dataclass(frozen=True)
class PIRScheme:
    """
    Attributes:
        decoder: Underlying smooth decoder (None for the trivial scheme)
        servers: Number of servers
        answer_bits: Bits per server answer
        query_bits: Bits per server query, ceil(log2 n)
    """

    name: str
    decoder: Optional[SmoothDecoder]
    servers: int
    answer_bits: int
    query_bits: int
    k: int


@dataclass(frozen=True)
class Server:
    """Holds C(x) and answers a position with its symbol."""

    index: int
    codeword: np.ndarray

    def answer(self, position: int) -> int:
        return int(self.codeword[int(position)])


def pir_from_smooth_decoder(decoder: SmoothDecoder) -> PIRScheme:
    """
    One server per decoder query.

    Raises:
        NotSmoothError: decoder not marked perfectly smooth
    """
    if not getattr(decoder, "perfectly_smooth", False):
        logger.warning("refusing PIR construction from %s", getattr(decoder, "name", decoder))
        raise NotSmoothError("PIR needs a perfectly smooth decoder")
    return PIRScheme(
        name=decoder.name,
        decoder=decoder,
        servers=decoder.servers,
        answer_bits=decoder.answer_bits,
        query_bits=math.ceil(math.log2(decoder.n)),
        k=decoder.k,
    )


def trivial_scheme(k: int) -> PIRScheme:
    """One server that sends the whole database."""
    return PIRScheme(name=f"trivial-k{k}", decoder=None, servers=1, answer_bits=k, query_bits=0, k=k)


def communication_cost(scheme: PIRScheme) -> int:
    """servers * (answer bits + query bits)."""
    return scheme.servers * (scheme.answer_bits + scheme.query_bits)


def _require_decoder(scheme: PIRScheme) -> SmoothDecoder:
    if scheme.decoder is None:
        raise ParameterError(f"{scheme.name} has no decoder to simulate")
    return scheme.decoder


def _check_index(scheme: PIRScheme, i: int) -> None:
    if not 0 <= i < scheme.k:
        raise ParameterError(f"index {i} out of range for k={scheme.k}")


# ========================================
# RETRIEVAL
# ========================================

class ServerExchange(BaseModel):
    model_config = ConfigDict(frozen=True)

    server: int
    query: int
    answer: int


class Transcript(BaseModel):
    """Everything exchanged in one retrieval; exported as JSON by the CLI."""

    model_config = ConfigDict(frozen=True)

    scheme: str
    index: int
    randomness: int
    exchanges: List[ServerExchange]
    output: int

    def to_json(self) -> str:
        return self.model_dump_json()


def retrieve(scheme: PIRScheme, x, i: int, rng: np.random.Generator) -> Transcript:
    """Run one retrieval of x_i against freshly built servers."""
    decoder = _require_decoder(scheme)
    _check_index(scheme, i)
    codeword = decoder.encode(x)
    servers = [Server(t, codeword) for t in range(scheme.servers)]

    r = int(rng.integers(0, decoder.randomness_size()))
    rs = np.array([r], dtype=np.int64)
    queries = decoder.query_table(i, rs)[0]
    answers = [server.answer(j) for server, j in zip(servers, queries)]
    output = int(decoder.recover_many(i, rs, np.array([answers]))[0])

    exchanges = [ServerExchange(server=t, query=int(j), answer=a) for t, (j, a) in enumerate(zip(queries, answers))]
    return Transcript(scheme=scheme.name, index=i, randomness=r, exchanges=exchanges, output=output)


def verify_recovery(scheme: PIRScheme, x, i: int) -> bool:
    """True when every random string recovers x_i."""
    decoder = _require_decoder(scheme)
    _check_index(scheme, i)
    size = decoder.randomness_size()
    if size > RANDOMNESS_LIMIT:
        raise EnumerationLimitError(f"randomness space {size} exceeds {RANDOMNESS_LIMIT}")
    codeword = decoder.encode(x)
    rs = np.arange(size, dtype=np.int64)
    answers = codeword[decoder.query_table(i, rs)]
    recovered = decoder.recover_many(i, rs, answers)
    return bool(np.all(recovered == int(as_symbols(x)[i])))


# ========================================
# PRIVACY AUDIT
# ========================================

@dataclass
class PrivacyAudit:
    """
    Statistical distance between server t's query distributions for i and j.

    ``distance`` is exact when ``exact`` is set; otherwise it is a Monte Carlo
    estimate with a confidence interval.
    """

    i: int
    j: int
    server: int
    distance: Fraction
    exact: bool
    samples: int
    ci_low: float
    ci_high: float

    @property
    def value(self) -> float:
        return float(self.distance)


def _l1_deviation(support: int, samples: int, confidence: float) -> float:
    """With probability >= confidence the empirical L1 error is below this."""
    return math.sqrt(2 * (support * math.log(2) + math.log(2 / (1 - confidence))) / samples)


def privacy_statistical_distance(
    scheme: PIRScheme,
    i: int,
    j: int,
    t: int,
    limit: int = RANDOMNESS_LIMIT,
    samples: int = DEFAULT_AUDIT_SAMPLES,
    rng: Optional[np.random.Generator] = None,
) -> PrivacyAudit:
    """
    Exact distance by enumerating the decoder's randomness, or a flagged
    Monte Carlo estimate when the randomness space exceeds ``limit``.
    """
    decoder = _require_decoder(scheme)
    _check_index(scheme, i)
    _check_index(scheme, j)
    if not 0 <= t < scheme.servers:
        raise ParameterError(f"server {t} out of range for {scheme.servers} servers")

    size = decoder.randomness_size()
    if size <= limit:
        rs = np.arange(size, dtype=np.int64)
        counts_i = np.bincount(decoder.query_table(i, rs)[:, t], minlength=decoder.n)
        counts_j = np.bincount(decoder.query_table(j, rs)[:, t], minlength=decoder.n)
        distance = Fraction(int(np.abs(counts_i - counts_j).sum()), 2 * size)
        return PrivacyAudit(i, j, t, distance, True, size, float(distance), float(distance))

    rng = rng if rng is not None else np.random.default_rng()
    logger.info("randomness space %d above %d; estimating privacy by sampling", size, limit)
    draws_i = rng.integers(0, size, size=samples, dtype=np.int64)
    draws_j = rng.integers(0, size, size=samples, dtype=np.int64)
    freq_i = np.bincount(decoder.query_table(i, draws_i)[:, t], minlength=decoder.n)
    freq_j = np.bincount(decoder.query_table(j, draws_j)[:, t], minlength=decoder.n)
    distance = Fraction(int(np.abs(freq_i - freq_j).sum()), 2 * samples)
    width = _l1_deviation(decoder.n, samples, AUDIT_CONFIDENCE)
    low = max(0.0, float(distance) - width)
    high = min(1.0, float(distance) + width)
    return PrivacyAudit(i, j, t, distance, False, samples, low, high)


def query_marginal(scheme: PIRScheme, i: int, t: int) -> np.ndarray:
    """Exact distribution of server t's query for index i, as counts over positions."""
    decoder = _require_decoder(scheme)
    rs = np.arange(decoder.randomness_size(), dtype=np.int64)
    return np.bincount(decoder.query_table(i, rs)[:, t], minlength=decoder.n)


# ========================================
# REFERENCE ROWS
# ========================================

@dataclass(frozen=True)
class ReferenceRow:
    """A known scheme listed for comparison; ``implemented`` marks the ones built here."""

    name: str
    servers: str
    communication: str
    implemented: bool


def reference_rows(k: int) -> List[ReferenceRow]:
    """Comparison table printed by the PIR demo for a k-bit database."""
    hadamard = communication_cost(pir_from_smooth_decoder(HadamardSmoothDecoder(k)))
    return [
        ReferenceRow("trivial", "1", str(k), True),
        ReferenceRow("hadamard", "2", str(hadamard), True),
        ReferenceRow("multilinear", "d+1", "(d+1)(log|F| + m log|F|)", True),
        ReferenceRow("bikr", "q", "n^(O(log log q / (q log q)))", False),
    ]


def recovery_rate(scheme: PIRScheme, x, indices: Sequence[int]) -> float:
    """Fraction of the given indices recovered on every random string."""
    if not indices:
        return 1.0
    return sum(verify_recovery(scheme, x, i) for i in indices) / len(indices)
