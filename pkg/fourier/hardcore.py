"""
Hard-Core Predicates - Coding Lab
Toy RSA and EXP permutations, the accessibility map of multiplication codes,
and the reduction that turns a predictor for x . r into an inverter.

No one-wayness is claimed for the toy permutations; only the reduction's
correctness given a predictor is exercised. EXP leaks the least significant
bit of x (g^x is a quadratic residue iff x is even); nothing here uses it.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from codes.goldreich_levin import GLConfig, gl_list_decode
from codes.hadamard import BitOracle, int_to_bits, parity
from errors import ContractViolation, EnumerationLimitError, ParameterError

logger = logging.getLogger(__name__)

BIJECTION_CHECK_LIMIT = 1_000_000
ACCESSIBILITY_LIMIT = 4096

# Inversion runs GL once per target; without the additive constant in l
# each call tries 2^(2 log2(1/eps)) guesses.
HARDCORE_C_L = 0


def modpow(base, exponent: int, modulus: int) -> np.ndarray:
    """Elementwise base^exponent mod modulus (modulus < 2^31)."""
    b = np.asarray(base, dtype=np.int64) % modulus
    result = np.ones_like(b)
    e = int(exponent)
    while e:
        if e & 1:
            result = (result * b) % modulus
        b = (b * b) % modulus
        e >>= 1
    return result


# ========================================
# TOY PERMUTATIONS
# ========================================

class RSAPermutation:
    """x -> x^e mod N on Z_N, N = p q, gcd(e, phi(N)) = 1."""

    kind = "rsa"

    def __init__(self, p: int, q: int, e: int):
        if p == q or p < 2 or q < 2:
            raise ParameterError("need distinct primes p, q")
        phi = (p - 1) * (q - 1)
        if math.gcd(e, phi) != 1:
            raise ParameterError(f"e={e} is not coprime to phi(N)={phi}")
        self.p, self.q, self.e = p, q, e
        self.N = p * q
        self._d = pow(e, -1, phi)

    @property
    def domain_size(self) -> int:
        return self.N

    @property
    def bits(self) -> int:
        return max(1, (self.N - 1).bit_length())

    def forward(self, x) -> np.ndarray:
        return modpow(x, self.e, self.N)

    def inverse(self, y) -> np.ndarray:
        """Trapdoor, for test oracles only."""
        return modpow(y, self._d, self.N)

    def __repr__(self) -> str:
        return f"RSAPermutation(N={self.N}, e={self.e})"


class ExpPermutation:
    """
    x -> g^x mod p on Z_{p-1}; the image is Z_p^*.

    The low bit of x is not hard-core here: y is a quadratic residue exactly
    when x is even.
    """

    kind = "exp"

    def __init__(self, p: int, g: int):
        if p < 3:
            raise ParameterError("p must be an odd prime")
        self.p, self.g = p, g
        powers = np.ones(p - 1, dtype=np.int64)
        for x in range(1, p - 1):
            powers[x] = (powers[x - 1] * g) % p
        if np.unique(powers).size != p - 1:
            raise ParameterError(f"{g} does not generate Z_{p}^*")
        self._powers = powers
        self._log = np.zeros(p, dtype=np.int64)
        self._log[powers] = np.arange(p - 1)

    @property
    def domain_size(self) -> int:
        return self.p - 1

    @property
    def bits(self) -> int:
        return max(1, (self.p - 1).bit_length())

    def forward(self, x) -> np.ndarray:
        return self._powers[np.asarray(x, dtype=np.int64) % (self.p - 1)]

    def inverse(self, y) -> np.ndarray:
        """Discrete log by table, for test oracles only."""
        return self._log[np.asarray(y, dtype=np.int64)]

    def __repr__(self) -> str:
        return f"ExpPermutation(p={self.p}, g={self.g})"


ToyPermutation = Union[RSAPermutation, ExpPermutation]


def is_bijection(perm: ToyPermutation) -> bool:
    """Forward map is injective on its whole domain (domain <= 10^6)."""
    size = perm.domain_size
    if size > BIJECTION_CHECK_LIMIT:
        raise EnumerationLimitError(f"domain {size} exceeds {BIJECTION_CHECK_LIMIT}")
    return np.unique(perm.forward(np.arange(size))).size == size


# ========================================
# ACCESSIBILITY
# ========================================

def accessibility_map(perm: ToyPermutation, y, j):
    """
    f(x j mod |domain|) computed from y = f(x) without knowing x:
    RSA gives y j^e mod N, EXP gives y^j mod p.
    """
    if isinstance(perm, RSAPermutation):
        return (np.asarray(y, dtype=np.int64) * modpow(j, perm.e, perm.N)) % perm.N
    y = np.asarray(y, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    if j.ndim == 0:
        return modpow(y, int(j), perm.p)
    ys, js = np.broadcast_arrays(y, j)
    out = [pow(int(a), int(b), perm.p) for a, b in zip(ys.ravel(), js.ravel())]
    return np.array(out, dtype=np.int64).reshape(ys.shape)


def accessibility_distance(perm: ToyPermutation, units_only: bool = False) -> Fraction:
    """
    Exact statistical distance between f(x j) for uniform x, j and the
    uniform distribution on the domain.

    With units_only, x and j range over the units of the domain ring and the
    reference distribution is uniform on the units.
    """
    size = perm.domain_size
    if size > ACCESSIBILITY_LIMIT:
        raise EnumerationLimitError(f"domain {size} exceeds {ACCESSIBILITY_LIMIT}")
    values = np.arange(size, dtype=np.int64)
    if units_only:
        values = values[np.gcd(values, size) == 1]
    products = (values[:, np.newaxis] * values[np.newaxis, :]) % size
    # f is a bijection, so f(xj) is as far from uniform as xj is.
    counts = np.bincount(products.ravel(), minlength=size)
    reference = np.zeros(size, dtype=np.int64)
    reference[values] = 1
    total = values.size ** 2
    gap = np.abs(counts * values.size - reference * total).sum()
    return Fraction(int(gap), 2 * total * values.size)


# ========================================
# BIT EMBEDDING AND THE INVERSION REDUCTION
# ========================================

@dataclass(frozen=True)
class BitEmbedding:
    """Domain element x <-> the integer x read as ``bits`` bits, most significant first."""

    domain_size: int

    @property
    def bits(self) -> int:
        return max(1, (self.domain_size - 1).bit_length())

    def to_bits(self, x: int) -> np.ndarray:
        return int_to_bits(x, self.bits)

    def contains(self, value: int) -> bool:
        return 0 <= value < self.domain_size


def inner_product(x, r) -> np.ndarray:
    """x . r mod 2 on embedded integers."""
    return parity(np.asarray(x, dtype=np.uint64) & np.asarray(r, dtype=np.uint64))


Predictor = Callable[[int, np.ndarray], np.ndarray]


class PlantedPredictor:
    """
    Predictor for x . r from (f(x), r) that errs on an exact, uniformly chosen
    set of (x, r) pairs. Built with the trapdoor; used to drive the reduction
    in tests and demos.
    """

    def __init__(self, perm: ToyPermutation, accuracy: float, rng: np.random.Generator):
        if not 0 <= accuracy <= 1:
            raise ParameterError("accuracy must lie in [0, 1]")
        self.perm = perm
        embedding = BitEmbedding(perm.domain_size)
        width = 1 << embedding.bits
        xs = np.arange(perm.domain_size, dtype=np.int64)
        rs = np.arange(width, dtype=np.int64)
        table = inner_product(xs[:, np.newaxis], rs[np.newaxis, :])
        total = table.size
        wrong = total - int(round(accuracy * total))
        flips = rng.choice(total, size=wrong, replace=False)
        table.flat[flips] = table.flat[flips] ^ 1
        self.table = table
        self.accuracy = Fraction(total - wrong, total)

    def __call__(self, y: int, rs: np.ndarray) -> np.ndarray:
        x = int(self.perm.inverse(y))
        return self.table[x, np.asarray(rs, dtype=np.int64)]


def planted_predictor(perm: ToyPermutation, accuracy: float, rng: np.random.Generator) -> PlantedPredictor:
    return PlantedPredictor(perm, accuracy, rng)


def coin_predictor(rng: np.random.Generator) -> Predictor:
    """Ignores its input."""
    return lambda y, rs: rng.integers(0, 2, size=np.asarray(rs).shape).astype(np.uint8)


@dataclass
class InversionAttempt:
    """
    Attributes:
        y: Target image
        preimage: Verified x' with f(x') = y, or None
        candidates: Candidates GL proposed
        queries: Predictor queries spent
    """

    y: int
    preimage: Optional[int]
    candidates: int
    queries: int


class HardcoreInverter:
    """
    Inverts f at y by list-decoding r -> predictor(y, r) as a Hadamard word
    and returning the candidate x' with f(x') = y. Any returned preimage is
    checked, so the inverter never outputs a wrong x'.
    """

    def __init__(self, predictor: Predictor, perm: ToyPermutation, eps: float, rng: np.random.Generator):
        if not 0 < eps <= 0.5:
            raise ParameterError(f"eps must lie in (0, 1/2], got {eps}")
        self.predictor = predictor
        self.perm = perm
        self.embedding = BitEmbedding(perm.domain_size)
        self.rng = rng
        self.cfg = GLConfig(
            eps=eps / 2,
            c_l=HARDCORE_C_L,
            filter_candidates=False,
            estimate_agreement=False,
        )

    def attempt(self, y: int) -> InversionAttempt:
        rs = np.arange(1 << self.embedding.bits, dtype=np.int64)
        oracle = BitOracle(np.asarray(self.predictor(int(y), rs), dtype=np.uint8))
        found = gl_list_decode(oracle, self.cfg.eps, self.cfg, self.rng)
        preimage = None
        for candidate in found.candidates:
            if self.embedding.contains(candidate) and int(self.perm.forward(candidate)) == int(y):
                preimage = candidate
                break
        return InversionAttempt(int(y), preimage, len(found), found.queries)

    def __call__(self, y: int) -> Optional[int]:
        return self.attempt(y).preimage


def hardcore_invert(predictor: Predictor, perm: ToyPermutation, eps: float, rng: np.random.Generator) -> HardcoreInverter:
    """Inverter for f given a predictor with agreement >= 1/2 + eps over (x, r)."""
    return HardcoreInverter(predictor, perm, eps, rng)


def inversion_fraction(inverter: HardcoreInverter, xs) -> Fraction:
    """Fraction of the given x inverted; any wrong preimage is a contract violation."""
    xs = np.asarray(xs, dtype=np.int64)
    hits = 0
    for x in xs:
        y = int(inverter.perm.forward(x))
        preimage = inverter(y)
        if preimage is None:
            continue
        if int(inverter.perm.forward(preimage)) != y:
            raise ContractViolation(f"inverter returned {preimage} for y={y}")
        hits += 1
    return Fraction(hits, max(xs.size, 1))


# ========================================
# ONE-BIT STRETCH
# ========================================

def prg_stretch_one(perm: ToyPermutation, x: int, r: int) -> np.ndarray:
    """
    (f(x), r, x . r mod 2): 2k + 1 bits for k = perm.bits, with f(x), x and r
    written as k-bit integers, most significant bit first.
    """
    k = perm.bits
    if not 0 <= int(x) < perm.domain_size:
        raise ParameterError(f"x={x} outside the domain of {perm!r}")
    if not 0 <= int(r) < 1 << k:
        raise ParameterError(f"r must have {k} bits")
    fx = int(perm.forward(int(x)))
    tail = int(inner_product(int(x), int(r)))
    return np.concatenate([int_to_bits(fx, k), int_to_bits(int(r), k), np.array([tail], dtype=np.uint8)])
