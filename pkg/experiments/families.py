"""
Code Families - Coding Lab
Builds the code, its unique decoder and its list decoder from an
ExperimentConfig, behind one small interface the subcommands share.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from codes.channel import BSC, Adversarial, Channel
from codes.concat import (
    ConcatCode,
    agreement_list_decoder,
    bounded_decoder,
    brute_force_list_decode,
    bw_decoder,
    concat_decode_naive,
    concat_list_decode,
)
from codes.core import agreement, as_symbols
from codes.goldreich_levin import gl_list_decode
from codes.gv import brute_force_decode, gv_sample
from codes.hadamard import BitOracle, HadamardCode, had_full_decode
from codes.polycode import FieldOracle, PolyCodeConfig, SystematicPolyCode, noisy_line_decode
from codes.reed_solomon import RSCode, bw_decode, rs_list_decode
from experiments.config import ExperimentConfig
from fields.field import get_field
from fields.polynomials import grid_points

logger = logging.getLogger(__name__)

Decoded = Tuple[bool, Optional[np.ndarray], Optional[str]]
Listed = List[Tuple[np.ndarray, int]]


@dataclass
class CodeFamily:
    """
    Attributes:
        name: Family key from the config
        code: Object with params, field and encode
        decode: (word, rng) -> (success, message or None, error or None)
        list_decode: (word, rng) -> [(message, agreement)], sorted by message
    """

    name: str
    code: object
    decode: Callable[[np.ndarray, np.random.Generator], Decoded]
    list_decode: Callable[[np.ndarray, np.random.Generator], Listed]

    @property
    def q(self) -> int:
        return self.code.params.q

    @property
    def n(self) -> int:
        return self.code.params.n

    @property
    def k(self) -> int:
        return self.code.params.k

    def random_message(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.q, size=self.k)

    def encode(self, message) -> np.ndarray:
        return as_symbols(self.code.encode(self.code.field(np.asarray(message, dtype=np.int64))))


def build_channel(cfg: ExperimentConfig, **override) -> Optional[Channel]:
    kind = override.get("channel", cfg.channel)
    if kind == "bsc":
        return BSC(crossover=override.get("crossover", cfg.crossover))
    if kind == "adversarial":
        return Adversarial(errors=int(override.get("errors", cfg.errors)), strategy=cfg.strategy)
    return None


def _with_agreements(family_code, word, messages) -> Listed:
    out = []
    for message in messages:
        codeword = as_symbols(family_code.encode(family_code.field(as_symbols(message))))
        out.append((as_symbols(message), agreement(codeword, word)))
    return sorted(out, key=lambda item: tuple(item[0].tolist()))


# ========================================
# FAMILIES
# ========================================

def reed_solomon_family(cfg: ExperimentConfig) -> CodeFamily:
    code = RSCode(get_field(cfg.field_order), cfg.k, n=cfg.n)
    radius = cfg.decode_radius if cfg.decode_radius is not None else (cfg.n - cfg.k) // 2
    variant = "plain" if cfg.list_variant == "plain" else "weighted"
    if cfg.agreement is not None:
        t = cfg.agreement
    elif variant == "weighted":
        t = math.isqrt(2 * cfg.n * cfg.k) + 1
    else:
        t = math.isqrt(4 * cfg.n * cfg.k) + 1

    def decode(word, rng):
        result = bw_decode(code, code.field(word), radius)
        return result.success, (as_symbols(result.message) if result.success else None), result.error

    def list_decode(word, rng):
        result = rs_list_decode(code, code.field(word), t, variant=variant)
        return [(as_symbols(c.message), c.agreement) for c in result.candidates]

    return CodeFamily("rs", code, decode, list_decode)


def hadamard_family(cfg: ExperimentConfig) -> CodeFamily:
    code = HadamardCode(cfg.k)

    def decode(word, rng):
        bits = had_full_decode(BitOracle(word), cfg.delta, rng)
        return True, bits.astype(np.int64), None

    def list_decode(word, rng):
        found = gl_list_decode(BitOracle(word), cfg.eps, rng=rng)
        return _with_agreements(code, word, found.as_bits(cfg.k))

    return CodeFamily("hadamard", code, decode, list_decode)


def systematic_family(cfg: ExperimentConfig) -> CodeFamily:
    field = get_field(cfg.field_order)
    a_size = (cfg.t + cfg.m) // cfg.m
    poly_cfg = PolyCodeConfig.full_field(field, cfg.m, cfg.t, a_size)
    code = SystematicPolyCode(poly_cfg)
    points = grid_points(poly_cfg.A, cfg.m)

    def decode(word, rng):
        oracle = FieldOracle(field, cfg.m, field(word))
        values = []
        for point in points:
            result = noisy_line_decode(oracle, point, poly_cfg, rng)
            if not result.success:
                return False, None, result.error
            values.append(int(result.value))
        return True, np.array(values, dtype=np.int64), None

    def list_decode(word, rng):
        threshold = cfg.agreement or code.params.n - (code.params.d - 1) // 2
        return _with_agreements(code, word, brute_force_list_decode(code, word, threshold))

    return CodeFamily("systematic", code, decode, list_decode)


def concat_family(cfg: ExperimentConfig) -> CodeFamily:
    outer = RSCode(get_field(4), cfg.outer_k, n=cfg.outer_n)
    inner = HadamardCode(2)
    code = ConcatCode(outer, inner)
    inner_radius = (inner.params.d - 1) // 2
    outer_radius = cfg.decode_radius if cfg.decode_radius is not None else (cfg.outer_n - cfg.outer_k) // 2
    inner_list = agreement_list_decoder(inner, inner.params.n // 2 + 1)
    outer_list = agreement_list_decoder(outer, cfg.agreement or cfg.outer_k)
    variant = cfg.list_variant if cfg.list_variant in ("exhaustive", "randomized") else "exhaustive"

    def decode(word, rng):
        result = concat_decode_naive(code, word, bounded_decoder(inner, inner_radius), bw_decoder(outer, outer_radius))
        return result.success, (as_symbols(result.message) if result.success else None), result.error

    def list_decode(word, rng):
        found = concat_list_decode(code, word, inner_list, outer_list, cfg.repetitions, rng, variant)
        return _with_agreements(code, word, [np.array(m) for m in found.messages])

    return CodeFamily("concat", code, decode, list_decode)


def gv_family(cfg: ExperimentConfig) -> CodeFamily:
    code = gv_sample(cfg.n, cfg.k, cfg.d, cfg.max_attempts, seed=cfg.seed)
    radius = cfg.decode_radius if cfg.decode_radius is not None else (cfg.d - 1) // 2

    def decode(word, rng):
        message = brute_force_decode(code, word)
        distance = cfg.n - agreement(code.encode(message), word)
        if distance > radius:
            return False, None, f"nearest codeword at distance {distance} > {radius}"
        return True, as_symbols(message), None

    def list_decode(word, rng):
        threshold = cfg.agreement or cfg.n - radius
        return _with_agreements(code, word, brute_force_list_decode(code, word, threshold))

    return CodeFamily("gv", code, decode, list_decode)


FAMILIES = {
    "rs": reed_solomon_family,
    "hadamard": hadamard_family,
    "systematic": systematic_family,
    "concat": concat_family,
    "gv": gv_family,
}


def build_family(cfg: ExperimentConfig) -> CodeFamily:
    family = FAMILIES[cfg.family](cfg)
    logger.debug("built %s code %s", cfg.family, family.code.params)
    return family
