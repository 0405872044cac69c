"""
Experiment Orchestrator - Coding Lab
Runs one subcommand end to end and consolidates its records.

Every trial draws from child_rng(seed, trial), so a run is a pure function of
(config, input words). Records come back sorted by trial index.

Pipelines:
1. encode       -> codewords for input (or seeded random) messages
2. decode       -> unique decoding of input (or simulated) received words
3. list_decode  -> list decoding of the same
4. simulate     -> success rate per channel parameter with Wilson intervals
5. pir_demo     -> transcripts, recovery check, privacy audit, communication
6. gl_demo      -> planted Hadamard list-decoding recovery rate
7. learn_fourier -> learned heavy coefficients checked against the exact spectrum
"""

import logging
from dataclasses import asdict, dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional

import numpy as np

from codes.channel import child_rng, transmit
from codes.core import agreement, as_symbols
from codes.goldreich_levin import gl_list_decode
from codes.hadamard import MAX_K, BitOracle, blr_local_decode, corrupt_table, had_encode, int_to_bits
from errors import ConfigError, ContractViolation
from experiments import reporting
from experiments.config import ExperimentConfig
from experiments.families import CodeFamily, build_channel, build_family
from experiments.settings import ENUMERATION_LIMIT
from fields.field import get_field
from fourier.spectrum import BooleanFunction, fourier_transform, km_learn_heavy
from pir.scheme import (
    BrokenDecoder,
    HadamardSmoothDecoder,
    MultilinearSmoothDecoder,
    communication_cost,
    pir_from_smooth_decoder,
    privacy_statistical_distance,
    reference_rows,
    retrieve,
    trivial_scheme,
    verify_recovery,
)

logger = logging.getLogger(__name__)

MAX_EXACT_SPECTRUM_K = 10


@dataclass
class RunResult:
    """
    Consolidated output of one pipeline.

    Attributes:
        records: One dict per trial (or grid cell, or audit row)
        columns: CSV column order for ``records``
        summary: Aggregates logged by the CLI
        document: Extra JSON document (PIR demo) or None
        words: Output words (encode) or None
    """

    records: List[Dict[str, Any]] = dataclass_field(default_factory=list)
    columns: List[str] = dataclass_field(default_factory=list)
    summary: Dict[str, Any] = dataclass_field(default_factory=dict)
    document: Optional[Dict[str, Any]] = None
    words: Optional[List[np.ndarray]] = None


class ExperimentOrchestrator:
    """Runs the subcommand pipelines for one validated configuration."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self._family: Optional[CodeFamily] = None

    @property
    def family(self) -> CodeFamily:
        if self._family is None:
            self._family = build_family(self.config)
        return self._family

    # ========================================
    # ENCODE / DECODE
    # ========================================

    def encode(self, messages: Optional[List[np.ndarray]] = None) -> RunResult:
        family = self.family
        if messages is None:
            messages = [family.random_message(child_rng(self.config.seed, i)) for i in range(self.config.trials)]
        words = [family.encode(message) for message in messages]
        return RunResult(words=words, summary={"words": len(words), "code": str(family.code.params)})

    def _received_words(self, words: Optional[List[np.ndarray]]):
        """(trial, rng, received, truth message or None, injected error count or None)."""
        family = self.family
        if words is not None:
            for trial, word in enumerate(words):
                yield trial, child_rng(self.config.seed, trial), word, None, None
            return
        channel = build_channel(self.config)
        for trial in range(self.config.trials):
            rng = child_rng(self.config.seed, trial)
            message = family.random_message(rng)
            codeword = family.encode(message)
            if channel is None:
                yield trial, rng, codeword, message, 0
                continue
            received = transmit(channel, codeword, family.q, rng)
            yield trial, rng, as_symbols(received.symbols), message, len(received.error_positions)

    def decode(self, words: Optional[List[np.ndarray]] = None) -> RunResult:
        family = self.family
        records = []
        for trial, rng, word, truth, injected in self._received_words(words):
            success, message, error = family.decode(word, rng)
            correct = None
            if truth is not None:
                correct = bool(success and np.array_equal(message, truth))
            records.append({
                "trial": trial,
                "success": bool(success),
                "correct": correct,
                "message": reporting.symbols_text(message) if message is not None else "",
                "errors_injected": injected,
                "agreement": agreement(family.encode(message), word) if message is not None else None,
                "error": error or "",
            })
        summary = {
            "trials": len(records),
            "success_rate": reporting.summarize(records, "success"),
            "recovery_rate": reporting.summarize(records, "correct"),
        }
        return RunResult(records=records, columns=reporting.DECODE_COLUMNS, summary=summary)

    def list_decode(self, words: Optional[List[np.ndarray]] = None) -> RunResult:
        family = self.family
        records = []
        for trial, rng, word, truth, _ in self._received_words(words):
            found = family.list_decode(word, rng)
            contains = None
            if truth is not None:
                contains = any(np.array_equal(message, truth) for message, _ in found)
            records.append({
                "trial": trial,
                "list_size": len(found),
                "contains_truth": contains,
                "candidates": ";".join(reporting.symbols_text(message) for message, _ in found),
                "agreements": ";".join(str(a) for _, a in found),
            })
        summary = {"trials": len(records), "contains_rate": reporting.summarize(records, "contains_truth")}
        return RunResult(records=records, columns=reporting.LIST_COLUMNS, summary=summary)

    # ========================================
    # SIMULATION
    # ========================================

    def simulate(self) -> RunResult:
        cfg = self.config
        rows = []
        for cell, value in enumerate(cfg.sweep):
            successes, queries = 0, 0
            for trial in range(cfg.trials):
                rng = child_rng(cfg.seed, cell * max(cfg.trials, 1) + trial)
                ok, spent = self._simulate_trial(value, rng)
                successes += int(ok)
                queries += spent
            rows.append(reporting.simulate_row(value, successes, cfg.trials, queries))
            logger.debug("%s=%s: %d/%d", cfg.sweep_param, value, successes, cfg.trials)
        summary = {"cells": len(rows), "sweep_param": cfg.sweep_param}
        return RunResult(records=rows, columns=reporting.SIMULATE_COLUMNS, summary=summary)

    def _simulate_trial(self, value: float, rng: np.random.Generator):
        cfg = self.config
        if cfg.sweep_param == "delta":
            # One local decode of a random bit from a delta-corrupted Hadamard word.
            x = rng.integers(0, 2, size=cfg.k)
            oracle = BitOracle(corrupt_table(had_encode(x), value, rng))
            i = int(rng.integers(0, cfg.k))
            return blr_local_decode(oracle, i, rng) == int(x[i]), oracle.queries

        family = self.family
        message = family.random_message(rng)
        codeword = family.encode(message)
        override = {"channel": "bsc", "crossover": value} if cfg.sweep_param == "crossover" else {
            "channel": "adversarial", "errors": int(value)}
        received = transmit(build_channel(cfg, **override), codeword, family.q, rng)
        success, decoded, _ = family.decode(as_symbols(received.symbols), rng)
        # The family decoder is handed all n received symbols.
        return bool(success and np.array_equal(decoded, message)), family.n

    # ========================================
    # PIR
    # ========================================

    def _pir_scheme(self):
        cfg = self.config
        if cfg.pir_scheme != "multilinear" and cfg.k > MAX_K:
            raise ConfigError(f"hadamard PIR needs k <= {MAX_K}, got {cfg.k}")
        if cfg.pir_scheme == "multilinear":
            decoder = MultilinearSmoothDecoder(get_field(4), 6, 2)
        elif cfg.pir_scheme == "broken":
            decoder = BrokenDecoder(cfg.k)
        else:
            decoder = HadamardSmoothDecoder(cfg.k)
        return pir_from_smooth_decoder(decoder)

    def pir_demo(self) -> RunResult:
        cfg = self.config
        scheme = self._pir_scheme()
        for index in (cfg.pir_index, cfg.pir_index_j):
            if index >= scheme.k:
                raise ConfigError(f"PIR index {index} out of range for a {scheme.k}-symbol database")

        x = child_rng(cfg.seed, 0).integers(0, 2, size=scheme.k)

        transcripts = []
        for trial in range(cfg.trials):
            transcript = retrieve(scheme, x, cfg.pir_index, child_rng(cfg.seed, trial + 1))
            if transcript.output != int(x[cfg.pir_index]):
                raise ContractViolation(f"retrieval {trial} returned {transcript.output} for x_i={x[cfg.pir_index]}")
            transcripts.append(transcript.model_dump())

        audits = []
        for t in range(scheme.servers):
            audit = privacy_statistical_distance(
                scheme, cfg.pir_index, cfg.pir_index_j, t, limit=ENUMERATION_LIMIT, rng=child_rng(cfg.seed, 10 ** 6 + t)
            )
            audits.append({
                "i": audit.i,
                "j": audit.j,
                "server": audit.server,
                "distance": audit.value,
                "exact": audit.exact,
                "ci_low": audit.ci_low,
                "ci_high": audit.ci_high,
            })

        cost = communication_cost(scheme)
        baseline = communication_cost(trivial_scheme(scheme.k))
        document = {
            "scheme": scheme.name,
            "servers": scheme.servers,
            "database": [int(v) for v in x],
            "transcripts": transcripts,
            "recovery_exact": verify_recovery(scheme, x, cfg.pir_index),
            "privacy": audits,
            "communication_bits": cost,
            "trivial_bits": baseline,
            "reference": [asdict(row) for row in reference_rows(scheme.k)],
        }
        summary = {"scheme": scheme.name, "max_distance": max(a["distance"] for a in audits), "bits": cost}
        return RunResult(records=audits, columns=reporting.AUDIT_COLUMNS, summary=summary, document=document)

    # ========================================
    # GOLDREICH-LEVIN AND FOURIER
    # ========================================

    def gl_demo(self) -> RunResult:
        cfg = self.config
        n = 1 << cfg.k
        records = []
        for trial in range(cfg.trials):
            rng = child_rng(cfg.seed, trial)
            planted = int(rng.integers(0, n))
            table = had_encode(int_to_bits(planted, cfg.k))
            table = corrupt_table(table, 1 - cfg.planted_agreement, rng)
            oracle = BitOracle(table)
            found = gl_list_decode(oracle, cfg.eps, rng=rng)
            records.append({
                "trial": trial,
                "planted": planted,
                "recovered": planted in found,
                "list_size": len(found),
                "queries": found.queries,
            })
        summary = {"trials": len(records), "recovery_rate": reporting.summarize(records, "recovered")}
        return RunResult(records=records, columns=reporting.GL_COLUMNS, summary=summary)

    def _fourier_target(self, rng: np.random.Generator) -> BooleanFunction:
        cfg = self.config
        k = cfg.k
        if cfg.fourier_target == "linear":
            return BooleanFunction.linear(k, int(rng.integers(1, 1 << k)))
        if cfg.fourier_target == "random":
            return BooleanFunction.random(k, rng)
        chars = rng.choice(np.arange(1, 1 << k), size=3, replace=False)
        tables = np.stack([BooleanFunction.linear(k, int(a)).table for a in chars]).astype(np.int64)
        return BooleanFunction((tables.sum(axis=0) >= 2).astype(np.uint8))

    def learn_fourier(self) -> RunResult:
        cfg = self.config
        records = []
        recovered = 0
        for trial in range(cfg.trials):
            rng = child_rng(cfg.seed, trial)
            f = self._fourier_target(rng)
            learned = km_learn_heavy(f.oracle(), cfg.theta, rng)
            exact_set = None
            spectrum = None
            if cfg.k <= MAX_EXACT_SPECTRUM_K:
                spectrum = fourier_transform(f)
                exact_set = {a for a, _ in spectrum.heavy(cfg.theta)}
                recovered += int(exact_set <= set(learned.indices))
            for a, estimate in learned.coefficients:
                records.append({
                    "trial": trial,
                    "a": format(a, f"0{cfg.k}b"),
                    "estimate": estimate,
                    "exact": spectrum[a] if spectrum is not None else None,
                    "in_exact_heavy_set": (a in exact_set) if exact_set is not None else None,
                })
        summary = {"trials": cfg.trials, "heavy_set_recovered": recovered}
        return RunResult(records=records, columns=reporting.FOURIER_COLUMNS, summary=summary)
