"""
Command Line - Coding Lab
Seeded batch experiments over the coding library.

Usage:
    python app.py <subcommand> [--config PATH] [--seed U64] [--out PATH]
                               [--format csv|json] [--input PATH]

Exit codes: 0 success, 2 configuration error, 3 input error,
4 internal contract violation (or any unexpected failure).
"""

import argparse
import logging
import sys
from typing import List, Optional

from errors import (
    CodingError,
    ConfigError,
    ContractViolation,
    InputError,
    ParameterError,
    SamplingExhausted,
    ShapeError,
)
from experiments.config import MAX_SEED, ExperimentConfig
from experiments.orchestrator import ExperimentOrchestrator, RunResult
from experiments import settings
from storage.results_store import document_to_json, records_to_csv, records_to_jsonl, write_output
from storage.word_files import format_words, load_words

logger = logging.getLogger("codelab")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

SUBCOMMANDS = ("encode", "decode", "list-decode", "simulate", "pir-demo", "gl-demo", "learn-fourier", "show-config")


def _seed(text: str) -> int:
    value = int(text, 10)
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2^64 - 1], got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value experiment file (defaults when omitted)")
    common.add_argument("--seed", type=_seed, help="master seed, overrides the config")
    common.add_argument("--out", help="output path (stdout when omitted)")
    common.add_argument("--format", choices=("csv", "json"), help="record format, overrides the config")
    common.add_argument("--input", help="word file (encode: messages; decode / list-decode: received words)")
    common.add_argument("--log-level", help="logging level for stderr")

    parser = argparse.ArgumentParser(
        prog="codelab",
        description="Reproducible encoding, decoding, PIR and Fourier-learning experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    overrides = {"seed": args.seed, "out": args.out, "format": args.format}
    if args.config:
        return ExperimentConfig.from_file(args.config, **overrides)
    return ExperimentConfig.build(**{key: value for key, value in overrides.items() if value is not None})


def run(command: str, config: ExperimentConfig, input_path: Optional[str] = None) -> str:
    """Run one subcommand and return the exact text it writes."""
    if command == "show-config":
        return config.to_text()

    orchestrator = ExperimentOrchestrator(config)
    if command == "encode":
        messages = None
        if input_path:
            family = orchestrator.family
            messages = load_words(input_path, family.q, family.k)
        result = orchestrator.encode(messages)
        _log_summary(command, result)
        return format_words(result.words, config.word_format)

    if command in ("decode", "list-decode"):
        words = None
        if input_path:
            family = orchestrator.family
            words = load_words(input_path, family.q, family.n)
        result = orchestrator.decode(words) if command == "decode" else orchestrator.list_decode(words)
    elif command == "simulate":
        result = orchestrator.simulate()
    elif command == "pir-demo":
        result = orchestrator.pir_demo()
        _log_summary(command, result)
        if config.format == "json":
            return document_to_json(result.document)
        return records_to_csv(result.records, result.columns)
    elif command == "gl-demo":
        result = orchestrator.gl_demo()
    elif command == "learn-fourier":
        result = orchestrator.learn_fourier()
    else:
        raise ConfigError(f"unknown subcommand {command!r}")

    _log_summary(command, result)
    if config.format == "json":
        return records_to_jsonl(result.records)
    return records_to_csv(result.records, result.columns)


def _log_summary(command: str, result: RunResult) -> None:
    details = " ".join(
        f"{key}={value:.3f}" if isinstance(value, float) else f"{key}={value}"
        for key, value in sorted(result.summary.items())
    )
    logger.info("%s: %s", command, details)


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the documented exit status."""
    if isinstance(exc, (InputError, ShapeError)):
        return EXIT_INPUT
    if isinstance(exc, (ConfigError, ParameterError, SamplingExhausted)):
        return EXIT_CONFIG
    return EXIT_INTERNAL


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings.configure_logging(args.log_level)
    try:
        config = load_config(args)
        text = run(args.command, config, args.input)
        write_output(text, config.out, base_dir=settings.OUTPUT_DIR)
    except ContractViolation as exc:
        logger.error("contract violation: %s", exc)
        print(f"error: contract violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CodingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except Exception as exc:
        logger.exception("unexpected failure")
        print(f"error: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
