"""
Word Files - Coding Lab
Reading and writing lists of words (messages, codewords, received words).

Two formats:
    decimal  one symbol per line in decimal; a blank line ends each word
    hex      binary words only; one word per line as ``n:hexdigits``, the n
             bits read most significant first (first symbol = top bit)

Lines starting with ``#`` are comments in both formats.
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from errors import InputError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _content_lines(text: str) -> List[str]:
    return [line.strip() for line in text.splitlines() if not line.strip().startswith("#")]


def detect_format(text: str) -> str:
    for line in _content_lines(text):
        if line:
            return "hex" if ":" in line else "decimal"
    return "decimal"


def parse_words(text: str, q: int, n: Optional[int] = None) -> List[np.ndarray]:
    """
    Parse word-file text.

    Raises:
        InputError: bad token, symbol outside [0, q), or wrong word length
    """
    fmt = detect_format(text)
    words = _parse_hex(text) if fmt == "hex" else _parse_decimal(text)
    for index, word in enumerate(words):
        if fmt == "hex" and q != 2:
            raise InputError("hex word files are only valid for binary codes")
        if word.size and (word.min() < 0 or word.max() >= q):
            raise InputError(f"word {index}: symbol outside [0, {q})")
        if n is not None and word.size != n:
            raise InputError(f"word {index}: length {word.size} != n={n}")
    return words


def _parse_decimal(text: str) -> List[np.ndarray]:
    words, current = [], []
    for number, line in enumerate(_content_lines(text), start=1):
        if not line:
            if current:
                words.append(np.array(current, dtype=np.int64))
                current = []
            continue
        try:
            current.append(int(line, 10))
        except ValueError:
            raise InputError(f"line {number}: {line!r} is not a decimal symbol") from None
    if current:
        words.append(np.array(current, dtype=np.int64))
    return words


def _parse_hex(text: str) -> List[np.ndarray]:
    words = []
    for number, line in enumerate(_content_lines(text), start=1):
        if not line:
            continue
        length, _, digits = line.partition(":")
        try:
            n = int(length, 10)
            value = int(digits, 16) if digits else 0
        except ValueError:
            raise InputError(f"line {number}: {line!r} is not n:hex") from None
        if n < 0 or value >> n:
            raise InputError(f"line {number}: value does not fit in {n} bits")
        words.append(((value >> np.arange(n - 1, -1, -1)) & 1).astype(np.int64))
    return words


def format_words(words: Sequence, fmt: str = "decimal") -> str:
    """Inverse of parse_words."""
    if fmt not in ("decimal", "hex"):
        raise InputError(f"unknown word format {fmt!r}")
    blocks = []
    for word in words:
        symbols = [int(s) for s in np.asarray(word).reshape(-1).view(np.ndarray)]
        if fmt == "hex":
            if any(s not in (0, 1) for s in symbols):
                raise InputError("hex format needs binary symbols")
            value = 0
            for bit in symbols:
                value = (value << 1) | bit
            digits = format(value, f"0{max(1, (len(symbols) + 3) // 4)}x")
            blocks.append(f"{len(symbols)}:{digits}\n")
        else:
            blocks.append("".join(f"{s}\n" for s in symbols) + "\n")
    return "".join(blocks)


def load_words(path: PathLike, q: int, n: Optional[int] = None) -> List[np.ndarray]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read word file {path}: {exc}") from exc
    words = parse_words(text, q, n)
    logger.debug("loaded %d words from %s", len(words), path)
    return words


def save_words(path: PathLike, words: Sequence, fmt: str = "decimal") -> None:
    Path(path).write_text(format_words(words, fmt), encoding="utf-8")
