"""
Results Store - Coding Lab
Writes experiment records as CSV or JSON lines, and reads them back.

Every record carries ``schema_version``. Records are sorted by ``trial`` (when
present) before writing, floats are written with 9 decimals, and nothing
time-dependent is added, so identical runs produce identical bytes.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.9f"

PathLike = Union[str, Path]


def _prepare(records: Sequence[Dict[str, Any]], schema_version: int) -> List[Dict[str, Any]]:
    rows = [{"schema_version": schema_version, **record} for record in records]
    if rows and all("trial" in row for row in rows):
        rows.sort(key=lambda row: row["trial"])
    return rows


def _round_floats(value: Any) -> Any:
    if isinstance(value, float):
        return float(FLOAT_FORMAT % value)
    if isinstance(value, dict):
        return {key: _round_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(item) for item in value]
    return value


def records_to_csv(records: Sequence[Dict[str, Any]], columns: Sequence[str], schema_version: int = SCHEMA_VERSION) -> str:
    """CSV text with a header row; an empty record list gives the header only."""
    frame = pd.DataFrame(_prepare(records, schema_version), columns=["schema_version", *columns])
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def records_to_jsonl(records: Sequence[Dict[str, Any]], schema_version: int = SCHEMA_VERSION) -> str:
    lines = [json.dumps(_round_floats(row), sort_keys=True) for row in _prepare(records, schema_version)]
    return "".join(f"{line}\n" for line in lines)


def document_to_json(document: Dict[str, Any], schema_version: int = SCHEMA_VERSION) -> str:
    """A single JSON document (used by the PIR demo)."""
    return json.dumps(_round_floats({"schema_version": schema_version, **document}), sort_keys=True, indent=2) + "\n"


def write_output(text: str, path: Optional[PathLike], base_dir: Optional[PathLike] = None) -> None:
    """Write to ``path`` (relative paths resolve against ``base_dir``), or to stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    if base_dir is not None and not target.is_absolute():
        target = Path(base_dir) / target
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("wrote %s", target)


def load_records(path: PathLike) -> List[Dict[str, Any]]:
    """Read back CSV or JSON-lines records (format chosen by content)."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    if not text.strip():
        return []
    return pd.read_csv(path, dtype=str, keep_default_na=False).to_dict(orient="records")
