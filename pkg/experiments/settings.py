"""
Runtime Settings - Coding Lab
Process-level defaults read from the environment (and a local .env file).
"""

import logging
import os
import sys
from typing import Optional

import coloredlogs
from dotenv import load_dotenv

# ========================================
# LOAD ENVIRONMENT VARIABLES
# ========================================
load_dotenv()

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def get_env_var(key: str, default: Optional[str] = None) -> Optional[str]:
    """
    Get an environment variable, falling back to ``default``.

    Args:
        key (str): Environment variable key
        default (str): Value used when the key is unset or empty
    """
    value = os.getenv(key)
    return value if value else default


def _int_env(key: str, default: int) -> int:
    raw = get_env_var(key, str(default))
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(__name__).warning("ignoring non-integer %s=%r", key, raw)
        return default


LOG_LEVEL = get_env_var("CODELAB_LOG_LEVEL", "INFO").upper()
ENUMERATION_LIMIT = _int_env("CODELAB_ENUMERATION_LIMIT", 1_000_000)
OUTPUT_DIR = get_env_var("CODELAB_OUTPUT_DIR", ".")


def configure_logging(level: Optional[str] = None) -> None:
    """Colored log lines on stderr; data output never goes there."""
    coloredlogs.install(level=(level or LOG_LEVEL), stream=sys.stderr, fmt=LOG_FORMAT)
