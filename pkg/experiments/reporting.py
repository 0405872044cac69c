"""
Reporting helpers - Coding Lab
Confidence intervals and the fixed record layouts of every subcommand.
"""

import math
from typing import Dict, List, Sequence, Tuple

from scipy.stats import norm

CONFIDENCE = 0.95

DECODE_COLUMNS = ["trial", "success", "correct", "message", "errors_injected", "agreement", "error"]
LIST_COLUMNS = ["trial", "list_size", "contains_truth", "candidates", "agreements"]
SIMULATE_COLUMNS = ["parameter", "trials", "successes", "success_rate", "ci_low", "ci_high", "mean_queries"]
GL_COLUMNS = ["trial", "planted", "recovered", "list_size", "queries"]
FOURIER_COLUMNS = ["trial", "a", "estimate", "exact", "in_exact_heavy_set"]
AUDIT_COLUMNS = ["i", "j", "server", "distance", "exact", "ci_low", "ci_high"]


def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion; (0, 1) when there are no trials."""
    if trials == 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2))
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def symbols_text(symbols: Sequence[int]) -> str:
    """Space-separated decimal symbols."""
    return " ".join(str(int(s)) for s in symbols)


def simulate_row(parameter: float, successes: int, trials: int, queries: int) -> Dict:
    low, high = wilson_interval(successes, trials)
    return {
        "parameter": float(parameter),
        "trials": trials,
        "successes": successes,
        "success_rate": successes / trials if trials else 0.0,
        "ci_low": low,
        "ci_high": high,
        "mean_queries": queries / trials if trials else 0.0,
    }


def summarize(records: List[Dict], key: str) -> float:
    """Fraction of records with a truthy ``key``."""
    if not records:
        return 0.0
    return sum(1 for record in records if record.get(key)) / len(records)
