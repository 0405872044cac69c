"""
Experiment Configuration - Coding Lab
One validated record per experiment, stored as flat ``key = value`` text.

Keys (defaults in parentheses):
    family          rs | hadamard | systematic | concat | gv   (rs)
    field_order     alphabet of rs / systematic codes           (16)
    n, k            code length and dimension                   (15, 5)
    m, t            variables and degree of systematic codes    (2, 4)
    outer_n, outer_k  RS outer code of concat (inner: Hadamard over GF(2), k = 2)  (3, 2)
    d               target distance of gv                       (4)
    max_attempts    gv sampling attempts                        (1000)
    channel         none | bsc | adversarial                    (none)
    crossover       bsc crossover probability                   (0.0)
    errors          adversarial error count                     (0)
    strategy        random | all                                (random)
    decode_radius   unique-decoding error budget, default floor((d-1)/2)
    agreement       list-decoding agreement threshold
    list_variant    rs: plain | weighted; concat: exhaustive | randomized   (weighted)
    repetitions     randomized concat combiner repetitions      (20)
    sweep           comma-separated grid for simulate
    sweep_param     crossover | errors | delta                  (crossover)
    delta           corruption fraction for hadamard            (0.1)
    eps             GL agreement slack                          (0.15)
    planted_agreement  agreement of gl-demo planted words       (0.65)
    theta           learn-fourier threshold                     (0.25)
    fourier_target  majority3 | linear | random                 (majority3)
    pir_scheme      hadamard | multilinear | broken             (hadamard)
    pir_index, pir_index_j  indices used by pir-demo            (0, 1)
    trials          trials per run or grid cell                 (10)
    seed            master seed                                 (0)
    format          csv | json                                  (csv)
    word_format     decimal | hex                               (decimal)
    out             output path (stdout when unset)
"""

import logging
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field as ModelField, ValidationError, field_validator, model_validator

from errors import ConfigError

logger = logging.getLogger(__name__)

MAX_SEED = 2 ** 64 - 1


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    family: Literal["rs", "hadamard", "systematic", "concat", "gv"] = "rs"
    field_order: int = ModelField(default=16, ge=2)
    n: int = ModelField(default=15, ge=1)
    k: int = ModelField(default=5, ge=1)
    m: int = ModelField(default=2, ge=1)
    t: int = ModelField(default=4, ge=0)
    outer_n: int = ModelField(default=3, ge=1)
    outer_k: int = ModelField(default=2, ge=1)
    d: int = ModelField(default=4, ge=1)
    max_attempts: int = ModelField(default=1000, ge=1)

    channel: Literal["none", "bsc", "adversarial"] = "none"
    crossover: float = ModelField(default=0.0, ge=0, lt=1)
    errors: int = ModelField(default=0, ge=0)
    strategy: Literal["random", "all"] = "random"

    decode_radius: Optional[int] = ModelField(default=None, ge=0)
    agreement: Optional[int] = ModelField(default=None, ge=1)
    list_variant: Literal["plain", "weighted", "exhaustive", "randomized"] = "weighted"
    repetitions: int = ModelField(default=20, ge=1)

    sweep: List[float] = ModelField(default_factory=list)
    sweep_param: Literal["crossover", "errors", "delta"] = "crossover"

    delta: float = ModelField(default=0.1, ge=0, lt=0.5)
    eps: float = ModelField(default=0.15, gt=0, lt=0.5)
    planted_agreement: float = ModelField(default=0.65, ge=0, le=1)
    theta: float = ModelField(default=0.25, gt=0, lt=1)
    fourier_target: Literal["majority3", "linear", "random"] = "majority3"

    pir_scheme: Literal["hadamard", "multilinear", "broken"] = "hadamard"
    pir_index: int = ModelField(default=0, ge=0)
    pir_index_j: int = ModelField(default=1, ge=0)

    trials: int = ModelField(default=10, ge=0)
    seed: int = ModelField(default=0, ge=0, le=MAX_SEED)
    format: Literal["csv", "json"] = "csv"
    word_format: Literal["decimal", "hex"] = "decimal"
    out: Optional[str] = None

    @field_validator("sweep", mode="before")
    @classmethod
    def _split_sweep(cls, value):
        if isinstance(value, str):
            return [float(part) for part in value.split(",") if part.strip()]
        return value

    @model_validator(mode="after")
    def _check_family(self):
        if self.family in ("rs", "gv") and self.k > self.n:
            raise ValueError(f"k={self.k} exceeds n={self.n}")
        if self.family == "rs" and self.n > self.field_order:
            raise ValueError(f"RS length n={self.n} exceeds field size {self.field_order}")
        if self.family == "concat" and (self.outer_k > self.outer_n or self.outer_n > 4):
            raise ValueError("concat outer RS code over GF(4) needs outer_k <= outer_n <= 4")
        if self.family == "systematic" and self.t >= self.field_order:
            raise ValueError(f"degree t={self.t} must be below field size {self.field_order}")
        if self.family == "hadamard" and self.k > 20:
            raise ValueError("hadamard demos are limited to k <= 20")
        if self.sweep_param == "errors" and any(v != int(v) or v < 0 for v in self.sweep):
            raise ValueError("error-count sweeps need nonnegative integers")
        if self.sweep_param in ("crossover", "delta") and any(not 0 <= v < 1 for v in self.sweep):
            raise ValueError("probability sweeps need values in [0, 1)")
        return self

    # ========================================
    # TEXT FORMAT
    # ========================================

    def to_text(self) -> str:
        """Every set key, one ``key = value`` line, in declaration order."""
        lines = []
        for name in type(self).model_fields:
            value = getattr(self, name)
            if value is None:
                continue
            if isinstance(value, list):
                value = ",".join(repr(float(v)) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            lines.append(f"{name} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, **overrides) -> "ExperimentConfig":
        """
        Parse ``key = value`` lines (``#`` starts a comment).

        Raises:
            ConfigError: malformed line, unknown key, or invalid value
        """
        values = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"line {number}: expected 'key = value', got {raw!r}")
            values[key.strip()] = value.strip()
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls.build(**values)

    @classmethod
    def from_file(cls, path, **overrides) -> "ExperimentConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_text(text, **overrides)

    @classmethod
    def build(cls, **values) -> "ExperimentConfig":
        """Validate, turning pydantic errors into ConfigError."""
        try:
            return cls(**values)
        except ValidationError as exc:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in exc.errors()
            )
            logger.warning("invalid configuration: %s", problems)
            raise ConfigError(problems) from None
