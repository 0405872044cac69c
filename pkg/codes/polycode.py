"""
Polynomial Codes - Coding Lab
Reed-Muller and systematic multivariate codes, their line-restriction local
decoders, and the constant-degree multilinear code.

Points of S^m are laid out row-major: the first coordinate varies slowest.
When S = F in canonical order the index of v is sum_j int(v_j) q^(m-1-j).
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import galois
import numpy as np

from codes.core import CodeParams, LocalDecoderSpec, as_symbols
from codes.reed_solomon import RSCode, bw_decode
from errors import ParameterError, ShapeError
from fields.field import Field
from fields.polynomials import MultiPoly, grid_points, lagrange_basis_matrix, monomials, poly_interpolate

logger = logging.getLogger(__name__)


# ========================================
# CONFIGURATION
# ========================================

@dataclass(frozen=True)
class PolyCodeConfig:
    """
    Evaluation grid S, optional interpolation grid A, m variables, degree t.

    Invariants: A subset of S subset of F, t < |S|; with A present the tensor
    interpolant has total degree m(|A| - 1) <= t.
    """

    field: Field
    S: galois.FieldArray
    m: int
    t: int
    A: Optional[galois.FieldArray] = None

    def __post_init__(self):
        if not self.field.contains(self.S):
            object.__setattr__(self, "S", self.field(self.S))
        if self.A is not None and not self.field.contains(self.A):
            object.__setattr__(self, "A", self.field(self.A))
        if np.unique(as_symbols(self.S)).size != self.S.size:
            raise ParameterError("evaluation grid S has repeated elements")
        if self.m < 1 or self.t < 0:
            raise ParameterError("need m >= 1 and t >= 0")
        if self.t >= self.S.size:
            raise ParameterError(f"degree t={self.t} must be below |S|={self.S.size}")
        if self.A is not None:
            if np.unique(as_symbols(self.A)).size != self.A.size or not np.all(np.isin(as_symbols(self.A), as_symbols(self.S))):
                raise ParameterError("interpolation grid A must be distinct elements of S")
            if self.A.size * self.m > self.t + self.m:
                raise ParameterError(f"|A| m = {self.A.size * self.m} exceeds t + m = {self.t + self.m}")

    @classmethod
    def full_field(cls, field: Field, m: int, t: int, a_size: Optional[int] = None) -> "PolyCodeConfig":
        """S = F; A = the first ``a_size`` field elements when given."""
        S = field.elements()
        A = S[:a_size] if a_size else None
        return cls(field, S, m, t, A)

    @property
    def n(self) -> int:
        return self.S.size ** self.m

    @property
    def covers_field(self) -> bool:
        return self.S.size == self.field.order and np.all(self.S == self.field.elements())


def point_index(point, q: int) -> int:
    """Row-major index of a point of F^m (S = F)."""
    index = 0
    for value in as_symbols(point):
        index = index * q + int(value)
    return index


# ========================================
# REED-MULLER
# ========================================

class ReedMullerCode:
    """Evaluations on S^m of polynomials of total degree <= t."""

    def __init__(self, cfg: PolyCodeConfig):
        self.cfg = cfg
        self.monomials = monomials(cfg.m, cfg.t)
        size = cfg.S.size
        d = (size - cfg.t) * size ** (cfg.m - 1)
        self._params = CodeParams(n=cfg.n, k=len(self.monomials), d=d, q=cfg.field.order)
        points = grid_points(cfg.S, cfg.m)
        exps = np.array(self.monomials, dtype=np.int64)                  # (K, m)
        columns = cfg.field.gf.Ones((points.shape[0], exps.shape[0]))
        for v in range(cfg.m):
            columns = columns * (points[:, v][:, np.newaxis] ** exps[:, v][np.newaxis, :])
        self._evaluation = columns                                        # (n, K)

    @property
    def params(self) -> CodeParams:
        return self._params

    @property
    def field(self) -> Field:
        return self.cfg.field

    def encode(self, coefficients) -> galois.FieldArray:
        return rm_encode(self.cfg, coefficients, code=self)


def rm_encode(cfg: PolyCodeConfig, coefficients, code: Optional[ReedMullerCode] = None) -> galois.FieldArray:
    """
    Evaluate sum_c coeff_c * z^c over S^m.

    Coefficients follow ``fields.polynomials.monomials(m, t)`` order; for m = 1
    that is c_0, c_1, ..., c_t, matching Reed-Solomon messages.
    """
    code = code or ReedMullerCode(cfg)
    coefficients = coefficients if cfg.field.contains(coefficients) else cfg.field(coefficients)
    if coefficients.shape[-1] != len(code.monomials):
        raise ShapeError(f"expected {len(code.monomials)} coefficients, got {coefficients.shape[-1]}")
    return code._evaluation @ coefficients


# ========================================
# SYSTEMATIC
# ========================================

class SystematicPolyCode:
    """
    Message = values on A^m; codeword = the tensor-Lagrange interpolant on S^m.
    """

    def __init__(self, cfg: PolyCodeConfig):
        if cfg.A is None:
            raise ParameterError("systematic code needs an interpolation grid A")
        self.cfg = cfg
        a_size, s_size = cfg.A.size, cfg.S.size
        degree = cfg.m * (a_size - 1)
        d = (s_size - degree) * s_size ** (cfg.m - 1)
        self._params = CodeParams(n=cfg.n, k=a_size ** cfg.m, d=d, q=cfg.field.order)
        self._lagrange = lagrange_basis_matrix(cfg.A, cfg.S)             # (|S|, |A|)

    @property
    def params(self) -> CodeParams:
        return self._params

    @property
    def field(self) -> Field:
        return self.cfg.field

    def encode(self, values) -> galois.FieldArray:
        return systematic_encode(self.cfg, values, code=self)

    def message_positions(self) -> np.ndarray:
        """Codeword indices of the points of A^m, in message order."""
        s_list = as_symbols(self.cfg.S).tolist()
        a_pos = np.array([s_list.index(int(a)) for a in as_symbols(self.cfg.A)], dtype=np.int64)
        grids = np.meshgrid(*([a_pos] * self.cfg.m), indexing="ij")
        index = np.zeros_like(grids[0])
        for g in grids:
            index = index * self.cfg.S.size + g
        return index.ravel()


def systematic_encode(cfg: PolyCodeConfig, values, code: Optional[SystematicPolyCode] = None) -> galois.FieldArray:
    """
    Interpolate f on A^m (per-variable degree < |A|) and evaluate on S^m.

    ``values`` is row-major over A^m, length |A|^m.
    """
    code = code or SystematicPolyCode(cfg)
    values = values if cfg.field.contains(values) else cfg.field(values)
    a_size, m = cfg.A.size, cfg.m
    if values.size != a_size ** m:
        raise ShapeError(f"expected {a_size ** m} values on A^m, got {values.size}")

    tensor = values.reshape((a_size,) * m)
    for axis in range(m):
        moved = np.moveaxis(tensor, axis, 0)
        rest = moved.shape[1:]
        mixed = code._lagrange @ moved.reshape(a_size, -1)
        tensor = np.moveaxis(mixed.reshape((cfg.S.size,) + rest), 0, axis)
    return tensor.reshape(-1)


# ========================================
# FIELD ORACLES AND LINES
# ========================================

class FieldOracle:
    """
    Query access to a function F^m -> F given as a table over the full grid.
    """

    def __init__(self, field: Field, m: int, table):
        table = table if field.contains(table) else field(table)
        if table.size != field.order ** m:
            raise ShapeError(f"table has {table.size} entries, expected {field.order ** m}")
        self.field = field
        self.m = m
        self._table = table
        self.queries = 0
        self._place = field.order ** np.arange(m - 1, -1, -1, dtype=np.int64)

    def indices(self, points) -> np.ndarray:
        return as_symbols(points).reshape(-1, self.m) @ self._place

    def query(self, point) -> galois.FieldArray:
        self.queries += 1
        return self._table[int(self.indices(point)[0])]

    def query_many(self, points) -> galois.FieldArray:
        idx = self.indices(points)
        self.queries += idx.size
        return self._table[idx]

    def fork(self) -> "FieldOracle":
        return FieldOracle(self.field, self.m, self._table)

    def truth_table(self) -> galois.FieldArray:
        return self._table.copy()


@dataclass(frozen=True)
class Line:
    """l(z) = a + z b in F^m."""

    a: galois.FieldArray
    b: galois.FieldArray

    def at(self, zs: galois.FieldArray) -> galois.FieldArray:
        return self.a[np.newaxis, :] + zs[:, np.newaxis] * self.b[np.newaxis, :]


@dataclass
class LineDecodeResult:
    success: bool
    value: Optional[galois.FieldArray] = None
    queries: int = 0
    error: Optional[str] = None


def _as_point(field: Field, a, m: int) -> galois.FieldArray:
    a = a if field.contains(a) else field(a)
    if a.shape != (m,):
        raise ShapeError(f"point must have {m} coordinates")
    return a


def smooth_line_decode(p: FieldOracle, a, cfg: PolyCodeConfig, rng: np.random.Generator) -> LineDecodeResult:
    """
    Recover p(a) from t + 1 queries on a random line through a.

    Queries l(1), ..., l(t+1) for l(z) = a + z b, b uniform in F^m;
    interpolates q(z) = p(l(z)) and returns q(0). Each query is uniform
    over F^m.
    """
    field, t = cfg.field, cfg.t
    if field.order < t + 2:
        raise ParameterError(f"need |F| >= t + 2 = {t + 2} distinct nonzero line parameters")
    a = _as_point(field, a, cfg.m)
    line = Line(a, field.random(cfg.m, rng))
    zs = field(np.arange(1, t + 2))
    values = p.query_many(line.at(zs))
    q = poly_interpolate((zs, values))
    return LineDecodeResult(success=True, value=q(field.gf(0)), queries=t + 1)


def line_query_marginals(field: Field, m: int, a, t: int) -> np.ndarray:
    """
    Exact query distribution of smooth_line_decode: counts[slot, position]
    over all |F|^m directions b.
    """
    a = _as_point(field, a, m)
    directions = grid_points(field.elements(), m)
    zs = field(np.arange(1, t + 2))
    place = field.order ** np.arange(m - 1, -1, -1, dtype=np.int64)
    counts = np.zeros((t + 1, field.order ** m), dtype=np.int64)
    for slot, z in enumerate(zs):
        pts = a[np.newaxis, :] + z * directions
        np.add.at(counts[slot], as_symbols(pts) @ place, 1)
    return counts


def noisy_line_zs(field: Field, t: int, rng: np.random.Generator) -> galois.FieldArray:
    """The 3t line parameters: c * u for u the first 3t nonzero elements, c random nonzero."""
    if field.order - 1 < 3 * t:
        raise ParameterError(f"need at least 3t = {3 * t} nonzero field elements")
    c = field.gf(int(rng.integers(1, field.order)))
    return c * field(np.arange(1, 3 * t + 1))


def noisy_line_decode(g: FieldOracle, a, cfg: PolyCodeConfig, rng: np.random.Generator) -> LineDecodeResult:
    """
    Recover p(a) from 3t queries on a random line when g is close to p.

    The 3t samples are Berlekamp-Welch decoded as a Reed-Solomon word of
    dimension t + 1 with error budget t - 1.
    """
    field, t = cfg.field, cfg.t
    if t < 1:
        raise ParameterError("noisy line decoding needs t >= 1")
    a = _as_point(field, a, cfg.m)
    line = Line(a, field.random(cfg.m, rng))
    zs = noisy_line_zs(field, t, rng)
    values = g.query_many(line.at(zs))
    restricted = RSCode(field, k=t + 1, points=zs)
    result = bw_decode(restricted, values, t - 1)
    if not result.success:
        return LineDecodeResult(success=False, queries=3 * t, error=result.error)
    return LineDecodeResult(success=True, value=result.polynomial(field.gf(0)), queries=3 * t)


def smooth_decoder_spec(cfg: PolyCodeConfig, delta: float) -> LocalDecoderSpec:
    """t + 1 uniform queries: correct with probability >= 1 - (t + 1) delta."""
    return LocalDecoderSpec(
        query_complexity=cfg.t + 1,
        delta=delta,
        success_probability=max(1e-9, 1 - (cfg.t + 1) * delta),
        smoothness=1,
    )


# ========================================
# MULTILINEAR CONSTANT-DEGREE CODE
# ========================================

def subset_index(m: int, d: int) -> List[Tuple[int, ...]]:
    """The d-subsets of {0..m-1} in lexicographic order; message entry i is subset i."""
    return list(combinations(range(m), d))


def multilinear_poly(field: Field, m: int, d: int, x) -> MultiPoly:
    """p_x(z) = sum_S x_S prod_{j in S} z_j."""
    subsets = subset_index(m, d)
    values = as_symbols(x)
    if values.size > len(subsets):
        raise ShapeError(f"message of length {values.size} exceeds C({m}, {d}) = {len(subsets)}")
    terms = {}
    for S, value in zip(subsets, values):
        exponent = tuple(1 if j in S else 0 for j in range(m))
        terms[exponent] = int(value)
    return MultiPoly(field, m, terms, d)


def multilinear_encode(m: int, d: int, x, field: Field) -> galois.FieldArray:
    """
    Evaluate p_x over all of F^m (row-major).

    Requires d < |F| <= 2d. Entry x_S is read back at the indicator point e_S.
    """
    if not d < field.order <= 2 * d:
        raise ParameterError(f"multilinear code needs d < |F| <= 2d, got |F|={field.order}, d={d}")
    if not 1 <= d <= m:
        raise ParameterError("need 1 <= d <= m")
    poly = multilinear_poly(field, m, d, x)
    return poly.evaluate(grid_points(field.elements(), m))


def indicator_point(field: Field, m: int, subset: Tuple[int, ...]) -> galois.FieldArray:
    point = field.zeros(m)
    point[list(subset)] = 1
    return point


def multilinear_config(field: Field, m: int, d: int) -> PolyCodeConfig:
    """Line-decoding configuration for the multilinear code (S = F, degree d)."""
    return PolyCodeConfig.full_field(field, m, d)


# ========================================
# SCHWARTZ-ZIPPEL
# ========================================

def exhaustive_zero_fraction(p: MultiPoly, S) -> float:
    """Exact fraction of S^m on which p vanishes."""
    if p.is_zero():
        raise ParameterError("zero polynomial vanishes everywhere")
    S = S if p.field.contains(S) else p.field(S)
    values = p.evaluate(grid_points(S, p.m))
    return float(np.count_nonzero(values == 0)) / values.size


def schwartz_zippel_check(p: MultiPoly, S, trials: int, rng: np.random.Generator) -> float:
    """Empirical probability that p vanishes at a uniform point of S^m."""
    if p.is_zero():
        raise ParameterError("zero polynomial vanishes everywhere")
    S = S if p.field.contains(S) else p.field(S)
    picks = rng.integers(0, S.size, size=(trials, p.m))
    points = S[picks]
    values = p.evaluate(points)
    return float(np.count_nonzero(values == 0)) / trials
