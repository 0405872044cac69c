"""
Reed-Solomon Codes - Coding Lab
Encoding, Berlekamp-Welch unique decoding and Sudan list decoding
(rectangular and weighted-degree variants).

A message (c_0, ..., c_{k-1}) is the polynomial c_0 + c_1 x + ... and its
codeword is the vector of evaluations at the code's points.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np

from codes.core import CodeParams, require_length
from errors import EnumerationLimitError, ParameterError, ShapeError
from fields.bivariate_roots import bivariate_y_roots
from fields.field import Field, require_same_field
from fields.linalg import solve_linear_system
from fields.polynomials import BivariatePoly, poly_coeffs, poly_interpolate

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 100_000


# ========================================
# CODE
# ========================================

class RSCode:
    """
    [n, k, n - k + 1]_q Reed-Solomon code on distinct evaluation points.

    Args:
        field: Symbol field GF(q)
        points: n distinct field elements (default: the first n elements)
        k: Message length, k < n <= q
    """

    def __init__(self, field: Field, k: int, points: Optional[Sequence] = None, n: Optional[int] = None):
        if points is None:
            n = field.order if n is None else n
            points = field.elements()[:n]
        points = points if field.contains(points) else field(points)
        n = points.size
        if np.unique(points.view(np.ndarray)).size != n:
            raise ParameterError("evaluation points must be distinct")
        if not (1 <= k < n <= field.order):
            raise ParameterError(f"need 1 <= k < n <= q, got k={k}, n={n}, q={field.order}")

        self._field = field
        self.points = points
        self.k = k
        self._params = CodeParams(n=n, k=k, d=n - k + 1, q=field.order)
        # Vandermonde generator: G[j, i] = x_i^j
        self.generator = points[np.newaxis, :] ** np.arange(k)[:, np.newaxis]

    @property
    def params(self) -> CodeParams:
        return self._params

    @property
    def field(self) -> Field:
        return self._field

    @property
    def n(self) -> int:
        return self._params.n

    def encode(self, message) -> galois.FieldArray:
        return rs_encode(self, message)

    def correctable_errors(self) -> int:
        return (self.n - self.k) // 2

    def __repr__(self) -> str:
        return f"RSCode({self._params})"


def rs_encode(code: RSCode, message) -> galois.FieldArray:
    """Evaluate the message polynomial at every point of the code."""
    message = message if code.field.contains(message) else code.field(message)
    if message.shape[-1] != code.k:
        raise ShapeError(f"message length {message.shape[-1]} != k={code.k}")
    return message @ code.generator


# ========================================
# BERLEKAMP-WELCH
# ========================================

@dataclass
class DecodeResult:
    """
    Outcome of a unique decoder.

    Attributes:
        success: True when a message satisfying the decoder's contract was found
        message: Decoded message (low-to-high coefficients) or None
        polynomial: Decoded polynomial or None
        error_positions: Positions where the codeword of ``message`` differs from y
        error: Failure reason
    """

    success: bool
    message: Optional[galois.FieldArray] = None
    polynomial: Optional[galois.Poly] = None
    error_positions: Tuple[int, ...] = ()
    error: Optional[str] = None


def _failure(reason: str) -> DecodeResult:
    logger.debug("decode failure: %s", reason)
    return DecodeResult(success=False, error=reason)


def bw_decode(code: RSCode, y, e: int) -> DecodeResult:
    """
    Berlekamp-Welch decoding with error budget e < (n - k + 1) / 2.

    Steps: exact-fit shortcut; solve N(x_i) = y_i E(x_i) with deg E <= e,
    deg N <= e + k - 1; p = N / E. The returned message always has at most
    e disagreements with y.

    Args:
        code: The Reed-Solomon code
        y: Received word (field array or ReceivedWord)
        e: Error budget

    Returns:
        DecodeResult
    """
    symbols = getattr(y, "symbols", y)
    require_length(symbols, code.n)
    y = symbols if code.field.contains(symbols) else code.field(symbols)
    n, k = code.n, code.k
    if e < 0 or 2 * e >= n - k + 1:
        raise ParameterError(f"error budget e={e} needs e < (n - k + 1)/2 = {(n - k + 1) / 2}")

    # Step 1: the first k points already determine the only candidate.
    fit = poly_interpolate((code.points[:k], y[:k]))
    if np.all(fit(code.points) == y):
        return DecodeResult(success=True, message=poly_coeffs(fit, k), polynomial=fit)

    if e == 0:
        return _failure("word is not a codeword and the error budget is zero")

    # Step 2: unknowns are E_0..E_e then N_0..N_{e+k-1}.
    gf = code.field.gf
    e_powers = code.points[:, np.newaxis] ** np.arange(e + 1)[np.newaxis, :]
    n_powers = code.points[:, np.newaxis] ** np.arange(e + k)[np.newaxis, :]
    system = np.concatenate((e_powers * y[:, np.newaxis], -n_powers), axis=1)
    basis = solve_linear_system(system, homogeneous=True)
    if basis.shape[0] == 0:
        return _failure("no nonzero (E, N) solution")

    solution = basis[0]
    E = galois.Poly(solution[: e + 1], field=gf, order="asc")
    N = galois.Poly(solution[e + 1:], field=gf, order="asc")
    if E == 0:
        return _failure("error locator vanished")

    # Step 3
    p, remainder = divmod(N, E)
    if remainder != 0:
        return _failure("N is not a multiple of E")
    if p.degree >= k:
        return _failure("quotient degree exceeds k - 1")

    disagreements = np.flatnonzero(p(code.points) != y)
    if disagreements.size > e:
        return _failure(f"candidate disagrees with y in {disagreements.size} > {e} positions")
    return DecodeResult(
        success=True,
        message=poly_coeffs(p, k),
        polynomial=p,
        error_positions=tuple(int(i) for i in disagreements),
    )


# ========================================
# LIST DECODING
# ========================================

@dataclass
class ListCandidate:
    polynomial: galois.Poly
    message: galois.FieldArray
    agreement: int


@dataclass
class ListDecodeResult:
    """
    Every polynomial found, with its agreement count on the input points.

    Attributes:
        candidates: Entries sorted by message
        bound: Interpolation bound used (d_x, d_y) or (k, w)
        unknowns: Number of coefficients of Q
        variant: "rectangular" or "weighted"
    """

    candidates: List[ListCandidate] = dataclass_field(default_factory=list)
    bound: Tuple[int, int] = (0, 0)
    unknowns: int = 0
    variant: str = "rectangular"

    @property
    def messages(self) -> List[tuple]:
        return [tuple(int(c) for c in cand.message) for cand in self.candidates]

    def __len__(self) -> int:
        return len(self.candidates)


def _validate_points(points) -> Tuple[galois.FieldArray, galois.FieldArray]:
    if isinstance(points, tuple) and len(points) == 2 and isinstance(points[0], galois.FieldArray):
        xs, ys = points
    else:
        points = list(points)
        gf = type(points[0][0])
        xs = gf([int(x) for x, _ in points])
        ys = gf([int(y) for _, y in points])
    require_same_field(xs, ys)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ShapeError("x and y coordinates must be equal-length vectors")
    pairs = set(zip(xs.view(np.ndarray).tolist(), ys.view(np.ndarray).tolist()))
    if len(pairs) != xs.size:
        raise ParameterError("list decoding points must be pairwise distinct")
    return xs, ys


def sudan_parameters(n: int, k: int) -> Tuple[int, int]:
    """
    (d_x, d_y) = (ceil(sqrt(kn)), ceil(sqrt(n/k))), with d_x raised until
    d_x * d_y > n.
    """
    d_x = math.ceil(math.sqrt(k * n))
    d_y = math.ceil(math.sqrt(n / k))
    while d_x * d_y <= n:
        d_x += 1
    return d_x, d_y


def weighted_support(n: int, k: int, t: int) -> List[Tuple[int, int]]:
    """Monomials x^i y^j with i + k j < t and j <= sqrt(2n/k)."""
    j_max = math.floor(math.sqrt(2 * n / k))
    return [(i, j) for j in range(j_max + 1) for i in range(max(t - k * j, 0))]


def _interpolate_q(xs, ys, support: List[Tuple[int, int]], rows: int, cols: int) -> galois.FieldArray:
    """First null-space vector of the system Q(x_l, y_l) = 0, as a coefficient matrix."""
    gf = type(xs)
    i_exp = np.array([i for i, _ in support])
    j_exp = np.array([j for _, j in support])
    system = (xs[:, np.newaxis] ** i_exp[np.newaxis, :]) * (ys[:, np.newaxis] ** j_exp[np.newaxis, :])
    basis = solve_linear_system(system, homogeneous=True)
    if basis.shape[0] == 0:
        raise ParameterError("interpolation system has only the zero solution")
    coeffs = gf.Zeros((rows, cols))
    coeffs[i_exp, j_exp] = basis[0]
    return coeffs


def _collect(xs, ys, Q: BivariatePoly, k: int, t: int) -> List[ListCandidate]:
    out = []
    for p in bivariate_y_roots(Q, k):
        hits = int(np.count_nonzero(p(xs) == ys))
        if hits >= t:
            out.append(ListCandidate(polynomial=p, message=poly_coeffs(p, k), agreement=hits))
    return out


def sudan_list_decode(points, k: int, t: int) -> ListDecodeResult:
    """
    List-decode with a rectangular-degree interpolant.

    Args:
        points: n distinct (x, y) pairs (x may repeat), or arrays (xs, ys)
        k: Polynomials have degree <= k - 1
        t: Agreement threshold, t > 2 sqrt(nk)

    Returns:
        ListDecodeResult holding every polynomial with agreement >= t
    """
    xs, ys = _validate_points(points)
    n = xs.size
    if t <= 2 * math.sqrt(n * k):
        logger.warning("refusing sudan decode: t=%d <= 2*sqrt(nk)=%.3f", t, 2 * math.sqrt(n * k))
        raise ParameterError(f"t={t} must exceed 2*sqrt(nk)={2 * math.sqrt(n * k):.3f}")
    d_x, d_y = sudan_parameters(n, k)
    support = [(i, j) for j in range(d_y) for i in range(d_x)]
    coeffs = _interpolate_q(xs, ys, support, d_x, d_y)
    Q = BivariatePoly(coeffs, d_x=d_x, d_y=d_y)
    found = _collect(xs, ys, Q, k, t)
    logger.debug("rectangular sudan: d_x=%d d_y=%d found %d", d_x, d_y, len(found))
    return ListDecodeResult(found, bound=(d_x, d_y), unknowns=len(support), variant="rectangular")


def sudan_list_decode_weighted(points, k: int, t: int) -> ListDecodeResult:
    """
    List-decode with the (1, k)-weighted support i + k j < t.

    Requires t > sqrt(2nk) and a support of more than n monomials.
    """
    xs, ys = _validate_points(points)
    n = xs.size
    if t <= math.sqrt(2 * n * k):
        logger.warning("refusing weighted sudan decode: t=%d <= sqrt(2nk)=%.3f", t, math.sqrt(2 * n * k))
        raise ParameterError(f"t={t} must exceed sqrt(2nk)={math.sqrt(2 * n * k):.3f}")
    support = weighted_support(n, k, t)
    if len(support) <= n:
        raise ParameterError(f"weighted support has {len(support)} <= n={n} monomials")

    rows = max(i for i, _ in support) + 1
    cols = max(j for _, j in support) + 1
    coeffs = _interpolate_q(xs, ys, support, rows, cols)
    Q = BivariatePoly(coeffs, d_x=rows, d_y=cols, weighted=(k, t))
    found = _collect(xs, ys, Q, k, t)
    logger.debug("weighted sudan: %d monomials found %d", len(support), len(found))
    return ListDecodeResult(found, bound=(k, t), unknowns=len(support), variant="weighted")


def brute_force_list(points, k: int, t: int) -> List[tuple]:
    """Every degree < k polynomial (as a coefficient tuple) agreeing on >= t points."""
    xs, ys = _validate_points(points)
    q = type(xs).order
    if q ** k > BRUTE_FORCE_LIMIT:
        raise EnumerationLimitError(f"{q}^{k} candidates exceed {BRUTE_FORCE_LIMIT}")
    gf = type(xs)
    messages = gf(np.array(list(product(range(q), repeat=k)), dtype=np.int64))
    evaluations = messages @ (xs[np.newaxis, :] ** np.arange(k)[:, np.newaxis])
    hits = np.count_nonzero(evaluations == ys[np.newaxis, :], axis=1)
    return [tuple(int(c) for c in messages[i]) for i in np.flatnonzero(hits >= t)]


def rs_list_decode(code: RSCode, y, t: int, variant: str = "weighted") -> ListDecodeResult:
    """Apply a Sudan decoder to a received Reed-Solomon word."""
    symbols = getattr(y, "symbols", y)
    require_length(symbols, code.n)
    y = symbols if code.field.contains(symbols) else code.field(symbols)
    decoder = sudan_list_decode_weighted if variant == "weighted" else sudan_list_decode
    return decoder((code.points, y), code.k, t)


@dataclass(frozen=True)
class TradeoffRow:
    regime: str
    k: int
    agreement: float


def rate_list_tradeoff(n: int, eps: float) -> List[TradeoffRow]:
    """
    Two operating points of rectangular list decoding on length-n codes:
    k = eps n needs agreement 2 sqrt(eps) n, and k = eps^2 n / 4 needs eps n.
    """
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    return [
        TradeoffRow("rate-eps", max(1, int(eps * n)), 2 * math.sqrt(eps) * n),
        TradeoffRow("agreement-eps", max(1, int(eps * eps * n / 4)), eps * n),
    ]
