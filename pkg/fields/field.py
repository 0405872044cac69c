"""
Finite Fields - Coding Lab
Field descriptors and element arithmetic for GF(p), GF(2^m) and GF(p^m)

Arrays of field elements are ``galois.FieldArray`` instances; a ``Field``
wraps the array class together with the descriptor the rest of the library
reasons about (kind, order, modulus).
"""

import logging
from functools import lru_cache
from typing import Dict, Optional, Sequence, Union

import galois
import numpy as np

from errors import FieldDivisionByZero, FieldMismatchError, ParameterError

logger = logging.getLogger(__name__)

# ========================================
# BINARY EXTENSION MODULI
# ========================================

# Integer form of the modulus: bit i is the coefficient of x^i.
BINARY_MODULI: Dict[int, int] = {
    2: 0x7,        # x^2 + x + 1
    3: 0xB,        # x^3 + x + 1
    4: 0x13,       # x^4 + x + 1
    5: 0x25,       # x^5 + x^2 + 1
    6: 0x43,       # x^6 + x + 1
    7: 0x83,       # x^7 + x + 1
    8: 0x11D,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,      # x^9 + x^4 + 1
    10: 0x409,     # x^10 + x^3 + 1
    11: 0x805,     # x^11 + x^2 + 1
    12: 0x1053,    # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,    # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,    # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,    # x^15 + x + 1
    16: 0x1100B,   # x^16 + x^12 + x^3 + x + 1
}

MAX_BINARY_DEGREE = 16

FieldElement = galois.FieldArray


class Field:
    """
    Descriptor for a finite field of order q = p^m.

    Attributes:
        kind (str): "prime", "binary" (GF(2^m), m >= 2) or "extension" (GF(p^m), p odd)
        order (int): Number of elements q
        characteristic (int): The prime p
        degree (int): Extension degree m
        modulus (int | None): Integer form of the binary modulus polynomial
        gf: The ``galois`` array class for the field
    """

    def __init__(self, order: int, modulus: Optional[int] = None):
        if order < 2:
            raise ParameterError(f"field order {order} is not a prime power")
        primes, exponents = galois.factors(order)
        if len(primes) != 1:
            raise ParameterError(f"field order {order} is not a prime power")

        self.order = int(order)
        self.characteristic = int(primes[0])
        self.degree = int(exponents[0])
        self.modulus: Optional[int] = None

        if self.degree == 1:
            self.kind = "prime"
            self.gf = galois.GF(self.characteristic)
        elif self.characteristic == 2:
            if self.degree > MAX_BINARY_DEGREE and modulus is None:
                raise ParameterError(f"no built-in modulus for GF(2^{self.degree})")
            self.kind = "binary"
            self.modulus = int(modulus if modulus is not None else BINARY_MODULI[self.degree])
            self._verify_modulus()
            self.gf = galois.GF(2 ** self.degree, irreducible_poly=self.modulus)
        else:
            # Odd-characteristic extensions use the library's Conway polynomial.
            self.kind = "extension"
            self.gf = galois.GF(self.characteristic ** self.degree)

        logger.debug("constructed %s", self)

    def _verify_modulus(self) -> None:
        poly = galois.Poly.Int(self.modulus, field=galois.GF(2))
        if poly.degree != self.degree or not poly.is_irreducible():
            raise ParameterError(
                f"modulus {self.modulus:#x} is not irreducible of degree {self.degree}"
            )

    # ========================================
    # ELEMENT CONSTRUCTION
    # ========================================

    def __call__(self, values: Union[int, Sequence, np.ndarray]) -> galois.FieldArray:
        """Lift integers (canonical residues) into field elements."""
        return self.gf(values)

    def zeros(self, shape) -> galois.FieldArray:
        return self.gf.Zeros(shape)

    def elements(self) -> galois.FieldArray:
        """All q elements in canonical order 0, 1, ..., q-1."""
        return self.gf.elements

    def nonzero_elements(self) -> galois.FieldArray:
        return self.gf(np.arange(1, self.order))

    def random(self, shape, rng: np.random.Generator) -> galois.FieldArray:
        return self.gf(rng.integers(0, self.order, size=shape))

    def random_nonzero(self, shape, rng: np.random.Generator) -> galois.FieldArray:
        return self.gf(rng.integers(1, self.order, size=shape))

    def contains(self, array) -> bool:
        return isinstance(array, galois.FieldArray) and same_field(type(array), self.gf)

    @property
    def bits_per_symbol(self) -> int:
        return int(np.ceil(np.log2(self.order)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.order == other.order
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.order, self.modulus))

    def __repr__(self) -> str:
        if self.kind == "binary":
            return f"Field(GF(2^{self.degree}), modulus={self.modulus:#x})"
        return f"Field(GF({self.order}))"


@lru_cache(maxsize=None)
def get_field(order: int, modulus: Optional[int] = None) -> Field:
    """Cached field lookup; one descriptor per (order, modulus)."""
    return Field(order, modulus)


def field_of(array: galois.FieldArray) -> Field:
    """Recover the descriptor for an array produced by one of our fields."""
    gf = type(array)
    modulus = None
    if gf.characteristic == 2 and gf.degree > 1:
        modulus = int(gf.irreducible_poly)
    return get_field(int(gf.order), modulus)


def same_field(gf_a, gf_b) -> bool:
    if gf_a is gf_b:
        return True
    return (
        gf_a.order == gf_b.order
        and int(gf_a.irreducible_poly) == int(gf_b.irreducible_poly)
    )


def require_same_field(*arrays: galois.FieldArray) -> None:
    """Raise FieldMismatchError unless every argument lives in one field."""
    for array in arrays:
        if not isinstance(array, galois.FieldArray):
            raise FieldMismatchError(f"expected a field element, got {type(array).__name__}")
    first = type(arrays[0])
    for array in arrays[1:]:
        if not same_field(first, type(array)):
            raise FieldMismatchError(f"{first.name} and {type(array).name} differ")


# ========================================
# ELEMENT ARITHMETIC
# ========================================

def field_arith(a: FieldElement, b: Optional[FieldElement], op: str) -> FieldElement:
    """
    Apply one field operation.

    Args:
        a: Left operand
        b: Right operand; for "pow" an integer exponent, ignored for "inv"
        op: One of add, sub, mul, div, inv, pow

    Returns:
        The result, in the operands' field

    Raises:
        FieldMismatchError: operands from different fields
        FieldDivisionByZero: zero divisor for div, zero operand for inv
    """
    if op == "inv":
        require_same_field(a)
        if np.any(a == 0):
            raise FieldDivisionByZero("zero has no multiplicative inverse")
        return np.reciprocal(a)

    if op == "pow":
        require_same_field(a)
        exponent = int(b)
        if exponent < 0 and np.any(a == 0):
            raise FieldDivisionByZero("negative power of zero")
        return a ** exponent

    require_same_field(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if np.any(b == 0):
            raise FieldDivisionByZero("division by zero")
        return a / b
    raise ParameterError(f"unknown field operation {op!r}")
