"""
Exact scalar helpers shared by every model module.

Scalars are plain Python ints in the integer domain and
``fractions.Fraction`` values in the rational domain. Nothing here ever
touches floating point.
"""

import math
import random
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from utils.errors import DomainError, ParseError, PreconditionError

Scalar = Union[int, Fraction]


def gcd_all(values: Iterable[int]) -> int:
    """Nonnegative gcd of a collection of integers (0 for an empty or all-zero one)."""
    return reduce(math.gcd, (int(v) for v in values), 0)


def is_integral(value) -> bool:
    """True when a scalar is an integer, whatever its Python type."""
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    return False


def exact_div(numerator: Scalar, denominator: Scalar, integral: bool = True) -> Scalar:
    """Divide exactly, refusing a remainder in the integer domain."""
    if denominator == 0:
        raise DomainError("Division by zero.")
    if not integral:
        return Fraction(numerator) / Fraction(denominator)
    numerator, denominator = int(numerator), int(denominator)
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise DomainError(f"{numerator} is not divisible by {denominator} over the integers.")
    return quotient


def nearest_quotient(numerator: int, denominator: int) -> int:
    """Quotient q with |numerator - q*denominator| <= |denominator|/2."""
    if denominator == 0:
        raise PreconditionError("Cannot round a quotient by zero.")
    return round(Fraction(int(numerator), int(denominator)))


def positive_residue_shift(value: int, modulus: int) -> int:
    """Multiplier t with value - t*modulus in {1, ..., modulus}."""
    return (int(value) - 1) // int(modulus)


def sign(value) -> int:
    """-1, 0 or 1."""
    return (value > 0) - (value < 0)


def to_scalar(value, integral: bool) -> Scalar:
    """Coerce a decoded number into the requested domain."""
    if integral:
        if not is_integral(value):
            raise DomainError(f"{value} is not an integer; use --scalars rat.")
        return int(value)
    return Fraction(value)


def parse_scalar(raw, integral: bool = True) -> Scalar:
    """Decode a JSON scalar: an integer or a 'p/q' string."""
    if isinstance(raw, bool):
        raise ParseError(f"Expected a number, got {raw!r}.")
    if isinstance(raw, int):
        return to_scalar(raw, integral)
    if isinstance(raw, str):
        try:
            value = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"Cannot read {raw!r} as an exact scalar.")
        return to_scalar(value, integral)
    raise ParseError(f"Expected an integer or a 'p/q' string, got {raw!r}.")


def format_scalar(value: Scalar):
    """Encode a scalar for JSON: ints stay ints, other rationals become 'p/q'."""
    if is_integral(value):
        return int(value)
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def random_scalar(rng: random.Random, height: int) -> int:
    """Uniform integer in [-height, height]."""
    return rng.randint(-height, height)
