"""Tiny validation helpers with friendly error messages."""

from typing import Iterable

from utils.errors import DomainError, PreconditionError


def validate_same_kind(expected, actual) -> None:
    """Both operands must live in the same Jordan algebra."""
    if expected is not actual:
        raise DomainError(f"Kind mismatch: {expected.value} vs {actual.value}.")


def validate_same_domain(expected, actual) -> None:
    """Integer and rational operands never mix."""
    if expected is not actual:
        raise DomainError(f"Scalar mismatch: {expected.value} vs {actual.value}.")


def validate_int_domain(domain, operation: str) -> None:
    """Operations built on gcds only make sense over the integers."""
    if not domain.integral:
        raise DomainError(f"{operation} needs integer scalars.")


def validate_rat_domain(domain, operation: str) -> None:
    if domain.integral:
        raise DomainError(f"{operation} needs rational scalars (--scalars rat).")


def validate_kind_in(kind, allowed: Iterable, operation: str) -> None:
    """Restrict an operation to the kinds it supports."""
    allowed = tuple(allowed)
    if kind not in allowed:
        names = ", ".join(k.value for k in allowed)
        raise PreconditionError(f"{operation} supports {names}, not {kind.value}.")


def validate_hermitian(kind, operation: str) -> None:
    if not kind.hermitian:
        raise PreconditionError(f"{operation} needs a Hermitian kind, not {kind.value}.")


def validate_nonzero(x, what: str) -> None:
    if x.is_zero():
        raise PreconditionError(f"{what} must be nonzero.")


def validate_slot(slot: int) -> int:
    """Slots are numbered 1..3 on the outside and 0..2 inside."""
    if slot not in (1, 2, 3):
        raise PreconditionError("Slot must be 1, 2 or 3.")
    return slot - 1


def validate_height(height: int) -> int:
    if height < 1:
        raise PreconditionError("Height must be at least 1.")
    return height
