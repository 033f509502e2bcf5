"""Scalar layer: exact rationals inside, floats at the boundary.

All geometry in this package runs on fractions.Fraction. Spaces tagged
"float" embed their data exactly (Fraction(float) is lossless; float
denominators are powers of two) and convert back to floats only when a
value leaves the library. Tolerances therefore matter in exactly one
place: predicates over float-mode spaces, which compare against EPS
instead of zero.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError

Scalar = Fraction

RATIONAL = "rational"
FLOAT = "float"

DEFAULT_TOLERANCE = Fraction(1, 10**9)

DIMENSION_CAP = 16


def exactify(value: int | float | Fraction | str) -> Fraction:
    """Convert a number (or a "p/q" string) to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse scalar {value!r}") from exc
    raise InvalidInputError(f"cannot parse scalar of type {type(value).__name__}")


def merge_arithmetic(*modes: str) -> str:
    """Combined arithmetic mode: float wins over rational."""
    for mode in modes:
        if mode not in (RATIONAL, FLOAT):
            raise InvalidInputError(f"unknown arithmetic mode {mode!r}")
    return FLOAT if FLOAT in modes else RATIONAL


def tolerance_for(mode: str, tol: Fraction | float | None = None) -> Fraction:
    """Comparison slack for a mode: zero when rational, EPS when float."""
    if tol is not None:
        return exactify(tol)
    return Fraction(0) if mode == RATIONAL else DEFAULT_TOLERANCE


def emit(value: Fraction, mode: str) -> int | str | float:
    """Render a scalar for JSON: ints or "p/q" in rational mode, float otherwise."""
    if mode == RATIONAL:
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return float(value)
