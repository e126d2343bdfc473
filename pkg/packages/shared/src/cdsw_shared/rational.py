"""Exact rational codec used by reports and the cache.

Rationals travel as ``"p/q"`` strings (``"3"`` when integral) so JSON documents
stay exact and diff-able.
"""

from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Union

Rational = Union[int, Fraction]


def to_fraction(value: Any) -> Fraction:
    """
    Convert ints, Fractions, ``"p/q"`` strings and sympy/gmpy rationals to Fraction.

    Args:
        value: Any exact rational representation

    Returns:
        The value as a Fraction

    Raises:
        TypeError: If the value is a float or otherwise inexact
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"inexact value {value!r}: floats are not allowed")
    # sympy Rational / PythonMPQ / gmpy2 mpq all expose numerator/denominator
    numerator = getattr(value, "numerator", None)
    denominator = getattr(value, "denominator", None)
    if numerator is None or denominator is None:
        if hasattr(value, "p") and hasattr(value, "q"):
            return Fraction(int(value.p), int(value.q))
        raise TypeError(f"cannot convert {type(value).__name__} to Fraction")
    if callable(numerator):
        numerator, denominator = numerator(), denominator()
    return Fraction(int(numerator), int(denominator))


def format_rational(value: Rational) -> str:
    """Format a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse a ``"p/q"`` string."""
    return Fraction(text)


def format_vector(values: Iterable[Rational]) -> List[str]:
    """Format a sequence of rationals."""
    return [format_rational(v) for v in values]


def is_integral(values: Sequence[Rational]) -> bool:
    """Whether every entry is an integer."""
    return all(to_fraction(v).denominator == 1 for v in values)
