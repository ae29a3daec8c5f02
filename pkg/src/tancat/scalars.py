"""Scalar semirings: exact rationals, and naturals without subtraction.

A scalar is a plain ``Fraction`` (rational mode) or a nonnegative ``int``
(natural mode); the mode tag lives on the enclosing polynomial, not on the
scalar itself.  Addition and multiplication are the built-in operators, which
both semirings are closed under; only negation, coercion, parsing, printing
and random drawing need to consult the mode.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .errors import SemiringViolation

RATIONAL = "rational"
NATURAL = "natural"
MODES = (RATIONAL, NATURAL)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}; expected one of {MODES}")
    return mode


def coerce(mode: str, value) -> "Fraction | int":
    """Normalize an int or Fraction into the semiring of ``mode``.

    Rational scalars are Fractions (lowest terms, positive denominator is
    what Fraction guarantees).  Natural scalars are nonnegative ints; a
    fractional or negative input is a semiring violation, not a rounding.
    """
    check_mode(mode)
    if isinstance(value, Fraction):
        pass
    elif isinstance(value, int):
        value = Fraction(value)
    else:
        raise TypeError(f"scalar must be int or Fraction, got {type(value).__name__}")
    if mode == NATURAL:
        if value.denominator != 1 or value < 0:
            raise SemiringViolation(f"{value} is not a natural number")
        return value.numerator
    return value


def negate(mode: str, value):
    if mode == NATURAL:
        raise SemiringViolation("negation is not available over the naturals")
    return -value


def random_scalar(mode: str, rng: Random, bound: int):
    """Uniform draw from the bounded range: [0, bound] natural, [-bound, bound] rational."""
    check_mode(mode)
    if mode == NATURAL:
        return rng.randint(0, bound)
    return Fraction(rng.randint(-bound, bound))


def format_scalar(value) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))
