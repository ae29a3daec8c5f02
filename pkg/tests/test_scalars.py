"""Semiring scalar layer: coercion, negation, printing, bounded draws."""

from fractions import Fraction
from random import Random

import pytest

from tancat import scalars
from tancat.errors import SemiringViolation


def test_modes_inventory():
    assert scalars.MODES == (scalars.RATIONAL, scalars.NATURAL)
    with pytest.raises(ValueError):
        scalars.check_mode("real")


def test_coerce_rational_accepts_ints_and_fractions():
    assert scalars.coerce(scalars.RATIONAL, 3) == Fraction(3)
    assert scalars.coerce(scalars.RATIONAL, Fraction(-7, 2)) == Fraction(-7, 2)


def test_coerce_natural_rejects_negative_and_fractional():
    assert scalars.coerce(scalars.NATURAL, 5) == 5
    with pytest.raises(SemiringViolation):
        scalars.coerce(scalars.NATURAL, -1)
    with pytest.raises(SemiringViolation):
        scalars.coerce(scalars.NATURAL, Fraction(1, 2))


def test_coerce_rejects_floats():
    # exactness contract: floats never silently enter the scalar ring
    with pytest.raises(TypeError):
        scalars.coerce(scalars.RATIONAL, 0.5)


def test_negate_is_mode_gated():
    assert scalars.negate(scalars.RATIONAL, Fraction(4)) == Fraction(-4)
    with pytest.raises(SemiringViolation):
        scalars.negate(scalars.NATURAL, 4)


def test_random_scalar_ranges_and_determinism():
    for mode, lo in ((scalars.NATURAL, 0), (scalars.RATIONAL, -5)):
        draws = [scalars.random_scalar(mode, Random(11), 5) for _ in range(50)]
        again = [scalars.random_scalar(mode, Random(11), 5) for _ in range(50)]
        assert draws == again
        assert all(lo <= d <= 5 for d in draws)


def test_format_scalar():
    assert scalars.format_scalar(Fraction(3, 1)) == "3"
    assert scalars.format_scalar(Fraction(-7, 2)) == "-7/2"
    assert scalars.format_scalar(4) == "4"
