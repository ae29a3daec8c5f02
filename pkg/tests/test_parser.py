"""Expression grammar: frozen readings, roundtrips, and rejection positions."""

from random import Random

import pytest

from tancat import scalars
from tancat.errors import PolyParseError, SemiringViolation
from tancat.parser import parse_poly, parse_polymap
from tancat.poly import (
    Poly,
    polymap_to_str,
    poly_to_str,
    random_polymap,
)


def test_reads_two_variable_polynomial():
    p = parse_poly("x0^2*x1 + 3", 2, scalars.RATIONAL)
    assert p == Poly.from_terms(2, [((2, 1), 1), ((0, 0), 3)], scalars.RATIONAL)


def test_reads_multi_component_map():
    f = parse_polymap("x0; x0 + x1", 2, scalars.RATIONAL)
    assert f.dom == 2 and f.cod == 2
    assert polymap_to_str(f) == "x0; x0 + x1"


def test_natural_mode_rejects_minus():
    with pytest.raises(SemiringViolation):
        parse_poly("-x0", 1, scalars.NATURAL)
    with pytest.raises(SemiringViolation):
        parse_poly("x0 - 1", 1, scalars.NATURAL)
    with pytest.raises(SemiringViolation):
        parse_poly("1/2", 1, scalars.NATURAL)


def test_rational_mode_subtraction_and_fractions():
    p = parse_poly("x0 - 1", 1, scalars.RATIONAL)
    assert poly_to_str(p) == "x0 - 1"
    q = parse_poly("1/2 * x0^2", 1, scalars.RATIONAL)
    assert poly_to_str(q) == "1/2*x0^2"


def test_roundtrip_through_printer():
    rng = Random(17)
    for mode in scalars.MODES:
        for _ in range(25):
            dom = rng.randint(1, 3)
            cod = rng.randint(1, 3)
            f = random_polymap(dom, cod, 3, 5, rng, mode)
            assert parse_polymap(polymap_to_str(f), dom, mode) == f


def test_error_positions_are_character_accurate():
    with pytest.raises(PolyParseError) as e:
        parse_poly("x0 + %", 1, scalars.RATIONAL)
    assert e.value.pos == 5
    with pytest.raises(PolyParseError) as e:
        parse_poly("x0 ^ x1", 2, scalars.RATIONAL)
    assert e.value.pos == 5
    with pytest.raises(PolyParseError) as e:
        parse_poly("x0 +", 1, scalars.RATIONAL)
    assert "end of input" in str(e.value)


def test_variable_index_bound():
    with pytest.raises(PolyParseError):
        parse_poly("x5", 2, scalars.RATIONAL)
    parse_poly("x1", 2, scalars.RATIONAL)  # in range is fine


def test_zero_denominator_rejected():
    with pytest.raises(PolyParseError):
        parse_poly("1/0", 1, scalars.RATIONAL)


def test_parse_poly_rejects_component_separator():
    with pytest.raises(PolyParseError):
        parse_poly("x0; x0", 1, scalars.RATIONAL)


def test_parentheses_and_powers():
    p = parse_poly("(x0 + 1)^2", 1, scalars.RATIONAL)
    assert poly_to_str(p) == "x0^2 + 2*x0 + 1"
    q = parse_poly("2*(x0 + x1)*(x0)", 2, scalars.RATIONAL)
    assert poly_to_str(q) == "2*x0^2 + 2*x0*x1"
