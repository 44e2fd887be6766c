import pytest

from banachcalc.errors import MalformedRational
from banachcalc.rationals import ONE, ZERO, parse_rat, qstr, rat, to_float


def test_parse_and_format_round_trip():
    for text in ["0", "1", "-1", "1/2", "-3/2", "22/7", "-1000000/7"]:
        assert qstr(parse_rat(text)) == text


def test_parse_enforces_canonical_spelling():
    for bad in ["2/4", "-6/4", "0/5", "1/-2", " 1/2", "1/2 "]:
        with pytest.raises(MalformedRational):
            parse_rat(bad)


def test_parse_rejects_garbage():
    for bad in ["1/0", "", "a", "1/ 2", "1//2", "1.5", "1/2/3", None]:
        with pytest.raises(MalformedRational):
            parse_rat(bad)


def test_rat_constants_and_arithmetic():
    assert ONE == rat(1)
    assert ZERO == rat(0)
    half = rat(1) / rat(2)
    assert half + half == ONE
    assert qstr(half) == "1/2"
    assert to_float(half) == 0.5


def test_float_rendering_precision():
    third = rat(1) / rat(3)
    assert abs(to_float(third) - 1 / 3) < 1e-15
