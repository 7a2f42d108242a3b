from fractions import Fraction

import pytest

from errors import ParseError, ScalarDivisionError
from scalar import I, ONE, ZERO, GaussianRational, format_scalar, gq, gq_arithmetic, parse_scalar


def test_arithmetic_is_exact():
    x = gq('1/2') + gq('1/3*i')
    assert x == GaussianRational(Fraction(1, 2), Fraction(1, 3))
    assert I * I == -ONE
    assert (ONE + I) * (ONE - I) == gq(2)
    assert gq(3) / gq(6) == gq('1/2')
    assert (ONE + I) ** 2 == 2 * I
    assert 1 - I == gq('1-i')


def test_inverse_and_division_by_zero():
    assert (ONE + I).inverse() == gq('1/2-1/2*i')
    with pytest.raises(ScalarDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_format_scalar():
    assert format_scalar(gq('1/2+1/3*i')) == '1/2+1/3*i'
    assert format_scalar(I) == 'i'
    assert format_scalar(-I) == '-i'
    assert format_scalar(gq(-11) / 6) == '-11/6'
    assert format_scalar(I / 2) == '1/2*i'
    assert format_scalar(ZERO) == '0'


def test_parse_scalar_accepts_printed_forms():
    for text in ('3', '-19/24', 'i', '-1/2*i', '1/2-3*i', '4+i'):
        assert format_scalar(parse_scalar(text)) == text


@pytest.mark.parametrize('text', ['', 'abc', '1/0', '2i', '1/2 3*i', '3*i+1'])
def test_parse_scalar_rejects_garbage(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_gq_arithmetic_names():
    x, y = gq('1/2'), gq('i')
    assert gq_arithmetic(x, y, 'add') == gq('1/2+i')
    assert gq_arithmetic(x, y, 'mul') == gq('1/2*i')
    assert gq_arithmetic(x, y, 'div') == gq('-1/2*i')
    with pytest.raises(ValueError):
        gq_arithmetic(x, y, 'pow')
