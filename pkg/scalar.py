"""
Exact Gaussian-rational scalars a + b*i with arbitrary-precision parts.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from errors import ParseError, ScalarDivisionError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, 'GaussianRational']

_RATIONAL = r'\d+(?:/\d+)?'
_SCALAR_RE = re.compile(
    rf'^(?P<re>[+-]?{_RATIONAL})?'
    rf'(?P<imag>(?P<isign>[+-])?(?:(?P<icoef>{_RATIONAL})\*)?i)?$'
)


@dataclass(frozen=True)
class GaussianRational:
    """A value of Q(i). Both parts are Fractions, always in lowest terms."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    @classmethod
    def coerce(cls, value: Number) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    def __add__(self, other: Number) -> 'GaussianRational':
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> 'GaussianRational':
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Number) -> 'GaussianRational':
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Number) -> 'GaussianRational':
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Number) -> 'GaussianRational':
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> 'GaussianRational':
        n = self.norm()
        if n == 0:
            raise ScalarDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other: Number) -> 'GaussianRational':
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> 'GaussianRational':
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> 'GaussianRational':
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational('{format_scalar(self)}')"


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))


def gq(value: Union[Number, str]) -> GaussianRational:
    """Build a scalar from an int, Fraction, GaussianRational or text form."""
    if isinstance(value, str):
        return parse_scalar(value)
    return GaussianRational.coerce(value)


def gq_arithmetic(x: GaussianRational, y: GaussianRational, op: str) -> GaussianRational:
    """Exact field operation named by op: add, sub, mul or div."""
    if op == 'add':
        return x + y
    if op == 'sub':
        return x - y
    if op == 'mul':
        return x * y
    if op == 'div':
        return x / y
    raise ValueError(f"unknown scalar operation: {op}")


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(x: GaussianRational) -> str:
    """Text form "a/b+c/d*i"; zero parts are omitted and a unit imaginary is "i"."""
    if x.im == 0:
        return _format_rational(x.re)
    magnitude = abs(x.im)
    imag = 'i' if magnitude == 1 else f"{_format_rational(magnitude)}*i"
    sign = '-' if x.im < 0 else '+'
    if x.re == 0:
        return imag if sign == '+' else f"-{imag}"
    return f"{_format_rational(x.re)}{sign}{imag}"


def parse_scalar(text: str) -> GaussianRational:
    """Parse the text form; accepts "3", "i", "-1/2*i", "1/2-3*i"."""
    compact = text.replace(' ', '')
    match = _SCALAR_RE.match(compact)
    if not compact or match is None:
        raise ParseError(f"not a Gaussian rational: {text!r}")
    try:
        real = Fraction(match.group('re')) if match.group('re') else Fraction(0)
        imag = Fraction(0)
        if match.group('imag'):
            imag = Fraction(match.group('icoef')) if match.group('icoef') else Fraction(1)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}")
    if match.group('imag'):
        if match.group('isign') == '-':
            imag = -imag
        elif match.group('isign') is None and match.group('re'):
            raise ParseError(f"missing sign before imaginary part: {text!r}")
    return GaussianRational(real, imag)
