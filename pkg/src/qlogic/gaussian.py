"""Gaussian rationals: exact complex scalars with Fraction parts."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ModelValidationError

_RAT = r"[+-]?\d+(?:/[1-9]\d*)?"
_RE_REAL = re.compile(rf"^({_RAT})$")
_RE_IMAG = re.compile(rf"^({_RAT})i$")
_RE_BOTH = re.compile(rf"^({_RAT})([+-]\d+(?:/[1-9]\d*)?)i$")

RationalLike = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts.

    Field operations are closed and exact; equality is decidable.  Values
    are kept in lowest terms by Fraction itself.
    """

    real: Fraction = Fraction(0)
    imag: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "real", Fraction(self.real))
        object.__setattr__(self, "imag", Fraction(self.imag))

    @property
    def is_zero(self) -> bool:
        return self.real == 0 and self.imag == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.real - other.real, self.imag - other.imag)

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.real, -self.imag)

    def __mul__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    def __truediv__(self, other: GaussianRational) -> GaussianRational:
        return self * other.inverse()

    def inverse(self) -> GaussianRational:
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.real / n, -self.imag / n)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.real, -self.imag)

    def abs2(self) -> Fraction:
        """Squared modulus, an exact nonnegative rational."""
        return self.real * self.real + self.imag * self.imag

    def sort_key(self) -> tuple[int, int, int, int]:
        return (
            self.real.numerator,
            self.real.denominator,
            self.imag.numerator,
            self.imag.denominator,
        )

    def __str__(self) -> str:
        return format_scalar(self)


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(Fraction(1))


def gr(real: RationalLike = 0, imag: RationalLike = 0) -> GaussianRational:
    """Shorthand constructor accepting ints and Fractions."""
    return GaussianRational(Fraction(real), Fraction(imag))


def parse_scalar(text: str) -> GaussianRational:
    """Parse a scalar literal: "1", "-1/2", "0+1i", "3/4-1/4i", "2i"."""
    s = text.strip()
    m = _RE_BOTH.match(s)
    if m:
        return GaussianRational(Fraction(m.group(1)), Fraction(m.group(2)))
    m = _RE_IMAG.match(s)
    if m:
        return GaussianRational(Fraction(0), Fraction(m.group(1)))
    m = _RE_REAL.match(s)
    if m:
        return GaussianRational(Fraction(m.group(1)))
    raise ModelValidationError(f"malformed scalar literal {text!r}")


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical literal; parse_scalar(format_scalar(z)) == z."""
    if z.imag == 0:
        return _frac_str(z.real)
    sign = "+" if z.imag > 0 else "-"
    return f"{_frac_str(z.real)}{sign}{_frac_str(abs(z.imag))}i"


def parse_vector(parts: list[str]) -> tuple[GaussianRational, ...]:
    return tuple(parse_scalar(p) for p in parts)


def vector_strings(vec: tuple[GaussianRational, ...]) -> list[str]:
    return [format_scalar(z) for z in vec]
