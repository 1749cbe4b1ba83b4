"""Exact rational scalars.

Everything geometric in the package is an ``mpq``.  Floats are accepted on
input only because their binary value is exact; nothing ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

from gmpy2 import mpq

Scalar = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def scalar(value) -> Scalar:
    """Coerce ints, strings ("p/q", "-3", "1.25"), Fractions and mpq to mpq."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar literal")
        try:
            if "." in text or "e" in text.lower():
                return mpq(Fraction(text))
            return mpq(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {text!r}") from None
    if isinstance(value, (int, Fraction, Rational)) or type(value).__name__ == "mpz":
        return mpq(value)
    if isinstance(value, float):
        return mpq(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def fmt(value: Scalar) -> str:
    """Canonical text form: integer literal or ``p/q`` in lowest terms."""
    value = scalar(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def sign(value) -> int:
    return (value > 0) - (value < 0)


def bit_length(value: Scalar) -> int:
    """Bits needed for numerator plus denominator; used for growth statistics."""
    return int(abs(value.numerator)).bit_length() + int(value.denominator).bit_length()


def isqrt_floor(value: Scalar) -> Scalar:
    """A rational r with r*r <= value, within 2**-20 relative accuracy.

    Used only to turn squared distances into conservative safe bounds.
    """
    if value <= 0:
        return ZERO
    scale = 1 << 40
    num = int(value.numerator) * scale * scale
    return mpq(isqrt(num // int(value.denominator)), scale)
