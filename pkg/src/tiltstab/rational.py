"""Parsing and formatting of exact rationals.

Rationals travel through JSON and CSV either as integers or as ``"p/q"``
strings in lowest terms with ``q > 0``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction`; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    """``Fraction(3, 2)`` -> ``"3/2"``, ``Fraction(4)`` -> ``"4"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_json_value(value: Fraction) -> int | str:
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return format_rational(value)
