import re
from fractions import Fraction
from typing import Union

import sympy

from .validation import HarmoniumError

Ratio = Union[int, Fraction, float, sympy.Expr]

_POWER = re.compile(r"^\s*([^\^]+?)\s*\^\s*\(?\s*([^()]+?)\s*\)?\s*$")


def parse_ratio(text: str) -> Ratio:
    """
    Parses a ratio or frequency written on the command line.

    Accepted forms are integers (``132``), fractions (``3/2``), decimals
    (``148.5``, read exactly) and powers (``2^(7/12)``). A power whose value
    is rational comes back as a Fraction, otherwise as a sympy expression.

    Parameters:
    text : str
        The text to parse.

    Returns:
    Ratio
        A Fraction for every rational value, a sympy expression otherwise.
    """
    text = text.strip()
    match = _POWER.match(text)
    if match:
        base, exponent = (_parse_rational(part) for part in match.groups())
        value = sympy.Rational(base.numerator, base.denominator) ** sympy.Rational(
            exponent.numerator, exponent.denominator)
        if value.is_rational:
            return Fraction(int(value.p), int(value.q))
        return value
    return _parse_rational(text)


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise HarmoniumError(f"cannot read {text!r} as a ratio") from exc


def format_ratio(value: Ratio) -> str:
    """Renders a ratio as ``p/q``, an integer, or a decimal with 12 significant digits."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, sympy.Expr):
        return str(value)
    return f"{value:.12g}"


def json_ratio(value: Ratio):
    """JSON form: exact values as ``"p/q"`` strings (integers stay integers), reals as floats."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, sympy.Expr)):
        return format_ratio(value)
    return float(value)
