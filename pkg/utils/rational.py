"""
Exact-rational coordinate handling.

Coordinates arrive as JSON numbers, decimal strings or "p/q" strings. Strings
are kept exact (as Fraction); doubles are exact only through their shortest
decimal representation, which is what the user typed in practice.
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp


def parse_scalar(value: float | int | str) -> tuple[float, Fraction | None]:
    """Return (float value, exact value or None)."""
    if isinstance(value, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, int):
        return float(value), Fraction(value)
    if isinstance(value, float):
        return value, None
    text = str(value).strip()
    try:
        exact = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational coordinate: {value!r}") from e
    return float(exact), exact


def as_fraction(value: float | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(repr(float(value)))


def to_sympy(value: float | Fraction) -> sp.Rational:
    q = as_fraction(value)
    return sp.Rational(q.numerator, q.denominator)


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: sp.Expr) -> list[str]:
    """[re, im] of a Gaussian rational as "p/q" strings."""
    re, im = sp.Rational(sp.re(z)), sp.Rational(sp.im(z))
    return [format_fraction(Fraction(int(re.p), int(re.q))),
            format_fraction(Fraction(int(im.p), int(im.q)))]
