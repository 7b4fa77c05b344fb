"""Exact rational scalars.

Every coefficient in this package is an arbitrary-precision rational;
there is no floating point anywhere.  ``fractions.Fraction`` already
keeps values in lowest terms with a positive denominator, so it is used
directly as the scalar type.
"""

from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x, y=None):
    """Coerce to an exact rational.  Accepts ints, Fractions and 'p/q' strings."""
    if y is not None:
        return Fraction(x, y)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_to_str(c: Fraction) -> str:
    """Canonical decimal-string form used by the JSON serializers."""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def binomial(a: int, l: int) -> Fraction:
    """Generalized binomial coefficient C(a, l) for integer a (possibly
    negative) and l >= 0, as an exact rational (always an integer here)."""
    if l < 0:
        return ZERO
    num = 1
    for i in range(l):
        num *= a - i
    den = 1
    for i in range(2, l + 1):
        den *= i
    return Fraction(num, den)
