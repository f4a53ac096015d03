"""Exact rational scalars.

gmpy2.mpq is used when available (it is much faster for the large
coefficient arithmetic in the commuting-operator solver); fractions.Fraction
is the drop-in fallback.  Both keep denominators positive and fractions
reduced, which is all the rest of the package relies on.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    Q = _mpq
    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    Q = Fraction
    _HAVE_GMPY2 = False

QLike = object  # ints, Fractions, mpq, "p/q" strings

ZERO = Q(0)
ONE = Q(1)


def as_q(value) -> "Q":
    """Coerce ints, Fractions, mpq values or 'p/q' strings to Q."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing to coerce float %r to an exact rational; "
            "pass an int, Fraction, or 'p/q' string" % (value,)
        )
    return Q(value)


def parse_rational(text: str) -> "Q":
    """Parse 'p' or 'p/q' with optional sign.  Rejects decimals."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        return Q(int(num), int(den))
    return Q(int(s))


def q_str(value) -> str:
    """Canonical text form: 'p' or 'p/q' with positive q."""
    num = value.numerator
    den = value.denominator
    if den == 1:
        return str(num)
    return "%d/%d" % (num, den)


def q_float(value) -> float:
    num = value.numerator
    den = value.denominator
    try:
        return num / den
    except OverflowError:  # pragma: no cover
        return float(Fraction(int(num), int(den)))
