"""Arbitrary-precision plumbing shared by all modules.

Inputs arrive as decimal strings, ints, floats or Fractions and are held
exactly as rationals wherever possible, so that recomputing at a higher
mantissa width never inherits rounding from an earlier, coarser parse.
All computation happens inside ``workbits`` blocks; mpf values created
inside keep their full mantissa when the block exits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp
from mpmath.libmp import from_rational

DEFAULT_PRECISION_BITS = 256
MAX_PRECISION_BITS = 4096
MIN_PRECISION_BITS = 64

Real = Union[int, float, str, Fraction, mpmath.mpf]


def workbits(bits: int):
    """Context manager setting the working mantissa width in bits."""
    return mp.workprec(bits)


def to_fraction(x: Real) -> Fraction:
    """Exact rational capture of a numeric input.

    Decimal strings parse exactly ("0.1" -> 1/10); floats contribute their
    exact binary value; mpf values are man * 2**exp, also exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        sign, man, exp, _ = x._mpf_
        if man == 0 and exp != 0:
            raise ValueError("cannot capture non-finite value as rational")
        frac = Fraction(man) * Fraction(2) ** exp
        return -frac if sign else frac
    raise TypeError(f"cannot interpret {type(x).__name__} as a real number")


def mpf_from_fraction(fr: Fraction, bits: int) -> mpmath.mpf:
    """Correctly rounded mpf of an exact rational at the given width."""
    with workbits(bits):
        return mp.make_mpf(from_rational(fr.numerator, fr.denominator, mp.prec, "n"))


def to_mpf(x: Real, bits: int) -> mpmath.mpf:
    """Parse any accepted numeric input at the given width."""
    return mpf_from_fraction(to_fraction(x), bits)


def decimal_digits(bits: int) -> int:
    # log10(2) = 0.3010...; one extra guard digit keeps round-trips exact
    return max(17, int(bits * 0.3010299956639812) + 1)


def fmt(x, bits: int = DEFAULT_PRECISION_BITS) -> str:
    """Decimal-string rendering at significance derived from the precision."""
    with workbits(bits):
        return mp.nstr(mpmath.mpf(x), decimal_digits(bits), strip_zeros=True)
