"""Weighted integration domains: finite unions of intervals with
piecewise power-law weights, and their exact power moments.

The weight on each interval is ``coeff * x**power`` with coeff > 0 and
power > -1, so every moment integral has a closed form and no quadrature
error enters the Gram matrices built downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import mpmath
from mpmath import mp

from .errors import (
    DegenerateInterval,
    MalformedConfig,
    NonintegrableWeight,
    OverlappingIntervals,
    ValidationError,
)
from .precision import DEFAULT_PRECISION_BITS, Real, mpf_from_fraction, to_fraction, workbits


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] on the nonnegative half-line, lo < hi."""

    lo: mpmath.mpf
    hi: mpmath.mpf


@dataclass(frozen=True)
class WeightPiece:
    """Weight coeff * x**power on one interval; power > -1 keeps the
    integral finite down to x = 0."""

    coeff: mpmath.mpf
    power: mpmath.mpf


@dataclass(frozen=True)
class WeightedDomain:
    """A finite union of disjoint intervals with one weight piece each.

    Attributes
    ----------
    intervals, weights : parallel tuples, sorted by increasing endpoints.
    r_a : essential supremum of the set (largest right endpoint).
    r_w : weighted essential supremum; equals r_a because the weight is
        strictly positive on every interval.
    total_measure : Lebesgue measure of the union.
    weight_mass : integral of the weight over the union.
    precision_bits : mantissa width the displayed mpf fields were built at.
    """

    intervals: Tuple[Interval, ...]
    weights: Tuple[WeightPiece, ...]
    r_a: mpmath.mpf
    r_w: mpmath.mpf
    total_measure: mpmath.mpf
    weight_mass: mpmath.mpf
    precision_bits: int
    # exact (lo, hi, coeff, power) per piece; source of truth for recomputation
    pieces: Tuple[Tuple[Fraction, Fraction, Fraction, Fraction], ...]

    def pieces_at(self, bits: int):
        """Per-piece (lo, hi, coeff, power) as mpf at the requested width."""
        return [
            tuple(mpf_from_fraction(v, bits) for v in piece) for piece in self.pieces
        ]

    @property
    def is_unit_lebesgue(self) -> bool:
        """True when the domain is exactly [0, 1] with weight 1."""
        return self.pieces == (((Fraction(0), Fraction(1), Fraction(1), Fraction(0))),)


def build_weighted_domain(
    intervals: Sequence[Tuple[Real, Real]],
    weights: Sequence[Tuple[Real, Real]],
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> WeightedDomain:
    """Validate and assemble a weighted domain.

    Parameters
    ----------
    intervals : sequence of (lo, hi) pairs; pairwise disjoint once sorted.
        Shared endpoints count as overlap and are rejected, not merged.
    weights : sequence of (coeff, power) pairs, one per interval.
    precision_bits : width at which the stored mpf views are rendered.

    Raises
    ------
    DegenerateInterval, OverlappingIntervals, NonintegrableWeight
    """
    if not intervals or not weights:
        raise ValidationError("need at least one interval and one weight piece")
    if len(intervals) != len(weights):
        raise ValidationError(
            f"{len(intervals)} intervals but {len(weights)} weight pieces"
        )

    pieces = []
    for (lo, hi), (coeff, power) in zip(intervals, weights):
        lo_f, hi_f = to_fraction(lo), to_fraction(hi)
        c_f, p_f = to_fraction(coeff), to_fraction(power)
        if lo_f < 0:
            raise DegenerateInterval(f"interval start {lo_f} is negative")
        if hi_f <= lo_f:
            raise DegenerateInterval(f"interval [{lo_f}, {hi_f}] has hi <= lo")
        if c_f <= 0:
            raise ValidationError(f"weight coefficient {c_f} must be positive")
        if p_f <= -1:
            raise NonintegrableWeight(
                f"weight power {p_f} <= -1 is not integrable near 0"
            )
        pieces.append((lo_f, hi_f, c_f, p_f))

    pieces.sort(key=lambda p: p[0])
    for (_, hi_prev, _, _), (lo_next, _, _, _) in zip(pieces, pieces[1:]):
        if lo_next <= hi_prev:
            raise OverlappingIntervals(
                f"intervals meet at or before x = {hi_prev}"
            )

    total = sum((hi - lo for lo, hi, _, _ in pieces), Fraction(0))
    r_a = max(hi for _, hi, _, _ in pieces)

    with workbits(precision_bits):
        mass = mp.mpf(0)
        for lo_f, hi_f, c_f, p_f in pieces:
            mass += _piece_moment(lo_f, hi_f, c_f, p_f, mp.mpf(0), precision_bits)
        ivs = tuple(
            Interval(mpf_from_fraction(lo, precision_bits), mpf_from_fraction(hi, precision_bits))
            for lo, hi, _, _ in pieces
        )
        wps = tuple(
            WeightPiece(mpf_from_fraction(c, precision_bits), mpf_from_fraction(p, precision_bits))
            for _, _, c, p in pieces
        )
        return WeightedDomain(
            intervals=ivs,
            weights=wps,
            r_a=mpf_from_fraction(r_a, precision_bits),
            r_w=mpf_from_fraction(r_a, precision_bits),
            total_measure=mpf_from_fraction(total, precision_bits),
            weight_mass=mass,
            precision_bits=precision_bits,
            pieces=tuple(pieces),
        )


def _piece_moment(lo: Fraction, hi: Fraction, coeff: Fraction, power: Fraction,
                  s, bits: int):
    """coeff * (hi**e - lo**e) / e with e = s + power + 1, at width bits."""
    e = s + mpf_from_fraction(power, bits) + 1
    hi_m = mpf_from_fraction(hi, bits)
    lo_m = mpf_from_fraction(lo, bits)
    hi_pow = hi_m ** e
    lo_pow = lo_m ** e if lo != 0 else mp.mpf(0)
    return mpf_from_fraction(coeff, bits) * (hi_pow - lo_pow) / e


def power_moment(wd: WeightedDomain, s: Real, precision_bits: Optional[int] = None):
    """Weighted moment: the integral of x**s * w(x) over the domain.

    Evaluated piece by piece from the closed form
    coeff * (hi**(s+power+1) - lo**(s+power+1)) / (s+power+1).
    """
    bits = precision_bits or wd.precision_bits
    with workbits(bits):
        if isinstance(s, mpmath.mpf):
            s_m = s
        else:
            s_m = mpf_from_fraction(to_fraction(s), bits)
        if s_m < 0:
            raise ValidationError(f"moment order s = {s_m} must be nonnegative")
        total = mp.mpf(0)
        for lo, hi, coeff, power in wd.pieces:
            total += _piece_moment(lo, hi, coeff, power, s_m, bits)
        return total


def domain_from_json(obj: dict, precision_bits: int = DEFAULT_PRECISION_BITS) -> WeightedDomain:
    """Build from the JSON descriptor
    {"intervals":[{"lo":"0","hi":"1"}], "weights":[{"coeff":"1","power":"0"}]}.

    Values may be decimal strings, which is the lossless form at high
    precision; plain JSON numbers are also accepted.
    """
    try:
        intervals = [(iv["lo"], iv["hi"]) for iv in obj["intervals"]]
        weights = [(wp["coeff"], wp["power"]) for wp in obj["weights"]]
    except (KeyError, TypeError) as exc:
        raise MalformedConfig(f"bad domain descriptor: {exc}") from exc
    return build_weighted_domain(intervals, weights, precision_bits)


def domain_to_json(wd: WeightedDomain) -> dict:
    """Inverse of ``domain_from_json``; values as exact decimal strings."""
    return {
        "intervals": [
            {"lo": _frac_str(lo), "hi": _frac_str(hi)} for lo, hi, _, _ in wd.pieces
        ],
        "weights": [
            {"coeff": _frac_str(c), "power": _frac_str(p)} for _, _, c, p in wd.pieces
        ],
    }


def _frac_str(fr: Fraction) -> str:
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"
