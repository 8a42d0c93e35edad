"""Validated exponent sequences for power systems {x**lam_n}.

A sequence is a finite, strictly increasing prefix of positive reals.
Summability of 1/lam_n is an infinite-sequence property, so it is only
certified for generator-built sequences (lam_n = c * n**beta) where it
can be decided analytically; explicit lists carry tag "unknown".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mp

from .errors import MalformedConfig, NonIncreasing, NonPositive, ValidationError
from .precision import DEFAULT_PRECISION_BITS, Real, mpf_from_fraction, to_fraction, workbits

SUMMABLE = "summable_certified"
NONSUMMABLE = "nonsummable_certified"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PowerGenerator:
    """lam_n = c * n**beta for n = 1..count."""

    c: Fraction
    beta: Fraction
    count: int


@dataclass(frozen=True)
class ExponentSequence:
    values: Tuple[mpmath.mpf, ...]
    gap: mpmath.mpf
    summability_tag: str
    generator: Optional[PowerGenerator]
    precision_bits: int
    # exact values when representable (explicit input, or integer beta)
    raw: Optional[Tuple[Fraction, ...]]

    def __len__(self) -> int:
        return len(self.values)

    def values_at(self, bits: int) -> Tuple[mpmath.mpf, ...]:
        """The exponents re-derived at the requested width.

        Rational sequences round the exact values once; irrational
        generator values are recomputed from (c, beta)."""
        if self.raw is not None:
            return tuple(mpf_from_fraction(v, bits) for v in self.raw)
        gen = self.generator
        return _materialize(gen.c, gen.beta, gen.count, bits)


def _materialize(c: Fraction, beta: Fraction, count: int, bits: int):
    with workbits(bits):
        c_m = mpf_from_fraction(c, bits)
        b_m = mpf_from_fraction(beta, bits)
        return tuple(c_m * mp.mpf(n) ** b_m for n in range(1, count + 1))


def _validate(fracs_or_mpfs) -> None:
    prev = None
    for v in fracs_or_mpfs:
        if v <= 0:
            raise NonPositive(f"exponent {v} is not positive")
        if prev is not None and v <= prev:
            raise NonIncreasing(f"exponents not strictly increasing at {v}")
        prev = v


def build_exponents(
    spec: Union[Sequence[Real], dict],
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> ExponentSequence:
    """Build a sequence from an explicit list or a power-generator spec.

    ``spec`` is either a sequence of numbers, or a dict of the JSON forms
    {"kind": "explicit", "values": [...]} /
    {"kind": "power", "c": "1", "beta": "2", "count": 20}.
    """
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "explicit":
            return explicit_exponents(spec.get("values", []), precision_bits)
        if kind == "power":
            try:
                return power_exponents(
                    spec["c"], spec["beta"], int(spec["count"]), precision_bits
                )
            except KeyError as exc:
                raise MalformedConfig(f"power generator missing field {exc}") from exc
        raise MalformedConfig(f"unknown exponent kind {kind!r}")
    return explicit_exponents(spec, precision_bits)


def explicit_exponents(
    values: Sequence[Real], precision_bits: int = DEFAULT_PRECISION_BITS
) -> ExponentSequence:
    if not list(values):
        raise ValidationError("exponent list is empty")
    raw = tuple(to_fraction(v) for v in values)
    _validate(raw)
    vals = tuple(mpf_from_fraction(v, precision_bits) for v in raw)
    gap = _min_gap(vals, precision_bits)
    return ExponentSequence(
        values=vals,
        gap=gap,
        summability_tag=UNKNOWN,
        generator=None,
        precision_bits=precision_bits,
        raw=raw,
    )


def power_exponents(
    c: Real, beta: Real, count: int, precision_bits: int = DEFAULT_PRECISION_BITS
) -> ExponentSequence:
    c_f, b_f = to_fraction(c), to_fraction(beta)
    if c_f <= 0:
        raise NonPositive(f"generator scale c = {c_f} must be positive")
    if count < 1:
        raise ValidationError("generator count must be at least 1")
    gen = PowerGenerator(c=c_f, beta=b_f, count=count)
    if b_f.denominator == 1 and b_f >= 0:
        raw = tuple(c_f * Fraction(n) ** b_f for n in range(1, count + 1))
        _validate(raw)
        vals = tuple(mpf_from_fraction(v, precision_bits) for v in raw)
    else:
        raw = None
        vals = _materialize(c_f, b_f, count, precision_bits)
        _validate(vals)
    # sum of 1/(c n**beta) converges iff beta > 1
    tag = SUMMABLE if b_f > 1 else NONSUMMABLE
    gap = _min_gap(vals, precision_bits)
    return ExponentSequence(
        values=vals,
        gap=gap,
        summability_tag=tag,
        generator=gen,
        precision_bits=precision_bits,
        raw=raw,
    )


def _min_gap(vals, bits: int):
    with workbits(bits):
        if len(vals) == 1:
            return vals[0]  # degenerate: one element; gap proxy is lam_1 itself
        return min(b - a for a, b in zip(vals, vals[1:]))


def exponents_from_json(obj: dict, precision_bits: int = DEFAULT_PRECISION_BITS) -> ExponentSequence:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedConfig("exponent descriptor needs a 'kind' field")
    return build_exponents(obj, precision_bits)


def exponents_to_json(lam: ExponentSequence) -> dict:
    if lam.generator is not None:
        gen = lam.generator
        return {
            "kind": "power",
            "c": _frac_str(gen.c),
            "beta": _frac_str(gen.beta),
            "count": gen.count,
        }
    return {"kind": "explicit", "values": [_frac_str(v) for v in lam.raw]}


def _frac_str(fr: Fraction) -> str:
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"
