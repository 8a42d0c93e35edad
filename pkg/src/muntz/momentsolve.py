"""Constructive finite-section moment solver.

Given data d_1..d_N, the canonical solution in the section span is
f = sum d_n r_n, whose coefficient vector is G^-1 d; biorthogonality
makes the moment equations hold exactly up to rounding.  A growth fit
|d_n| ~ C * a**lam_n decides whether the data is compatible with a
convergent infinite-section limit (a below the domain radius).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import mpmath
from mpmath import mp

from .domain import WeightedDomain
from .errors import ValidationError
from .exponents import ExponentSequence
from .gram import gram, solve_spd
from .duals import dual_family
from .precision import DEFAULT_PRECISION_BITS, Real, to_mpf, workbits
from .series import MuntzSeries


@dataclass(frozen=True)
class MomentData:
    """Moment targets with their fitted geometric growth envelope."""

    d: Tuple[mpmath.mpf, ...]
    fitted_a: mpmath.mpf
    fitted_c: mpmath.mpf
    growth_ok: bool
    precision_bits: int


def fit_growth(
    d: Sequence[Real],
    lam: ExponentSequence,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """Fit the tightest envelope |d_n| <= C * a**lam_n.

    The base comes from a least-squares line through (lam_n, log |d_n|)
    over the nonzero entries, then C is maximized over all entries so
    the envelope actually covers the data.  Exactly geometric data is
    recovered exactly: d_n = C0 * a0**lam_n gives back (a0, C0).
    """
    if not list(d):
        raise ValidationError("moment data is empty")
    if len(d) > len(lam):
        raise ValidationError("more moment values than exponents")
    bits = precision_bits
    with workbits(bits):
        dv = [to_mpf(x, bits) for x in d]
        lams = lam.values_at(bits)[: len(dv)]
        points = [(lams[i], mp.log(abs(v))) for i, v in enumerate(dv) if v != 0]
        if not points:
            return mp.mpf(0), mp.mpf(0)
        if len(points) == 1:
            lam_n, logd = points[0]
            a = mp.exp(logd / lam_n)
            return a, mp.mpf(1)
        # least squares slope of log|d| against lam
        m = mp.mpf(len(points))
        sx = mp.fsum(x for x, _ in points)
        sy = mp.fsum(y for _, y in points)
        sxx = mp.fsum(x * x for x, _ in points)
        sxy = mp.fsum(x * y for x, y in points)
        slope = (m * sxy - sx * sy) / (m * sxx - sx * sx)
        a = mp.exp(slope)
        c = max(abs(v) / a ** lams[i] for i, v in enumerate(dv) if v != 0)
        return a, c


def build_moment_data(
    wd: WeightedDomain,
    lam: ExponentSequence,
    d: Sequence[Real],
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> MomentData:
    a, c = fit_growth(d, lam, precision_bits)
    with workbits(precision_bits):
        dv = tuple(to_mpf(x, precision_bits) for x in d)
        return MomentData(
            d=dv,
            fitted_a=a,
            fitted_c=c,
            growth_ok=a < wd.r_w,
            precision_bits=precision_bits,
        )


def solve_moments(
    wd: WeightedDomain,
    lam: ExponentSequence,
    data: MomentData,
    section: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> Tuple[MuntzSeries, List[mpmath.mpf]]:
    """Solve the leading-section moment equations exactly.

    Returns the coefficient-form solution and the per-equation residuals
    <f, x**lam_n> - d_n, which sit at rounding level for any data.  The
    solver runs regardless of growth_ok; the flag only predicts whether
    growing sections stay bounded.
    """
    if section > len(data.d):
        raise ValidationError(f"section {section} exceeds {len(data.d)} moment values")
    g = gram(wd, lam, section, precision_bits)
    bits = g.precision_bits
    with workbits(bits):
        rhs = list(data.d[:section])
        coeffs = solve_spd(g, rhs)
        residuals = []
        for i in range(section):
            attained = mp.fsum(g.entries[i, j] * coeffs[j] for j in range(section))
            residuals.append(attained - rhs[i])
        series = MuntzSeries(
            lam_ref=lam, coeffs=tuple(coeffs), radius=wd.r_w, precision_bits=bits
        )
        return series, residuals


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Growth of sum |d_n| * ||r_n|| across sections.

    A bounded, settling partial-sum sequence is the quantitative face of
    the dual-norm mechanism that yields the infinite-section solution
    when the growth fit passes; ratios near or above 1 signal trouble.
    """

    section_sizes: Tuple[int, ...]
    partial_sums: Tuple[mpmath.mpf, ...]
    solution_norms: Tuple[mpmath.mpf, ...]
    ratios: Tuple[mpmath.mpf, ...]
    growth_ok: bool


def convergence_certificate(
    wd: WeightedDomain,
    lam: ExponentSequence,
    data: MomentData,
    section_sizes: Sequence[int],
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> ConvergenceCertificate:
    """Tabulate sum_{n<=N} |d_n| ||r_n^(N)|| and solution norms over N."""
    sizes = list(section_sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValidationError("section sizes must be strictly increasing")
    sums = []
    norms = []
    for size in sizes:
        g = gram(wd, lam, size, precision_bits)
        fam = dual_family(g)
        with workbits(g.precision_bits):
            sums.append(
                mp.fsum(abs(data.d[k]) * fam.norms[k] for k in range(size))
            )
            coeffs = solve_spd(g, list(data.d[:size]))
            norm_sq = mp.fsum(coeffs[k] * data.d[k] for k in range(size))
            norms.append(mp.sqrt(norm_sq) if norm_sq > 0 else mp.mpf(0))
    with workbits(precision_bits):
        ratios = tuple(b / a if a != 0 else mp.mpf(0) for a, b in zip(sums, sums[1:]))
    return ConvergenceCertificate(
        section_sizes=tuple(sizes),
        partial_sums=tuple(sums),
        solution_norms=tuple(norms),
        ratios=ratios,
        growth_ok=data.growth_ok,
    )
