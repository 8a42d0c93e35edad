"""Power series over an exponent sequence: projection, evaluation,
coefficient-convergence tracking and the grid Christoffel bound.

All targets are restricted to forms whose inner products against the
section powers reduce to closed-form moments, so every projection is
free of quadrature error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import mpmath
from mpmath import mp

from .domain import WeightedDomain, power_moment
from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NegativeResidualSquared,
    OutsideRadius,
    ValidationError,
)
from .exponents import ExponentSequence
from .gram import forward_substitution, gram, solve_spd
from .precision import DEFAULT_PRECISION_BITS, Real, to_mpf, workbits


@dataclass(frozen=True)
class MuntzSeries:
    """Finite combination sum a_k * x**lam_k, evaluable on [0, radius)."""

    lam_ref: ExponentSequence
    coeffs: Tuple[mpmath.mpf, ...]
    radius: mpmath.mpf
    precision_bits: int

    def __post_init__(self):
        if len(self.coeffs) > len(self.lam_ref):
            raise LengthMismatch(
                f"{len(self.coeffs)} coefficients but only {len(self.lam_ref)} exponents"
            )


@dataclass(frozen=True)
class TargetFunction:
    """Projection target: either an explicit series or a single power x**mu."""

    kind: str  # "muntz_combo" | "pure_power"
    series: Optional[MuntzSeries] = None
    mu: Optional[mpmath.mpf] = None

    @staticmethod
    def pure_power(mu: Real, precision_bits: int = DEFAULT_PRECISION_BITS) -> "TargetFunction":
        m = to_mpf(mu, precision_bits)
        if m < 0:
            raise ValidationError(f"pure power exponent {m} must be nonnegative")
        return TargetFunction(kind="pure_power", mu=m)

    @staticmethod
    def muntz_combo(series: MuntzSeries) -> "TargetFunction":
        return TargetFunction(kind="muntz_combo", series=series)


def evaluate(s: MuntzSeries, x: Real, precision_bits: Optional[int] = None) -> mpmath.mpf:
    """Pointwise value sum a_k * x**lam_k for 0 <= x < radius."""
    bits = precision_bits or s.precision_bits
    with workbits(bits):
        xv = x if isinstance(x, mpmath.mpf) else to_mpf(x, bits)
        if xv < 0 or xv >= s.radius:
            raise OutsideRadius(f"x = {xv} outside [0, {s.radius})")
        lams = s.lam_ref.values_at(bits)
        total = mp.mpf(0)
        for a, lam_k in zip(s.coeffs, lams):
            total += a * xv ** lam_k
        return total


def _target_moment(wd: WeightedDomain, f: TargetFunction, lam_k, bits: int):
    """Inner product of the target with x**lam_k; closed form throughout."""
    if f.kind == "pure_power":
        return power_moment(wd, f.mu + lam_k, bits)
    total = mp.mpf(0)
    f_lams = f.series.lam_ref.values_at(bits)
    for a, lam_j in zip(f.series.coeffs, f_lams):
        if a != 0:
            total += a * power_moment(wd, lam_j + lam_k, bits)
    return total


def _target_norm_sq(wd: WeightedDomain, f: TargetFunction, bits: int):
    if f.kind == "pure_power":
        return power_moment(wd, 2 * f.mu, bits)
    total = mp.mpf(0)
    f_lams = f.series.lam_ref.values_at(bits)
    coeffs = f.series.coeffs
    for i, a in enumerate(coeffs):
        for j, b in enumerate(coeffs):
            if a != 0 and b != 0:
                total += a * b * power_moment(wd, f_lams[i] + f_lams[j], bits)
    return total


def _settle_residual_sq(value, bits: int):
    """Residuals squared must be nonnegative; tiny negatives are rounding
    debris and clamp to zero, anything larger aborts loudly."""
    if value >= 0:
        return value
    with workbits(bits):
        if abs(value) < mp.mpf(2) ** (-(bits // 2)):
            return mp.mpf(0)
    raise NegativeResidualSquared(
        f"residual^2 = {value} is negative beyond the rounding floor"
    )


def project(
    wd: WeightedDomain,
    lam: ExponentSequence,
    section: int,
    f: TargetFunction,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> Tuple[MuntzSeries, mpmath.mpf]:
    """Best approximation of the target in the leading section span.

    Coefficients solve G c = b with b_k = <f, x**lam_k>; the squared
    residual is <f, f> - b^T c, which vanishes for targets already in
    the span.
    """
    g = gram(wd, lam, section, precision_bits)
    bits = g.precision_bits
    with workbits(bits):
        b = [_target_moment(wd, f, lam_k, bits) for lam_k in g.lams]
        c = solve_spd(g, b)
        res_sq = _target_norm_sq(wd, f, bits) - mp.fsum(
            bk * ck for bk, ck in zip(b, c)
        )
        res = mp.sqrt(_settle_residual_sq(res_sq, bits))
        series = MuntzSeries(
            lam_ref=lam, coeffs=tuple(c), radius=wd.r_w, precision_bits=bits
        )
        return series, res


@dataclass(frozen=True)
class ConvergenceTable:
    """Leading-coefficient trajectories across growing sections.

    rows[i] is (section_size, coefficient prefix); diffs[k] lists the
    successive absolute changes of coefficient k+1, and cauchy_flags[k]
    records whether those changes are nonincreasing over the range.
    """

    section_sizes: Tuple[int, ...]
    rows: Tuple[Tuple[int, Tuple[mpmath.mpf, ...]], ...]
    diffs: Tuple[Tuple[mpmath.mpf, ...], ...]
    cauchy_flags: Tuple[bool, ...]
    residuals: Tuple[mpmath.mpf, ...]


def coefficient_convergence(
    wd: WeightedDomain,
    lam: ExponentSequence,
    f: TargetFunction,
    section_sizes: Sequence[int],
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> ConvergenceTable:
    """Project at each section size and track per-index coefficients."""
    sizes = list(section_sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValidationError("section sizes must be strictly increasing")
    rows = []
    residuals = []
    for size in sizes:
        series, res = project(wd, lam, size, f, precision_bits)
        rows.append((size, series.coeffs))
        residuals.append(res)
    n_tracked = sizes[0]
    diffs = []
    flags = []
    with workbits(precision_bits):
        for k in range(n_tracked):
            track = [coeffs[k] for _, coeffs in rows]
            dk = tuple(abs(b - a) for a, b in zip(track, track[1:]))
            diffs.append(dk)
            flags.append(all(b <= a for a, b in zip(dk, dk[1:])))
    return ConvergenceTable(
        section_sizes=tuple(sizes),
        rows=tuple(rows),
        diffs=tuple(diffs),
        cauchy_flags=tuple(flags),
        residuals=tuple(residuals),
    )


def removal_test(
    wd: WeightedDomain,
    lam: ExponentSequence,
    section: int,
    f: TargetFunction,
    n: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """Residual of f minus its n-th term against the span without index n.

    For a combination within the section this is zero up to rounding:
    stripping the n-th coefficient leaves an element of the reduced span.
    """
    if f.kind != "muntz_combo":
        raise ValidationError("removal test needs an explicit combination target")
    if not 1 <= n <= section:
        raise IndexOutOfRange(f"index {n} outside 1..{section}")
    if len(f.series.coeffs) > section:
        raise ValidationError("combination extends beyond the section")

    bits = precision_bits
    from .exponents import explicit_exponents  # local to avoid cycle at import time

    full = lam.values_at(bits)[:section]
    kept = [v for i, v in enumerate(full) if i != n - 1]
    reduced_lam = explicit_exponents(kept, bits)

    coeffs = list(f.series.coeffs) + [mp.mpf(0)] * (section - len(f.series.coeffs))
    stripped = [c for i, c in enumerate(coeffs) if i != n - 1]
    with workbits(bits):
        stripped_series = MuntzSeries(
            lam_ref=reduced_lam,
            coeffs=tuple(stripped),
            radius=f.series.radius,
            precision_bits=bits,
        )
        target = TargetFunction.muntz_combo(stripped_series)
        _, res = project(wd, reduced_lam, section - 1, target, bits)
        return res


def christoffel_remez(
    wd: WeightedDomain,
    lam: ExponentSequence,
    section: int,
    rho: Real,
    grid_points: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """Grid maximum of the section's pointwise-to-norm constant on [0, rho].

    The kernel K(x) = v(x)^T G^-1 v(x) with v(x)_k = x**lam_k is the
    largest value of |f(x)|^2 / ||f||^2 over the section span; its square
    root, maximized over a uniform grid, is the p = 2 bound constant at
    grid resolution.  Monotone in the section size at fixed grid; callers
    wanting monotone-in-rho sweeps should use nested grids.
    """
    if grid_points < 2:
        raise ValidationError("grid needs at least two points")
    g = gram(wd, lam, section, precision_bits)
    bits = g.precision_bits
    with workbits(bits):
        rho_m = to_mpf(rho, bits)
        if rho_m <= 0:
            raise ValidationError("rho must be positive")
        best = mp.mpf(0)
        for j in range(grid_points):
            x = rho_m * j / (grid_points - 1)
            v = [x ** g.lams[k] for k in range(section)]
            y = forward_substitution(g.chol, v)
            kernel = mp.fsum(t ** 2 for t in y)
            if kernel > best:
                best = kernel
        return mp.sqrt(best)
