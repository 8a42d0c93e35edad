"""Finite-section distances and the biorthogonal dual family.

The distance from x**lam_n to the span of the other section elements is
D_n = ((G^-1)_nn)**(-1/2); the dual function r_n has the n-th column of
G^-1 as its coefficients and norm 1/D_n, so the two quantities are exact
reciprocals by construction.  On the unit interval with unit weight the
classical closed form

    D_n = (2 lam_n + 1)**(-1/2) * prod_{k != n} |lam_n - lam_k| / (lam_n + lam_k + 1)

is an independent oracle for everything the linear algebra produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath
from mpmath import mp

from .domain import WeightedDomain
from .errors import BadEpsilon, IndexOutOfRange, ValidationError
from .exponents import ExponentSequence
from .gram import GramMatrix, gram, gram_inverse, gram_inverse_column
from .precision import DEFAULT_PRECISION_BITS, Real, to_mpf, workbits


@dataclass(frozen=True)
class DualFamily:
    """Coefficient columns of the dual functions of one Gram section.

    coeffs column n holds the expansion of r_n over the section powers;
    norms[n] = sqrt((G^-1)_nn) and distances[n] = 1/norms[n], computed as
    that exact reciprocal so the reciprocity identity holds bit for bit.
    Lists are 0-based; column n corresponds to index n+1 in 1-based talk.
    """

    n: int
    coeffs: mpmath.matrix
    norms: Tuple[mpmath.mpf, ...]
    distances: Tuple[mpmath.mpf, ...]
    precision_bits: int


@dataclass
class DistanceReport:
    """Distances of one fixed index across growing section sizes."""

    n: int
    lam_n: mpmath.mpf
    r_w: mpmath.mpf
    sections: Tuple[Tuple[int, mpmath.mpf], ...]
    stabilized: bool
    limit_estimate: mpmath.mpf
    precision_bits: int
    epsilon: Optional[mpmath.mpf] = None
    u_epsilon: Optional[mpmath.mpf] = None

    def exponent_slopes(self) -> List[Tuple[int, mpmath.mpf]]:
        """(N, log D_n^(N) / lam_n) pairs; the effective decay base is
        exp of the slope.  Reported for inspection only."""
        with workbits(self.precision_bits):
            return [(N, mp.log(d) / self.lam_n) for N, d in self.sections]


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Fitted constant for the distance lower bound D_n >= u * (r_w - eps)**lam_n.

    u_epsilon is the minimum of D / (r_w - eps)**lam_n over everything
    recorded; passed means the fit is positive.  stable tracks whether the
    per-section ratios vary by less than 50% over the recorded sections.
    """

    u_epsilon: mpmath.mpf
    passed: bool
    stable: bool
    section_ratios: Tuple[Tuple[int, mpmath.mpf], ...]


def dual_family(g: GramMatrix) -> DualFamily:
    """All dual-function coefficient columns of one section."""
    inv = gram_inverse(g)
    with workbits(g.precision_bits):
        norms = tuple(mp.sqrt(inv[k, k]) for k in range(g.n))
        distances = tuple(1 / v for v in norms)
    return DualFamily(
        n=g.n,
        coeffs=inv,
        norms=norms,
        distances=distances,
        precision_bits=g.precision_bits,
    )


def distance(g: GramMatrix, n: int) -> mpmath.mpf:
    """Distance from the n-th section power to the span of the others."""
    if not 1 <= n <= g.n:
        raise IndexOutOfRange(f"index {n} outside 1..{g.n}")
    col = gram_inverse_column(g, n)
    with workbits(g.precision_bits):
        return 1 / mp.sqrt(col[n - 1])


def oracle_distance(
    lam: ExponentSequence,
    n: int,
    section: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """Closed-form distance on [0, 1] with unit weight.

    Independent of the Gram path: no matrix is built or solved.  Only
    valid for that domain; callers own the applicability check.
    """
    if not 1 <= n <= section <= len(lam):
        raise IndexOutOfRange(f"need 1 <= n <= section <= {len(lam)}")
    lams = lam.values_at(precision_bits)
    with workbits(precision_bits):
        ln = lams[n - 1]
        val = 1 / mp.sqrt(2 * ln + 1)
        for k in range(section):
            if k == n - 1:
                continue
            lk = lams[k]
            val *= abs(ln - lk) / (ln + lk + 1)
        return val


def distance_sweep(
    wd: WeightedDomain,
    lam: ExponentSequence,
    n: int,
    section_sizes: Sequence[int],
    rel_tol: Real,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> DistanceReport:
    """Track D_n across increasing section sizes.

    The values are nonincreasing (larger span, smaller distance);
    stabilized is set when the final relative decrease drops below
    rel_tol.  The last value doubles as the limit estimate.
    """
    sizes = list(section_sizes)
    if not sizes:
        raise ValidationError("need at least one section size")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValidationError("section sizes must be strictly increasing")
    if n > sizes[0]:
        raise ValidationError(f"target index {n} exceeds the smallest section {sizes[0]}")

    tol = to_mpf(rel_tol, precision_bits)
    sections = []
    used_bits = precision_bits
    for size in sizes:
        g = gram(wd, lam, size, precision_bits)
        used_bits = max(used_bits, g.precision_bits)
        sections.append((size, distance(g, n)))

    with workbits(used_bits):
        stabilized = False
        if len(sections) >= 2:
            d_prev, d_last = sections[-2][1], sections[-1][1]
            stabilized = (d_prev - d_last) / d_prev < tol
        return DistanceReport(
            n=n,
            lam_n=lam.values_at(used_bits)[n - 1],
            r_w=wd.r_w,
            sections=tuple(sections),
            stabilized=stabilized,
            limit_estimate=sections[-1][1],
            precision_bits=used_bits,
        )


def lower_bound_certificate(report: DistanceReport, epsilon: Real) -> LowerBoundCertificate:
    """Fit the lower-bound constant from a distance report.

    Fills report.epsilon and report.u_epsilon as a side effect.  The fit
    is empirical: u is the smallest recorded ratio, positivity is the
    falsifiable claim, and stability (< 50% spread across sections) is
    reported alongside rather than asserted.
    """
    bits = report.precision_bits
    with workbits(bits):
        eps = to_mpf(epsilon, bits)
        if not 0 < eps < report.r_w:
            raise BadEpsilon(f"epsilon must lie strictly between 0 and r_w = {report.r_w}")
        base = (report.r_w - eps) ** report.lam_n
        ratios = tuple((N, d / base) for N, d in report.sections)
        u = min(r for _, r in ratios)
        hi = max(r for _, r in ratios)
        stable = (hi - u) / hi < mp.mpf(1) / 2 if hi > 0 else False
        report.epsilon = eps
        report.u_epsilon = u
        return LowerBoundCertificate(
            u_epsilon=u,
            passed=u > 0,
            stable=stable,
            section_ratios=ratios,
        )
