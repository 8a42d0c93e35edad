"""Finite sections of the diagonal-in-powers operator family and mixed
completeness probes.

The operator multiplies the n-th coefficient of a series by u_n with
|u_n| <= rho**lam_n; the dilation instance u_n = rho**lam_n acts as
f(x) -> f(rho x).  In section coordinates the operator matrix is
diag(u); its adjoint with respect to the Gram bilinear form is
G^-1 diag(u) G, whose eigenvectors are the dual coefficient columns.
Mixed systems pick section powers for one index set and dual functions
for the complement; their nonsingularity is the finite-section face of
hereditary completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import mpmath
from mpmath import mp

from .errors import (
    BadPartition,
    BoundViolation,
    DuplicateEigenvalue,
    LengthMismatch,
    ValidationError,
    ZeroEigenvalue,
)
from .exponents import ExponentSequence
from .gram import GramMatrix, gram_inverse, gram_inverse_column, solve_spd
from .precision import DEFAULT_PRECISION_BITS, Real, to_mpf, workbits
from .series import MuntzSeries


@dataclass(frozen=True)
class OperatorSpec:
    """Coefficient multipliers u_n with their decay base rho in (0, 1)."""

    u: Tuple[mpmath.mpf, ...]
    rho: mpmath.mpf
    kind: str  # "diagonal_list" | "dilation"


def dilation_operator(
    lam: ExponentSequence,
    rho: Real,
    count: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> OperatorSpec:
    """The instance u_n = rho**lam_n, i.e. coefficient-space dilation."""
    rho_m = to_mpf(rho, precision_bits)
    if not 0 < rho_m < 1:
        raise ValidationError(f"rho = {rho_m} must lie in (0, 1)")
    if count > len(lam):
        raise ValidationError("count exceeds exponent prefix")
    lams = lam.values_at(precision_bits)[:count]
    with workbits(precision_bits):
        u = tuple(rho_m ** lam_n for lam_n in lams)
    return OperatorSpec(u=u, rho=rho_m, kind="dilation")


def diagonal_operator(
    u: Sequence[Real], rho: Real, precision_bits: int = DEFAULT_PRECISION_BITS
) -> OperatorSpec:
    rho_m = to_mpf(rho, precision_bits)
    if not 0 < rho_m < 1:
        raise ValidationError(f"rho = {rho_m} must lie in (0, 1)")
    uv = tuple(to_mpf(x, precision_bits) for x in u)
    return OperatorSpec(u=uv, rho=rho_m, kind="diagonal_list")


def _validate_against(spec: OperatorSpec, g: GramMatrix) -> Tuple[mpmath.mpf, ...]:
    if len(spec.u) < g.n:
        raise LengthMismatch(f"{len(spec.u)} multipliers for a section of {g.n}")
    u = spec.u[: g.n]
    for v in u:
        if v == 0:
            raise ZeroEigenvalue("multipliers must be nonzero")
    if len(set(u)) != len(u):
        raise DuplicateEigenvalue("multipliers must be pairwise distinct")
    with workbits(g.precision_bits):
        for v, lam_n in zip(u, g.lams):
            if abs(v) > spec.rho ** lam_n:
                raise BoundViolation(
                    f"|u| = {abs(v)} exceeds rho**lam = {spec.rho ** lam_n}"
                )
    return u


def finite_sections(spec: OperatorSpec, g: GramMatrix) -> Tuple[mpmath.matrix, mpmath.matrix]:
    """Section matrices (M, M_adj) in power coordinates.

    M = diag(u); M_adj = G^-1 M G realizes the Gram-form adjoint, built
    column by column through the stored factorization.
    """
    u = _validate_against(spec, g)
    n = g.n
    with workbits(g.precision_bits):
        m_mat = mp.matrix(n, n)
        for i in range(n):
            m_mat[i, i] = u[i]
        # columns of M G, then one solve per column
        adj = mp.matrix(n, n)
        for j in range(n):
            col = [u[i] * g.entries[i, j] for i in range(n)]
            sol = solve_spd(g, col)
            for i in range(n):
                adj[i, j] = sol[i]
        return m_mat, adj


@dataclass(frozen=True)
class EigenReport:
    eigen_ok: bool
    adjoint_eigen_ok: bool
    simplicity_ok: bool
    kernel_trivial_ok: bool
    normality_defect: mpmath.mpf
    tail_bounds: Tuple[Tuple[int, mpmath.mpf], ...]
    tail_decay_ok: bool
    max_adjoint_residual: mpmath.mpf


def eigen_check(spec: OperatorSpec, g: GramMatrix) -> EigenReport:
    """Verify the section eigenstructure and tabulate compactness bounds.

    Powers are eigenvectors of M exactly (diagonal); dual columns must be
    eigenvectors of the adjoint within 2**(-P/2) relative.  The tail
    bounds sum (2 rho / (1 + rho))**lam_n beyond each cutoff; their
    geometric decay is what makes the finite-rank sections converge.
    """
    m_mat, adj = finite_sections(spec, g)
    n = g.n
    bits = g.precision_bits
    with workbits(bits):
        u = spec.u[:n]
        eigen_ok = all(m_mat[i, i] == u[i] for i in range(n))

        tol = mp.mpf(2) ** (-(bits // 2))
        worst = mp.mpf(0)
        for k in range(1, n + 1):
            col = gram_inverse_column(g, k)
            scale = max(abs(v) for v in col) * abs(u[k - 1]) + 1
            for i in range(n):
                got = mp.fsum(adj[i, j] * col[j] for j in range(n))
                resid = abs(got - u[k - 1] * col[i]) / scale
                if resid > worst:
                    worst = resid
        adjoint_ok = worst < tol

        simplicity_ok = len(set(u)) == n
        kernel_ok = all(v != 0 for v in u)

        comm = m_mat * adj - adj * m_mat
        defect = max(abs(comm[i, j]) for i in range(n) for j in range(n))

        q = 2 * spec.rho / (1 + spec.rho)
        tails = []
        for m_cut in range(n):
            tails.append(
                (m_cut, mp.fsum(q ** g.lams[k] for k in range(m_cut + 1, n)))
            )
        # the last cutoff has an empty tail; keep entries with mass only
        tails = [(m_cut, b) for m_cut, b in tails if b > 0]
        decay_ok = all(
            b < a and b / a <= q for (_, a), (_, b) in zip(tails, tails[1:])
        )

        return EigenReport(
            eigen_ok=eigen_ok,
            adjoint_eigen_ok=adjoint_ok,
            simplicity_ok=simplicity_ok,
            kernel_trivial_ok=kernel_ok,
            normality_defect=defect,
            tail_bounds=tuple(tails),
            tail_decay_ok=decay_ok,
            max_adjoint_residual=worst,
        )


def apply(spec: OperatorSpec, s: MuntzSeries) -> MuntzSeries:
    """Coefficient-wise action a_n -> u_n a_n.

    For the dilation instance, evaluate(apply(s), x) == evaluate(s, rho x)
    on [0, radius)."""
    if len(spec.u) < len(s.coeffs):
        raise LengthMismatch(
            f"{len(spec.u)} multipliers cannot act on {len(s.coeffs)} coefficients"
        )
    with workbits(s.precision_bits):
        new_coeffs = tuple(u_n * a for u_n, a in zip(spec.u, s.coeffs))
    return MuntzSeries(
        lam_ref=s.lam_ref,
        coeffs=new_coeffs,
        radius=s.radius,
        precision_bits=s.precision_bits,
    )


@dataclass(frozen=True)
class MixedSystemReport:
    """Nonsingularity data for one mixed system of powers and duals."""

    n1: Tuple[int, ...]
    n2: Tuple[int, ...]
    mixed_matrix_det: mpmath.mpf
    min_singular_value: mpmath.mpf
    nonsingular: bool


def hereditary_check(
    g: GramMatrix, partition: Tuple[Iterable[int], Iterable[int]]
) -> MixedSystemReport:
    """Assess one mixed system {powers on N1} union {duals on N2}.

    The section matrix has standard basis columns for N1 and inverse-Gram
    columns for N2; its determinant equals the principal minor of the
    inverse indexed by N2, so positivity is guaranteed in exact
    arithmetic and the reported determinant and minimum singular value
    quantify the margin.
    """
    n1, n2 = (tuple(sorted(set(ix))) for ix in partition)
    indices = n1 + n2
    if sorted(indices) != list(range(1, g.n + 1)):
        raise BadPartition(
            f"index sets {n1} and {n2} must split 1..{g.n} disjointly"
        )
    bits = g.precision_bits
    with workbits(bits):
        mixed = mp.matrix(g.n, g.n)
        for idx in n1:
            mixed[idx - 1, idx - 1] = mp.mpf(1)
        for idx in n2:
            col = gram_inverse_column(g, idx)
            for i in range(g.n):
                mixed[i, idx - 1] = col[i]
        det = mp.det(mixed)
        svals = mp.svd_r(mixed, compute_uv=False)
        smin = min(svals[i] for i in range(g.n))
        return MixedSystemReport(
            n1=n1,
            n2=n2,
            mixed_matrix_det=det,
            min_singular_value=smin,
            nonsingular=smin > mp.mpf(2) ** (-(bits // 2)),
        )


def inverse_principal_minor(g: GramMatrix, n2: Iterable[int]) -> mpmath.mpf:
    """det of the inverse-Gram principal submatrix on the 1-based set n2."""
    idx = sorted(set(n2))
    if any(not 1 <= i <= g.n for i in idx):
        raise BadPartition(f"indices {idx} outside 1..{g.n}")
    with workbits(g.precision_bits):
        if not idx:
            return mp.mpf(1)
        inv = gram_inverse(g)
        sub = mp.matrix(len(idx), len(idx))
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                sub[a, b] = inv[i - 1, j - 1]
        return mp.det(sub)
