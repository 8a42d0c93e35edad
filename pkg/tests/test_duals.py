from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from muntz import (
    build_weighted_domain,
    distance,
    distance_sweep,
    dual_family,
    explicit_exponents,
    gram,
    lower_bound_certificate,
    oracle_distance,
    power_exponents,
    workbits,
)
from muntz.errors import BadEpsilon, IndexOutOfRange, ValidationError

from conftest import rel_err


def sqrt_inv(x):
    with workbits(320):
        return 1 / mp.sqrt(mp.mpf(x))


def test_dual_coefficients_fixture(unit_domain, lam23):
    g = gram(unit_domain, lam23, 2)
    fam = dual_family(g)
    # r_1 = 180 x^2 - 210 x^3, r_2 = -210 x^2 + 252 x^3
    assert rel_err(fam.coeffs[0, 0], 180) < 1e-70
    assert rel_err(fam.coeffs[1, 0], -210) < 1e-70
    assert rel_err(fam.coeffs[0, 1], -210) < 1e-70
    assert rel_err(fam.coeffs[1, 1], 252) < 1e-70
    with workbits(320):
        assert rel_err(fam.norms[0], mp.sqrt(mp.mpf(180))) < 1e-70
        assert rel_err(fam.norms[1], mp.sqrt(mp.mpf(252))) < 1e-70


def test_single_power_dual(unit_domain):
    lam = explicit_exponents([2])
    fam = dual_family(gram(unit_domain, lam, 1))
    assert rel_err(fam.coeffs[0, 0], 5) < 1e-70


def test_reciprocity_exact_as_computed(unit_domain, lam23):
    fam = dual_family(gram(unit_domain, lam23, 2))
    with workbits(fam.precision_bits):
        for k in range(2):
            assert fam.distances[k] == 1 / fam.norms[k]


def test_distance_fixtures(unit_domain, lam23):
    g = gram(unit_domain, lam23, 2)
    assert rel_err(distance(g, 1), sqrt_inv(180)) < 1e-70
    assert rel_err(distance(g, 2), sqrt_inv(252)) < 1e-70
    lam_single = explicit_exponents([2])
    g1 = gram(unit_domain, lam_single, 1)
    assert rel_err(distance(g1, 1), sqrt_inv(5)) < 1e-70
    with pytest.raises(IndexOutOfRange):
        distance(g, 3)


def test_biorthogonality_residual(unit_domain):
    lam = power_exponents(1, 2, 9)
    g = gram(unit_domain, lam, 9)
    fam = dual_family(g)
    with workbits(g.precision_bits):
        guard = mp.mpf(2) ** (-(g.precision_bits // 2))
        worst = max(
            abs(
                mp.fsum(g.entries[m, k] * fam.coeffs[k, j] for k in range(9))
                - (1 if m == j else 0)
            )
            for m in range(9)
            for j in range(9)
        )
    assert worst < guard


def test_oracle_matches_gram_path(unit_domain):
    lam = power_exponents(1, 2, 7)
    for section in range(1, 8):
        g = gram(unit_domain, lam, section)
        for n in range(1, section + 1):
            got = distance(g, n)
            want = oracle_distance(lam, n, section)
            assert rel_err(got, want) < 1e-70


def test_oracle_empty_product(unit_domain):
    lam = explicit_exponents([7])
    assert rel_err(oracle_distance(lam, 1, 1), sqrt_inv(15)) < 1e-70


def test_oracle_index_bounds():
    lam = explicit_exponents([2, 3])
    with pytest.raises(IndexOutOfRange):
        oracle_distance(lam, 3, 3)
    with pytest.raises(IndexOutOfRange):
        oracle_distance(lam, 2, 1)


def test_sweep_monotone_and_matches_oracle(unit_domain):
    lam = power_exponents(1, 2, 5)
    report = distance_sweep(unit_domain, lam, 1, [1, 2, 3, 4, 5], "0.01")
    ds = [d for _, d in report.sections]
    assert all(b < a for a, b in zip(ds, ds[1:]))
    for (size, d) in report.sections:
        assert rel_err(d, oracle_distance(lam, 1, size)) < 1e-70
    assert report.limit_estimate == ds[-1]


def test_sweep_single_section_not_stabilized(unit_domain):
    lam = explicit_exponents([3])
    report = distance_sweep(unit_domain, lam, 1, [1], "0.5")
    assert not report.stabilized
    assert rel_err(report.limit_estimate, sqrt_inv(7)) < 1e-70


def test_sweep_rel_tol_one_always_stabilizes(unit_domain):
    lam = power_exponents(1, 2, 4)
    report = distance_sweep(unit_domain, lam, 1, [1, 2], "1")
    assert report.stabilized


def test_sweep_validation(unit_domain, lam23):
    with pytest.raises(ValidationError):
        distance_sweep(unit_domain, lam23, 1, [2, 2], "0.1")
    with pytest.raises(ValidationError):
        distance_sweep(unit_domain, lam23, 2, [1, 2], "0.1")


def test_certificate_fixture(unit_domain, lam23):
    report = distance_sweep(unit_domain, lam23, 1, [2], "0.1")
    cert = lower_bound_certificate(report, "0.1")
    with workbits(320):
        want = sqrt_inv(180) / mp.mpf("0.9") ** 2
    assert rel_err(cert.u_epsilon, want) < 1e-70
    assert cert.passed
    assert report.u_epsilon == cert.u_epsilon
    assert report.epsilon is not None


def test_certificate_minimizes_over_sections(unit_domain):
    lam = power_exponents(1, 2, 6)
    report = distance_sweep(unit_domain, lam, 1, [1, 2, 3, 4, 5, 6], "0.01")
    cert = lower_bound_certificate(report, "0.1")
    ratios = [r for _, r in cert.section_ratios]
    assert cert.u_epsilon == min(ratios)
    # per-section ratios for fixed n shrink with the distances
    assert all(b <= a for a, b in zip(ratios, ratios[1:]))


def test_certificate_bad_epsilon(unit_domain, lam23):
    report = distance_sweep(unit_domain, lam23, 1, [2], "0.1")
    with pytest.raises(BadEpsilon):
        lower_bound_certificate(report, 1)
    with pytest.raises(BadEpsilon):
        lower_bound_certificate(report, 0)


def test_single_power_certificate(unit_domain):
    lam = explicit_exponents([2])
    report = distance_sweep(unit_domain, lam, 1, [1], "0.1")
    cert = lower_bound_certificate(report, "0.25")
    with workbits(320):
        want = sqrt_inv(5) / mp.mpf("0.75") ** 2
    assert rel_err(cert.u_epsilon, want) < 1e-70
    assert cert.passed


@settings(max_examples=10, deadline=None)
@given(scale=st.sampled_from([Fraction(1, 2), Fraction(2), Fraction(5), Fraction(3, 7)]))
def test_distance_scaling(scale):
    # distances on [0,R] are R**(lam_n + 1/2) times the unit-interval ones
    lam = explicit_exponents([1, 2, 4])
    unit = build_weighted_domain([(0, 1)], [(1, 0)])
    scaled = build_weighted_domain([(0, scale)], [(1, 0)])
    g_unit = gram(unit, lam, 3)
    g_scaled = gram(scaled, lam, 3)
    with workbits(320):
        r = mp.mpf(scale.numerator) / scale.denominator
        for n in range(1, 4):
            want = distance(g_unit, n) * r ** (int(lam.values[n - 1]) + mp.mpf(1) / 2)
            assert rel_err(distance(g_scaled, n), want) < 1e-70


def test_exponent_slopes_reported(unit_domain):
    lam = power_exponents(1, 2, 4)
    report = distance_sweep(unit_domain, lam, 2, [2, 3, 4], "0.01")
    slopes = report.exponent_slopes()
    assert len(slopes) == 3
    # distances are below 1, so the per-exponent log slopes are negative
    assert all(s < 0 for _, s in slopes)
