import random

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from muntz import (
    build_moment_data,
    build_weighted_domain,
    convergence_certificate,
    explicit_exponents,
    fit_growth,
    power_exponents,
    solve_moments,
    workbits,
)
from muntz.errors import ValidationError

from conftest import rel_err

UNIT = build_weighted_domain([(0, 1)], [(1, 0)])


def geometric_data(lam, base, scale=1, bits=256):
    with workbits(bits):
        b = mp.mpf(base)
        return [mp.mpf(scale) * b ** v for v in lam.values]


def test_fit_pure_geometric():
    lam = power_exponents(1, 2, 6)
    a, c = fit_growth(geometric_data(lam, "0.5"), lam)
    assert rel_err(a, "0.5") < 1e-60
    assert rel_err(c, 1) < 1e-60


def test_fit_scaled_geometric():
    lam = power_exponents(1, 2, 6)
    a, c = fit_growth(geometric_data(lam, "0.25", scale=3), lam)
    assert rel_err(a, "0.25") < 1e-60
    assert rel_err(c, 3) < 1e-60


def test_fit_constant_data_hits_radius():
    lam = power_exponents(1, 2, 5)
    data = build_moment_data(UNIT, lam, [1, 1, 1, 1, 1])
    assert rel_err(data.fitted_a, 1) < 1e-60
    assert rel_err(data.fitted_c, 1) < 1e-60
    assert not data.growth_ok  # a = 1 is not inside [0, r_w)


def test_fit_all_zero():
    lam = power_exponents(1, 2, 4)
    a, c = fit_growth([0, 0, 0, 0], lam)
    assert a == 0 and c == 0


def test_fit_single_nonzero():
    lam = explicit_exponents([2, 3])
    a, c = fit_growth(["0.25", "0"], lam)
    with workbits(320):
        assert rel_err(a, mp.mpf("0.25") ** (mp.mpf(1) / 2)) < 1e-60
    assert c == 1


def test_fit_envelope_covers_all_entries():
    lam = power_exponents(1, 2, 6)
    rng = random.Random(7)
    with workbits(256):
        d = [mp.mpf(rng.uniform(-1, 1)) * mp.mpf("0.5") ** v for v in lam.values]
        a, c = fit_growth(d, lam)
        for v, dv in zip(lam.values, d):
            assert abs(dv) <= c * a ** v * (1 + mp.mpf(2) ** -200)


def test_solve_dual_fixture(unit_domain, lam23):
    data = build_moment_data(unit_domain, lam23, [1, 0])
    series, residuals = solve_moments(unit_domain, lam23, data, 2)
    assert rel_err(series.coeffs[0], 180) < 1e-70
    assert rel_err(series.coeffs[1], -210) < 1e-70
    with workbits(256):
        assert all(abs(r) < mp.mpf(2) ** (-128) for r in residuals)


def test_solve_zero_data(unit_domain, lam23):
    data = build_moment_data(unit_domain, lam23, [0, 0])
    series, residuals = solve_moments(unit_domain, lam23, data, 2)
    assert all(c == 0 for c in series.coeffs)
    assert all(r == 0 for r in residuals)


def test_solve_recovers_moment_source(unit_domain, lam23):
    # the moments of x^2 itself: d = (1/5, 1/6)
    data = build_moment_data(unit_domain, lam23, ["0.2", "1/6"])
    series, _ = solve_moments(unit_domain, lam23, data, 2)
    assert rel_err(series.coeffs[0], 1) < 1e-70
    with workbits(256):
        assert abs(series.coeffs[1]) < mp.mpf(2) ** (-200)


def test_solve_section_bound(unit_domain, lam23):
    data = build_moment_data(unit_domain, lam23, [1])
    with pytest.raises(ValidationError):
        solve_moments(unit_domain, lam23, data, 2)


def test_solution_norms_bounded_nondecreasing():
    lam = power_exponents(1, 2, 12)
    d = geometric_data(lam, "0.5")
    data = build_moment_data(UNIT, lam, d)
    assert data.growth_ok
    cert = convergence_certificate(UNIT, lam, data, [2, 4, 6, 8, 10, 12])
    norms = cert.solution_norms
    assert all(b >= a for a, b in zip(norms, norms[1:]))
    # the dual-norm sums settle: section-to-section ratios fall toward 1
    ratios = cert.ratios
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    with workbits(256):
        assert ratios[-1] < mp.mpf("1.25")


@settings(max_examples=12, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_random_data_interpolates_exactly(seed):
    rng = random.Random(seed)
    lam = power_exponents(1, 2, 8)
    with workbits(256):
        d = [mp.mpf(rng.uniform(-2, 2)) for _ in range(8)]
    data = build_moment_data(UNIT, lam, d)
    _, residuals = solve_moments(UNIT, lam, data, 8)
    with workbits(256):
        assert all(abs(r) < mp.mpf(2) ** (-128) for r in residuals)
