from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from muntz import build_weighted_domain, power_moment, workbits
from muntz.errors import (
    DegenerateInterval,
    NonintegrableWeight,
    OverlappingIntervals,
    ValidationError,
)

from conftest import rel_err


def test_unit_interval_unit_weight():
    wd = build_weighted_domain([(0, 1)], [(1, 0)])
    assert wd.r_a == 1
    assert wd.r_w == 1
    assert wd.total_measure == 1
    assert wd.weight_mass == 1


def test_two_piece_measure_additivity():
    wd = build_weighted_domain([(0, 0.5), (0.75, 1)], [(1, 0), (1, 0)])
    assert wd.r_a == 1
    assert rel_err(wd.total_measure, "0.75") < 1e-70


def test_overlap_rejected():
    with pytest.raises(OverlappingIntervals):
        build_weighted_domain([(0, 0.5), (0.4, 1)], [(1, 0), (1, 0)])


def test_shared_endpoint_rejected_not_merged():
    with pytest.raises(OverlappingIntervals):
        build_weighted_domain([(0, 0.5), (0.5, 1)], [(1, 0), (1, 0)])


def test_degenerate_interval():
    with pytest.raises(DegenerateInterval):
        build_weighted_domain([(1, 1)], [(1, 0)])
    with pytest.raises(DegenerateInterval):
        build_weighted_domain([(-0.5, 1)], [(1, 0)])


def test_nonintegrable_weight():
    with pytest.raises(NonintegrableWeight):
        build_weighted_domain([(0, 1)], [(1, -1)])


def test_nonpositive_coefficient():
    with pytest.raises(ValidationError):
        build_weighted_domain([(0, 1)], [(0, 0)])


def test_length_mismatch():
    with pytest.raises(ValidationError):
        build_weighted_domain([(0, 1)], [(1, 0), (1, 0)])


def test_decimal_string_ingestion_is_exact():
    wd = build_weighted_domain([("0.1", "0.3")], [("1", "0")])
    assert wd.pieces[0][0] == Fraction(1, 10)
    assert wd.pieces[0][1] == Fraction(3, 10)


@pytest.mark.parametrize(
    "intervals,weights,s,expected",
    [
        ([(0, 1)], [(1, 0)], 5, Fraction(1, 6)),
        ([(0, 2)], [(1, 0)], 1, 2),
        ([(0, 1)], [(1, 1)], 3, Fraction(1, 5)),
        ([(0, 0.5), (0.75, 1)], [(1, 0), (1, 0)], 0, Fraction(3, 4)),
    ],
)
def test_power_moment_fixtures(intervals, weights, s, expected):
    wd = build_weighted_domain(intervals, weights)
    want = Fraction(expected)
    with workbits(320):
        want_m = mp.mpf(want.numerator) / want.denominator
    assert rel_err(power_moment(wd, s), want_m) < 1e-70


def test_moment_rejects_negative_order():
    wd = build_weighted_domain([(0, 1)], [(1, 0)])
    with pytest.raises(ValidationError):
        power_moment(wd, -1)


@settings(max_examples=40, deadline=None)
@given(
    s=st.integers(min_value=0, max_value=30),
    split=st.fractions(min_value="1/10", max_value="9/10"),
)
def test_moment_additivity_over_union(s, split):
    whole = build_weighted_domain([(0, 1)], [(1, 0)])
    eps = Fraction(1, 1000)
    left = build_weighted_domain([(0, split)], [(1, 0)])
    right = build_weighted_domain([(split + eps, 1 + eps)], [(1, 0)])
    joined = build_weighted_domain(
        [(0, split), (split + eps, 1 + eps)], [(1, 0), (1, 0)]
    )
    got = power_moment(joined, s)
    with workbits(320):
        want = power_moment(left, s, 320) + power_moment(right, s, 320)
    assert rel_err(got, want) < 1e-70


@settings(max_examples=40, deadline=None)
@given(
    s=st.fractions(min_value=0, max_value=20),
    scale=st.fractions(min_value="1/4", max_value=8),
)
def test_moment_scaling_law(s, scale):
    # scaling the domain by R multiplies the s-th moment by R**(s+1)
    base = build_weighted_domain([(0, 1)], [(1, 0)])
    scaled = build_weighted_domain([(0, scale)], [(1, 0)])
    with workbits(320):
        r = mp.mpf(scale.numerator) / scale.denominator
        sm = mp.mpf(s.numerator) / s.denominator
        want = power_moment(base, s, 320) * r ** (sm + 1)
    assert rel_err(power_moment(scaled, s), want) < 1e-70


@settings(max_examples=30, deadline=None)
@given(
    s1=st.integers(min_value=0, max_value=20),
    step=st.integers(min_value=1, max_value=10),
)
def test_moment_monotonicity(s1, step):
    inside = build_weighted_domain([("0.1", "0.9")], [(1, 0)])
    outside = build_weighted_domain([("1.5", "2.5")], [(1, 0)])
    s2 = s1 + step
    assert power_moment(inside, s1) > power_moment(inside, s2)
    assert power_moment(outside, s1) < power_moment(outside, s2)


def test_pieces_at_reparses_exactly():
    wd = build_weighted_domain([("0.3", "0.7")], [("2", "0.5")])
    lo256 = wd.pieces_at(256)[0][0]
    lo512 = wd.pieces_at(512)[0][0]
    with workbits(512):
        # the 512-bit parse carries more correct digits of 0.3
        assert abs(lo512 - mp.mpf(3) / 10) < abs(lo256 - mp.mpf(3) / 10) or lo256 == lo512
