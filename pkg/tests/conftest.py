import mpmath
import pytest
from mpmath import mp

from muntz import build_weighted_domain, explicit_exponents, workbits

CHECK_BITS = 320  # headroom above the default working precision


def rel_err(got, want):
    """Relative error evaluated with guard bits so the comparison itself
    cannot dominate."""
    from muntz import to_mpf

    with workbits(CHECK_BITS):
        got = got if isinstance(got, mpmath.mpf) else to_mpf(got, CHECK_BITS)
        want = want if isinstance(want, mpmath.mpf) else to_mpf(want, CHECK_BITS)
        if want == 0:
            return abs(got)
        return abs(got - want) / abs(want)


def mpf_(x, bits=CHECK_BITS):
    with workbits(bits):
        return mp.mpf(x)


@pytest.fixture
def unit_domain():
    return build_weighted_domain([(0, 1)], [(1, 0)])


@pytest.fixture
def lam23():
    return explicit_exponents([2, 3])


@pytest.fixture
def two_piece_domain():
    # [0, 0.5] u [0.6, 1] with weights 1 and 2
    return build_weighted_domain([("0", "0.5"), ("0.6", "1")], [(1, 0), (2, 0)])
