import math

import pytest
from hypothesis import given, strategies as st
from scipy.special import ellipe, ellipk

from dimerlab.errors import DomainError
from dimerlab.oracles import quad_elliptic
from dimerlab.specfun import elliptic_e, elliptic_k


def test_trivial_values():
    assert elliptic_k(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert elliptic_e(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert elliptic_e(1.0) == 1.0


def test_against_quadrature_oracle():
    for m in (0.1, 0.25, 0.5, 0.9, 0.99):
        assert elliptic_k(m) == pytest.approx(quad_elliptic("K", m), abs=1e-10)
        assert elliptic_e(m) == pytest.approx(quad_elliptic("E", m), abs=1e-10)


def test_against_scipy():
    for m in (1e-6, 0.3, 0.5, 0.7, 0.999, 0.9999999):
        assert elliptic_k(m) == pytest.approx(ellipk(m), rel=1e-13)
        assert elliptic_e(m) == pytest.approx(ellipe(m), rel=1e-13)


def test_domain_errors():
    with pytest.raises(DomainError):
        elliptic_k(1.0)
    with pytest.raises(DomainError):
        elliptic_k(1.5)
    with pytest.raises(DomainError):
        elliptic_e(1.0 + 1e-12)


def test_negative_parameter_allowed():
    # the rotation branch passes 1/m which is fine; negative m also converges
    assert elliptic_k(-1.0) == pytest.approx(ellipk(-1.0), rel=1e-13)
    assert elliptic_e(-1.0) == pytest.approx(ellipe(-1.0), rel=1e-13)


@given(st.floats(min_value=1e-6, max_value=1.0 - 1e-6))
def test_legendre_relation(m):
    k, kp = elliptic_k(m), elliptic_k(1.0 - m)
    e, ep = elliptic_e(m), elliptic_e(1.0 - m)
    assert e * kp + ep * k - k * kp == pytest.approx(math.pi / 2, rel=1e-12)


@given(st.floats(min_value=0.0, max_value=0.95), st.floats(min_value=0.0, max_value=0.95))
def test_monotonicity(m1, m2):
    lo, hi = sorted((m1, m2))
    assert elliptic_k(lo) <= elliptic_k(hi) + 1e-15
    assert elliptic_e(lo) >= elliptic_e(hi) - 1e-15
