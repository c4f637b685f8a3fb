import math

import numpy as np
import pytest
import scipy.special

import revspec as rs
from revspec.errors import ValidationError

import oracles

J01 = 2.404825557695773
J11 = 3.831705970207512


def test_first_zero_order_zero():
    scan = oracles.series_scan_bessel_zero(0, 1)
    assert scan == pytest.approx(J01, abs=1e-10)
    assert rs.bessel_zero(0, 1) == pytest.approx(J01, abs=1e-10)


def test_first_zero_order_one():
    scan = oracles.series_scan_bessel_zero(1, 1)
    assert scan == pytest.approx(J11, abs=1e-10)
    assert rs.bessel_zero(1, 1) == pytest.approx(J11, abs=1e-10)


def test_zeros_against_scipy():
    for k in (0, 1, 2, 5, 11, 30, 57):
        ref = scipy.special.jn_zeros(k, 6)
        got = [rs.bessel_zero(k, n) for n in range(1, 7)]
        np.testing.assert_allclose(got, ref, rtol=1e-12)


def test_zeros_interlace():
    for k in range(0, 8):
        zk = [rs.bessel_zero(k, n) for n in range(1, 6)]
        zk1 = [rs.bessel_zero(k + 1, n) for n in range(1, 6)]
        for a, b, c in zip(zk, zk1, zk[1:]):
            assert a < b < c


def test_values_against_scipy():
    rng = np.random.default_rng(5)
    for k in (0, 1, 3, 9, 24):
        for x in np.concatenate([rng.uniform(0.01, 11.9, 8),
                                 rng.uniform(12.1, 90.0, 8)]):
            ref = scipy.special.jv(k, x)
            assert rs.bessel_j(k, x) == pytest.approx(ref, rel=2e-12, abs=2e-14)


def test_series_matches_miller_at_switch():
    # the two evaluation strategies agree where the implementation switches
    from revspec.bessel import _bessel_j_miller, _bessel_j_series
    for k in (0, 2, 7, 40):
        edge = max(12.0, 2.0 * math.sqrt(k))
        s = _bessel_j_series(k, edge)
        m = _bessel_j_miller(k, edge)
        assert s == pytest.approx(m, rel=1e-8, abs=1e-13)


def test_value_at_zero():
    assert rs.bessel_j(0, 0.0) == 1.0
    assert rs.bessel_j(3, 0.0) == 0.0


def test_rejects_bad_arguments():
    with pytest.raises(ValidationError):
        rs.bessel_j(-1, 1.0)
    with pytest.raises(ValidationError):
        rs.bessel_j(0, -1.0)
    with pytest.raises(ValidationError):
        rs.bessel_zero(0, 0)
