"""Accuracy contract of the in-package error function."""

import math

import numpy as np

from skewdose.special import erf, erfc


def test_relative_error_below_contract():
    """<= 1e-13 relative against the C library, over a dense sweep."""
    xs = np.concatenate([
        np.linspace(-9.0, 9.0, 20001),
        np.logspace(-12, 0.9, 500),
        -np.logspace(-12, 0.9, 500),
    ])
    for x in xs:
        ref = math.erf(float(x))
        got = erf(float(x))
        if ref == 0.0:
            assert got == 0.0
        else:
            assert abs(got - ref) <= 1e-13 * abs(ref)


def test_branch_seams():
    """No jump across the series / continued-fraction crossover."""
    for x in (1.9999999999, 2.0, 2.0000000001):
        assert abs(erf(x) - math.erf(x)) <= 1e-15


def test_special_values():
    assert erf(0.0) == 0.0
    assert erf(float("inf")) == 1.0
    assert erf(float("-inf")) == -1.0
    assert math.isnan(erf(float("nan")))
    assert erf(10.0) == 1.0


def test_odd_symmetry():
    for x in (0.1, 0.7, 1.3, 2.5, 4.0):
        assert erf(-x) == -erf(x)


def test_erfc_tail_stays_positive():
    """erfc keeps relative accuracy where 1 - erf would round to zero."""
    assert erfc(10.0) > 0.0
    assert erfc(26.0) > 0.0
    assert erfc(30.0) == 0.0
    # cross-check a tail value against the C library
    assert abs(erfc(5.0) - math.erfc(5.0)) <= 1e-13 * math.erfc(5.0)
    assert abs(erfc(-3.0) - math.erfc(-3.0)) <= 1e-13 * math.erfc(-3.0)


def test_erfc_complement_identity():
    for x in (-1.5, -0.3, 0.0, 0.4, 1.9):
        assert abs(erfc(x) - (1.0 - erf(x))) <= 1e-15
