import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfield_lift.errors import DomainError
from hopfield_lift.special import erf, erfc, log_erfc_neg

mpmath.mp.dps = 40


def test_erfc_at_zero():
    assert erfc(0.0) == 1.0


def test_erfc_reflection_example():
    assert erfc(-1.0) == pytest.approx(2.0 - erfc(1.0), abs=1e-15)


def test_erfc_at_one():
    # 40-digit mpmath reference
    assert erfc(1.0) == pytest.approx(0.15729920705028513, rel=1e-14)


def test_nan_is_domain_error():
    with pytest.raises(DomainError):
        erfc(float("nan"))


def test_infinities():
    assert erfc(math.inf) == 0.0
    assert erfc(-math.inf) == 2.0


def test_relative_error_against_mpmath():
    xs = np.linspace(-10.0, 10.0, 4001)
    worst = max(
        abs(erfc(x) - float(mpmath.erfc(mpmath.mpf(float(x))))) / float(mpmath.erfc(mpmath.mpf(float(x))))
        for x in xs
    )
    assert worst <= 1e-13


def test_against_quadrature_oracle():
    # erfc(x) = 2/sqrt(pi) * int_x^inf exp(-t^2) dt by adaptive quadrature
    two_over_sqrt_pi = 2 / mpmath.sqrt(mpmath.pi)
    for x in np.linspace(-6.0, 6.0, 61):
        ref = two_over_sqrt_pi * mpmath.quad(lambda t: mpmath.exp(-t * t), [float(x), mpmath.inf])
        assert abs(erfc(x) - float(ref)) <= 1e-12 * float(ref)


def test_strictly_decreasing():
    xs = np.linspace(-8.0, 8.0, 20001)
    vals = np.array([erfc(x) for x in xs])
    # below about -5 the grid step moves erfc by less than one ulp of 2.0
    moving = xs > -5.0
    assert np.all(np.diff(vals[moving]) < 0)
    assert np.all(np.diff(vals) <= 0)


def test_range():
    for x in np.linspace(-5.5, 10, 300):
        assert 0.0 < erfc(x) < 2.0


@given(st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_reflection_identity(x):
    assert abs(erfc(x) + erfc(-x) - 2.0) <= 1e-13


@given(st.floats(min_value=-3, max_value=3, allow_nan=False))
def test_erf_is_odd_and_complements(x):
    assert erf(-x) == -erf(x)
    assert abs(erf(x) + erfc(x) - 1.0) <= 2e-16 * 4


def test_log_erfc_neg_small_argument():
    # log(1 + erf(t)) ~ 2t/sqrt(pi) with full relative precision
    t = 1e-10
    assert log_erfc_neg(t) == pytest.approx(2 * t / math.sqrt(math.pi), rel=1e-9)
    with pytest.raises(DomainError):
        log_erfc_neg(-1.0)
