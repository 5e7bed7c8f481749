from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonpisot.algebra import LAM, LAM_DEC
from nonpisot.fourier import eval_p
from nonpisot.orbit import frac_orbit, p_along_orbit
from decimal import Decimal, localcontext


@given(st.floats(0, 10, allow_nan=False), st.integers(-5, 3))
def test_short_orbit_matches_floats(k, start):
    t = frac_orbit(k, 6, start)
    ref = np.array([(k * LAM ** (start + m)) % 1.0 for m in range(7)])
    d = np.abs(t - ref)
    assert np.all(np.minimum(d, 1 - d) < 1e-9)


def _decimal_frac(k, m, prec):
    with localcontext() as ctx:
        ctx.prec = prec
        lam = (1 + Decimal(13).sqrt()) / 2
        x = Decimal(Fraction(k).numerator) / Decimal(Fraction(k).denominator) * lam**m
        return float(x - int(x))


@pytest.mark.parametrize("k", [0.37, 0.123456789, 2.5])
def test_long_orbit_against_high_precision(k):
    t = frac_orbit(k, 400)
    for m in (100, 250, 400):
        assert abs(t[m] - _decimal_frac(k, m, 250)) < 1e-12


def test_exact_rational_input():
    t = frac_orbit(Fraction(1, 3), 50)
    assert t[0] == pytest.approx(1 / 3, abs=1e-15)


def test_p_along_orbit_small():
    k = 0.21
    assert np.allclose(p_along_orbit(k, 5), eval_p(k * LAM ** np.arange(5)), atol=1e-10)
