import math

import pytest

from nonpisot.torus import HALF_LOG_LAM, frobenius_floor, torus_mean_log_norm, torus_mean_midpoint, torus_mean_refinement


@pytest.mark.parametrize("n, floor", [(1, 2.0), (2, 1.0)])
def test_floor_small_n(n, floor):
    assert frobenius_floor(n, 60) == pytest.approx(floor, abs=1e-7)


def test_floor_n4_positive():
    assert 0 < frobenius_floor(4, 100) < 1


def test_torus_mean_n4():
    v = torus_mean_log_norm(4, tol=1e-4)
    assert 0.384 <= v <= 0.386
    # independent rule: midpoint sums on the periodic integrand
    assert v == pytest.approx(torus_mean_midpoint(4, 400), abs=1e-4)
    assert HALF_LOG_LAM == pytest.approx(0.41695, abs=2e-4)


def test_torus_mean_n1_bounds():
    v = torus_mean_log_norm(1, tol=1e-6)
    assert 0 < v <= 0.5 * math.log(11)
    assert v == pytest.approx(torus_mean_midpoint(1, 200), abs=1e-8)


def test_refinement_history():
    r = torus_mean_refinement(2, 6, 1e-6)
    assert r.converged and len(r.history) >= 2
    assert r.history[-1][0] == 2 * r.history[-2][0]
