import numpy as np
import pytest

from nonpisot.algebra import LAM
from nonpisot.algebras import (W_PF, blowup_iteration, ida_dimension, kron_algebra_real_dimension,
                               positivity_threshold, scaled_blowup, _au_pair)
from nonpisot.fourier import eval_B, eval_p


@pytest.mark.parametrize("length, dim", [(1, 3), (2, 4), (3, 4)])
def test_ida_dimension(length, dim):
    assert ida_dimension(length) == dim


def test_ida_without_identity():
    assert ida_dimension(1, include_identity=False) == 2


def test_ida_from_two_fourier_matrices():
    k1, k2 = 0.1, 0.27
    assert abs(eval_p(k1) - eval_p(k2)) > 0.1
    assert ida_dimension(2, generators=[eval_B(k1), eval_B(k2)]) == 4


def test_kron_dimension():
    assert kron_algebra_real_dimension([0.05, 0.11, 0.17]) == 16
    # a single real point generates much less
    assert kron_algebra_real_dimension([0.0]) < 16


def test_threshold():
    k = positivity_threshold()
    assert k == pytest.approx(0.03832, abs=1e-4)
    for kk in (0.001, 0.01, 0.03):
        assert _au_pair(kk).min() > 0
    assert _au_pair(0.0).min() > 0
    assert _au_pair(k).min() == pytest.approx(0.0, abs=1e-10)


def test_blowup_eigenvector_at_zero():
    tr = blowup_iteration(0.0, W_PF, 10)
    assert np.allclose(np.diff(tr.log_norms), 4 * np.log(LAM), atol=1e-12)
    assert tr.angle_to_pf < 1e-12


@pytest.mark.parametrize("w0", [(1, 0, 0, 0), (0, 0, 0, 1), (0.2, 0, 3, 0)])
def test_blowup_converges(w0):
    tr = blowup_iteration(0.02, w0, 40)
    assert tr.slope == pytest.approx(4 * np.log(LAM), rel=0.02)
    assert tr.angle_to_pf < 1e-6
    assert tr.min_entry > 0


def test_scaled_blowup_constant():
    a = scaled_blowup(0.02, (1, 0, 0, 0), 60)
    b = scaled_blowup(0.02, (1, 0, 0, 0), 90)
    ratio = a / W_PF
    assert np.ptp(ratio) < 1e-8 * ratio.mean()
    assert np.allclose(a, b, rtol=1e-8)
