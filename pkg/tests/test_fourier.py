import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonpisot.algebra import LAM, NU
from nonpisot.fourier import (D0, DL, M, P_TRIG, U, U_INV, c_of, conjugation_commutator_residual, eval_A, eval_AU,
                              eval_AU_real, eval_B, eval_B_lift, eval_p, lift_product, projector_residuals, s_of)

ks = st.floats(-50, 50, allow_nan=False)


@pytest.mark.parametrize("k, expected", [(0.0, 3.0), (1 / 3, 0.0), (1.0, 3 * np.exp(2j * np.pi * LAM))])
def test_p_values(k, expected):
    assert eval_p(k) == pytest.approx(expected, abs=1e-12)


def test_p_bounded_and_factored(rng):
    k = rng.uniform(-100, 100, 10_000)
    p = eval_p(k)
    assert np.abs(p).max() <= 3 + 1e-12
    assert np.allclose(p, P_TRIG(k), atol=1e-9)


def test_digit_matrices():
    assert np.array_equal(D0 @ DL, np.array([[1, 0], [0, 0]]))
    assert np.array_equal(DL @ D0, np.array([[0, 0], [1, 1]]))
    assert np.array_equal(D0 + 3 * DL, M)


def test_B_and_A_at_zero():
    assert np.array_equal(eval_B(0.0).real, M)
    A0 = eval_A(0.0)
    assert np.allclose(A0, np.kron(M, M))
    w = np.kron(NU, NU)
    assert np.allclose(A0 @ w, LAM**2 * w, atol=1e-12)
    # pure point renormalisation at 0, written with I_ij(0) = nu_i nu_j as a vector
    assert w.sum() == pytest.approx(1.0)


def test_det_B(rng):
    k = rng.uniform(-10, 10, 10_000)
    assert np.abs(np.linalg.det(eval_B(k)) + eval_p(k)).max() < 1e-12


@given(ks)
def test_lift_consistency(k):
    assert np.allclose(eval_B_lift((LAM * k) % 1.0, k % 1.0), eval_B(k), atol=1e-9)


def test_lifted_product_matches_orbit(rng):
    for k in rng.uniform(0, 1, 20):
        direct = np.eye(2, dtype=complex)
        for m in range(5):
            direct = direct @ eval_B(k * LAM**m)
        assert np.allclose(lift_product(LAM * k, k, 5), direct, atol=1e-9)


def test_AU_real_and_closed_form(rng):
    k = rng.uniform(-3, 3, 1000)
    AU = eval_AU(k)
    assert np.abs(AU.imag).max() < 1e-12
    assert np.allclose(AU.real, eval_AU_real(k), atol=1e-12)
    assert np.abs(c_of(k) ** 2 + s_of(k) ** 2 - (1 + 2 * np.cos(2 * np.pi * k)) ** 2).max() < 1e-12
    assert np.allclose(U @ eval_A(0.0), eval_A(0.0) @ U)
    assert np.allclose(U @ U_INV, np.eye(4))


def test_conjugation_involution(rng):
    k = rng.uniform(-3, 3, 1000)
    assert conjugation_commutator_residual(k) < 1e-12
    r = projector_residuals(k[:100])
    assert max(r.values()) < 1e-12


def test_frobenius_bounds():
    k = np.linspace(0, 1, 20001)
    f = np.sum(np.abs(eval_B(k)) ** 2, axis=(-2, -1))
    assert f.min() >= 2 - 1e-12 and f.max() <= 11 + 1e-12
