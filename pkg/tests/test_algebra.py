import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from nonpisot.algebra import (LAM, QLambda, ZLambda, exact_sign, exact_sign_array, gcd_facts_check,
                              lambda_power_coeffs, pf_data, zl_mul)

ints = st.integers(-10**6, 10**6)
zl = st.builds(ZLambda, ints, ints)
big = st.integers(-2**200, 2**200)
rats = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
ql = st.builds(QLambda, rats, rats)


@pytest.mark.parametrize("x, y, expected", [
    (ZLambda(0, 1), ZLambda(0, 1), ZLambda(3, 1)),
    (ZLambda(1, 0), ZLambda(5, -7), ZLambda(5, -7)),
    (ZLambda(3, 1), ZLambda(0, 1), ZLambda(3, 4)),
])
def test_mul_examples(x, y, expected):
    assert zl_mul(x, y) == expected


def test_cube_matches_power_coeffs():
    a, b = lambda_power_coeffs(3)
    assert ZLambda(0, 1) ** 3 == ZLambda(b, a) == ZLambda(3, 4)


@pytest.mark.parametrize("n, expected", [(0, (0, 1)), (1, (1, 0)), (2, (1, 3)), (3, (4, 3)),
                                         (-1, (Fraction(1, 3), Fraction(-1, 3)))])
def test_lambda_power_coeffs(n, expected):
    assert lambda_power_coeffs(n) == expected


def test_power_coeffs_agree_with_products():
    lam = ZLambda(0, 1)
    for m in range(31):
        for n in range(0, 31, 5):
            a, b = lambda_power_coeffs(m + n)
            assert lam ** m * lam ** n == ZLambda(b, a)


@given(zl, zl, zl)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == ZLambda()


@given(st.builds(ZLambda, big, big), st.builds(ZLambda, big, big))
def test_bignum_components(x, y):
    p = x * y
    assert p.norm() == x.norm() * y.norm()


@given(st.builds(ZLambda, st.integers(-2**29, 2**29), st.integers(-2**29, 2**29)),
       st.builds(ZLambda, st.integers(-2**29, 2**29), st.integers(-2**29, 2**29)))
def test_float_embedding_multiplicative(x, y):
    fx, fy = float(x), float(y)
    # relative error measured against the size of the terms, not the (possibly cancelled) result
    scale = (abs(x.a) + abs(x.b) * LAM) * (abs(y.a) + abs(y.b) * LAM)
    assert abs(float(x * y) - fx * fy) <= 1e-12 * max(scale, 1.0)


@given(zl, zl)
def test_order_is_exact_and_matches_floats(x, y):
    d = float(x) - float(y)
    assume(abs(d) > 1e-6)
    assert (x < y) == (d < 0)


def test_order_resolves_tiny_differences():
    # lam^60 ~ 5e21: neighbours differ by 1, far below float resolution
    a, b = lambda_power_coeffs(60)
    x = ZLambda(b, a)
    assert float(ZLambda(b + 1, a)) == float(x)
    assert ZLambda(b + 1, a) > x > ZLambda(b - 1, a)
    # conjugate powers are tiny: (1-lam)^-n style elements have sign alternating exactly
    c = ZLambda(1, -1) ** 41  # (1 - lam)^41 is negative and huge
    assert c.sign() == -1 and (c * c).sign() == 1


@given(ql)
def test_qlambda_inverse(x):
    assume(x)
    assert x * x.inverse() == QLambda(1)


def test_inverse_of_lambda():
    assert QLambda.lam_power(-1) == QLambda(Fraction(-1, 3), Fraction(1, 3))
    assert QLambda(0, 1).inverse() * ZLambda(0, 1) == 1


@given(ql, ql)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(st.integers(-2**40, 2**40), st.integers(-2**40, 2**40))
def test_sign_array_matches_scalar(a, b):
    assume(abs(a) < 2**29 and abs(b) < 2**29)
    assert exact_sign_array(np.array([a]), np.array([b]))[0] == exact_sign(a, b)


def test_json_roundtrip_large():
    z = ZLambda(2**70 + 1, -5)
    d = z.to_json()
    assert d == {"a": str(2**70 + 1), "b": -5}
    assert ZLambda.from_json(json.loads(json.dumps(d))) == z


def test_pf_data():
    pf = pf_data()
    assert pf.lam == pytest.approx(2.302776, abs=1e-6)
    assert pf.right_pf[0] == pytest.approx(0.434, abs=1e-3)
    assert pf.right_pf[1] == pytest.approx(0.566, abs=1e-3)
    assert pf.density == pytest.approx(0.638675, abs=1e-6)
    assert sum(pf.right_pf_exact) == QLambda(1)
    M = pf.subst_matrix
    nu0, nu1 = pf.right_pf_exact
    lam = QLambda(0, 1)
    assert (int(M[0, 0]) * nu0 + int(M[0, 1]) * nu1, int(M[1, 0]) * nu0 + int(M[1, 1]) * nu1) == (lam * nu0, lam * nu1)
    v = np.array(pf.right_pf)
    assert np.allclose(M @ v, pf.lam * v, atol=1e-12)
    assert np.allclose(np.array(pf.left_pf) @ M, pf.lam * np.array(pf.left_pf), atol=1e-12)
    assert sorted(np.linalg.eigvals(M)) == pytest.approx(sorted([pf.lam, pf.lam_conj]))


@pytest.mark.parametrize("n_max", [1, 2, 40, 200])
def test_gcd_facts(n_max):
    rep = gcd_facts_check(n_max)
    assert rep.ok, rep.message


def test_gcd_convention_at_one():
    a1, b1 = lambda_power_coeffs(1)
    a2, b2 = lambda_power_coeffs(2)
    assert (b1, b2) == (0, 3) and math.gcd(b1, b2) == 3
