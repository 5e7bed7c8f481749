import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonpisot.acceptance import reference_table
from nonpisot.algebra import DENSITY, LAM, QLambda, ZLambda
from nonpisot.correlation import (BASE_RADIUS, COMPONENTS, assemble_base_system, base_system_solve,
                                  count_correlations, difference_set, eta, eta_exact, renormalisation_residual,
                                  renormalisation_terms)
from nonpisot.inflation import geometric_patch

L = QLambda.lam_power
Z0 = ZLambda(0, 0)
LAMZ = ZLambda(0, 1)


def test_base_matches_reference(base_table):
    assert base_table.entries == reference_table()


@pytest.mark.parametrize("z, comp, value", [
    (Z0, 0, L(-1)),
    (Z0, 3, 3 * L(-2)),
    (-LAMZ, 1, QLambda()),
    (-LAMZ, 2, L(-2)),
    (ZLambda(-1, -1), 3, 3 * L(-4)),
])
def test_base_entries(base_table, z, comp, value):
    assert base_table.entries[z][comp] == value


def test_system_shape():
    rows, zs = assemble_base_system()
    assert len(zs) == 11 and len(rows) == 44


def test_terms_match_handwritten_identities():
    """Generic displacement bookkeeping vs the four identities written out by hand."""
    t = (LAMZ, ZLambda(1, 1), ZLambda(2, 1))
    inv = QLambda.lam_power(-1)
    for z in difference_set(10.0):
        def args(shifts, comps):
            out = []
            for s in shifts:
                w = (z + s) * inv
                if w.is_integral():
                    out += [(m, n, w.to_z()) for m, n in comps]
            return sorted(out, key=repr)
        everything = [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert sorted(renormalisation_terms(0, 0, z), key=repr) == args([Z0], everything)
        assert sorted(renormalisation_terms(0, 1, z), key=repr) == args([-s for s in t], [(0, 0), (1, 0)])
        assert sorted(renormalisation_terms(1, 0, z), key=repr) == args(list(t), [(0, 0), (0, 1)])
        shifts11 = [Z0] * 3 + [ZLambda(1, 0)] * 2 + [ZLambda(-1, 0)] * 2 + [ZLambda(2, 0), ZLambda(-2, 0)]
        assert sorted(renormalisation_terms(1, 1, z), key=repr) == args(shifts11, [(0, 0)])


def test_symmetry_constraint_changes_nothing(base_table):
    assert base_system_solve(symmetric=True).entries == base_table.entries


@pytest.mark.parametrize("fixture", ["base_table", "table10"])
def test_table_invariants(request, fixture):
    t = request.getfixturevalue(fixture)
    for z, vals in t.entries.items():
        for k, (i, j) in enumerate(COMPONENTS):
            assert vals[k] == t.entries[-z][2 * j + i]
            assert vals[k].sign() >= 0
    assert t.entries[Z0][0] + t.entries[Z0][3] == 1


def test_extension_example(base_table, table10):
    z = 2 * LAMZ
    two = ZLambda(2, 0)
    expect = sum(base_table.entries[two], QLambda()) * L(-1)
    assert table10.entries[z][0] == expect


def test_extension_residual_zero(table10):
    assert renormalisation_residual(table10) == []


def test_absent_distances(table10):
    assert ZLambda(4, -1) not in table10.entries or float(ZLambda(4, -1)) > 10
    assert set(table10.entries) == set(difference_set(10.0))
    # enumeration does not depend on which (large enough) patch it came from
    assert difference_set(10.0) == difference_set(10.0, level=5)


def test_counting_level7(patch7, base_table):
    emp = count_correlations(patch7, BASE_RADIUS)
    assert emp.get(Z0)[0] == pytest.approx(0.4343, abs=2e-3)
    assert emp.get(LAMZ)[0] == pytest.approx(float(3 * L(-3)), abs=3e-3)
    assert set(emp.values) == {(z.a, z.b) for z in base_table.entries}
    # keys are integer pairs, so a distance like 1/2 can never be recorded
    assert all(isinstance(a, int) and isinstance(b, int) for a, b in emp.values)
    assert not emp.get((0.5, 0)).any()


def test_counting_warns_on_small_patch():
    with pytest.warns(UserWarning):
        count_correlations(geometric_patch(1), 10.0)


def test_counting_exact_vs_float_radius(patch7):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        a = count_correlations(patch7, BASE_RADIUS)
        b = count_correlations(patch7, float(BASE_RADIUS) + 1e-9, window=a.window)
    assert set(a.values) == set(b.values)


@pytest.mark.parametrize("u, z, expected", [
    ((1 - LAM, 1), Z0, (6 * LAM - 3) / 13),
    ((0, 0), LAMZ, 0.0),
    ((1, 1), Z0, (6 + LAM) / 13),
    ((1, 0), LAMZ, DENSITY * 3 * LAM**-3),
])
def test_eta(base_table, u, z, expected):
    assert eta(base_table, u, z) == pytest.approx(expected, abs=1e-12)


def test_eta_exact_balanced(base_table):
    u = (QLambda(1, -1), 1)
    assert eta_exact(base_table, u, Z0) == QLambda(-3, 6) * QLambda(1, 0) / 13


def test_eta_out_of_radius(base_table):
    with pytest.raises(ValueError):
        eta(base_table, (1, 1), ZLambda(3, 1))


weight = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False, allow_subnormal=False)


@settings(max_examples=25)
@given(weight, weight, st.lists(st.tuples(st.integers(-2, 2), st.integers(-1, 1)), min_size=2, max_size=8, unique=True))
def test_positive_definite(table10, u0, u1, pts):
    """[eta(y_b - y_a)] is a positive semi-definite matrix for any finite set of points y."""
    ys = [ZLambda(a, b) for a, b in pts]
    u = (u0, u1)
    H = np.array([[eta(table10, u, yb - ya) if (yb - ya) in table10.entries else 0.0 for yb in ys] for ya in ys])
    assert np.allclose(H, H.conj().T, atol=1e-9)
    assert np.linalg.eigvalsh(H).min() >= -1e-9 * max(1.0, abs(u0) ** 2 + abs(u1) ** 2)


def test_csv_export(base_table):
    text = base_table.to_csv()
    lines = text.strip().split("\n")
    assert lines[0].startswith("z_a,z_b,z_float,nu00_p,nu00_q,nu01_p")
    assert len(lines) == 12
    row0 = dict(zip(lines[0].split(","), lines[6].split(",")))
    assert (row0["z_a"], row0["z_b"]) == ("0", "0")
    assert QLambda(Fraction(row0["nu00_p"]), Fraction(row0["nu00_q"])) == L(-1)
