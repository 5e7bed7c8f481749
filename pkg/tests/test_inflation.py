import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonpisot.algebra import LAM, ZLambda
from nonpisot.inflation import (Word, fixed_word, geometric_patch, letter_frequencies, point_set, substitute,
                                supertile_decompose, word_lengths)


@pytest.mark.parametrize("seed, power, expected", [
    ("0", 1, "0111"),
    ("1", 1, "0"),
    ("0|0", 2, "0111000|0111000"),
    ("1|0", 1, "0|0111"),
])
def test_substitute(seed, power, expected):
    assert str(substitute(Word.parse(seed), power)) == expected


def test_level1_prefix():
    p = geometric_patch(1)
    assert len(p) == 14
    pts = [p.point(i) for i in range(len(p))]
    i0 = pts.index(ZLambda(0, 0))
    assert i0 == 7
    expect = [ZLambda(-1, -3), ZLambda(0, -3), ZLambda(0, -2), ZLambda(0, -1), ZLambda(0, 0), ZLambda(0, 1),
              ZLambda(1, 1), ZLambda(2, 1), ZLambda(3, 1), ZLambda(3, 2)]
    assert pts[3:13] == expect


def test_word_length_recursion():
    L = word_lengths(12)
    assert L[2] == 7
    for n in range(2, 12):
        # |rho^n(0)| = |rho^(n-1)(0)| + 3 |rho^(n-2)(0)|
        assert L[n] == L[n - 1] + 3 * L[n - 2]
    for n in range(1, 6):
        assert len(fixed_word(n)) == 2 * L[2 * n]


@pytest.mark.parametrize("level", [1, 3, 5])
def test_gap_structure(level):
    p = geometric_patch(level)
    da = np.diff(p.pos_a)
    db = np.diff(p.pos_b)
    t = p.types[:-1]
    assert np.all((da == 0) & (db == 1) | (t == 1))
    assert np.all((da == 1) & (db == 0) | (t == 0))
    assert p.right_end == -p.left_end
    assert np.all(np.diff(p.positions) > 0)
    assert np.abs(p.pos_b).max() <= p.length


def test_density_level6():
    assert geometric_patch(6).density() == pytest.approx(0.6387, abs=1e-3)


def test_frequencies():
    assert letter_frequencies(Word.parse("0111")) == (0.25, 0.75)
    assert letter_frequencies(Word.parse("0")) == (1.0, 0.0)
    f0, f1 = letter_frequencies(fixed_word(8))
    assert f0 == pytest.approx(0.434, abs=1e-3) and f1 == pytest.approx(0.566, abs=1e-3)


def test_decompose_example():
    d = supertile_decompose(Word.parse("0111000"))
    assert d.tiles == [(0, 0), (1, 4), (1, 5)]
    assert d.tail == 1 and d.head == 0


@pytest.mark.parametrize("bad", ["011110", "0110", "00110"])
def test_decompose_rejects_illegal(bad):
    with pytest.raises(ValueError):
        supertile_decompose(Word.parse(bad))


_FIX = fixed_word(5).letters


@given(st.integers(0, _FIX.size - 2), st.integers(1, 10_000))
def test_recognisability_roundtrip(start, length):
    w = Word(_FIX[start:start + length])
    d = supertile_decompose(w)
    pre = d.preimage()
    if len(pre):
        img = substitute(pre, 1).letters
        assert np.array_equal(img, w.letters[d.head:len(w) - d.tail])
    assert d.head <= 3 and d.tail <= 3


@pytest.mark.parametrize("level", [2, 3, 4])
def test_supertile_starts(level):
    """Recognised supertile starts are lam times the points of the preimage word."""
    w = fixed_word(level)
    p = point_set(w)
    d = supertile_decompose(w)
    starts = {p.point(i) for _, i in d.tiles}
    pre = substitute(Word(np.array([0, 0], np.uint8), 1), 2 * level - 1)
    q = point_set(pre)
    lam = ZLambda(0, 1)
    scaled = {lam * q.point(i) for i in range(len(q))}
    assert starts <= scaled
    # everything but the final (unrecognisable) tile is found
    assert len(scaled - starts) == 1
    # and lam^2 times the previous level lies inside the current one
    prev = geometric_patch(level - 1)
    pts = {p.point(i) for i in range(len(p))}
    assert {lam * lam * prev.point(i) for i in range(len(prev))} <= pts


def test_runs_and_csv():
    w = Word.parse("0111000")
    assert w.runs() == [(0, 1), (1, 3), (0, 3)]
    p = geometric_patch(1, (1 - LAM, 1))
    text = p.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "pos_a,pos_b,pos_float,tile_type,weight_re,weight_im"
    assert len(lines) == 15
    row = lines[8].split(",")  # the point at 0, a type-0 tile
    assert row[:2] == ["0", "0"] and row[3] == "0" and float(row[4]) == pytest.approx(1 - LAM)
